use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

impl FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(Error::Config(format!("unknown spacing `{other}` (expected linear|log)"))),
        }
    }
}

impl fmt::Display for Spacing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        })
    }
}

/// `n` points from `min` to `max` inclusive. Endpoints are reproduced
/// exactly; `n == 1` yields `[min]` and `n == 0` an empty grid.
pub fn build(min: f64, max: f64, n: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if !min.is_finite() || !max.is_finite() {
        return Err(Error::Config("grid bounds must be finite".into()));
    }
    if min > max {
        return Err(Error::Config(format!("grid min {min} exceeds max {max}")));
    }
    if spacing == Spacing::Log && min <= 0.0 {
        return Err(Error::Config(format!("log grid needs min > 0, got {min}")));
    }
    let points = match n {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == 0 {
                        return min;
                    }
                    if i == n - 1 {
                        return max;
                    }
                    let frac = i as f64 / last;
                    match spacing {
                        Spacing::Linear => min + (max - min) * frac,
                        Spacing::Log => (min.ln() + (max.ln() - min.ln()) * frac).exp(),
                    }
                })
                .collect()
        }
    };
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_count() {
        let g = build(0.0, 7.0, 2, Spacing::Linear).unwrap();
        assert_eq!(g, vec![0.0, 7.0]);
        let g = build(0.0, 1.0, 101, Spacing::Linear).unwrap();
        assert_eq!(g.len(), 101);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let g = build(1e-8, 10.0, 2, Spacing::Log).unwrap();
        assert_eq!(g, vec![1e-8, 10.0]);
        let g = build(1e-3, 1e3, 7, Spacing::Log).unwrap();
        assert!((g[3] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_grids() {
        assert_eq!(build(3.0, 5.0, 1, Spacing::Linear).unwrap(), vec![3.0]);
        assert!(build(3.0, 5.0, 0, Spacing::Log).unwrap().is_empty());
    }

    #[test]
    fn invalid_grids() {
        assert!(build(0.0, 1.0, 5, Spacing::Log).is_err());
        assert!(build(2.0, 1.0, 5, Spacing::Linear).is_err());
        assert!(build(f64::NAN, 1.0, 5, Spacing::Linear).is_err());
        assert!("cubic".parse::<Spacing>().is_err());
    }
}
