//! Truncated Breit–Wigner energy distribution of a localized unstable state,
//! its moments and its survival probability.
//!
//! Internally every integral is taken over the dimensionless offset
//! `u = (E − center)/width`, so the density becomes
//! `N/(2π) · 1/(u² + 1/4)` on `[−A, A]` with `A = half_support/width`,
//! independent of the physical scale.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::grid::{self, Spacing};
use crate::quadrature::{Quadrature, QuadratureFailure};
use crate::spread_models::{half_support_mev, SpreadModel};
use crate::units::{ConstantsTable, Dimension, PhysQuantity};

/// Relative agreement demanded between the quadrature variance and the
/// closed form before [`TruncatedBreitWigner::moments`] reports success.
pub const MOMENT_AGREEMENT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Scale {
    /// MeV and seconds, ℏ from the constants table.
    Physical { hbar: f64 },
    /// ℏ = 1, energies and times in arbitrary reciprocal units.
    Desk,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedBreitWigner {
    center: f64,
    width: f64,
    half_support: f64,
    norm_constant: f64,
    scale: Scale,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    /// Standard deviation from quadrature.
    pub delta_e: f64,
    /// Standard deviation from the closed-form variance.
    pub delta_e_closed_form: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalSample {
    pub t: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurvivalCurve {
    pub samples: Vec<SurvivalSample>,
}

/// Closed-form unit-integral normalization for half-support ratio `A = a/γ`.
pub fn norm_constant(ratio: f64) -> f64 {
    PI / (2.0 * (2.0 * ratio).atan())
}

/// `A − atan(2A)/2`, with a series for small `A` where the difference
/// cancels.
fn variance_bracket(ratio: f64) -> f64 {
    let x = 2.0 * ratio;
    if x < 0.1 {
        // (x − atan x)/2 = Σ_{k≥1} (−1)^{k+1} x^{2k+1}/(2k+1) / 2
        let x2 = x * x;
        let mut term = x * x2;
        let mut sum = 0.0;
        for k in 1..12 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * term / (2 * k + 1) as f64;
            term *= x2;
        }
        0.5 * sum
    } else {
        ratio - 0.5 * x.atan()
    }
}

/// Breakpoints on `[lo, A]` (lo is `0` or `−A`) doubling outward from the
/// core of the Lorentzian, so both the peak and the `1/u²` tail get panels
/// matched to their scale.
fn breakpoints(ratio: f64, symmetric: bool) -> Vec<f64> {
    let mut pos = Vec::new();
    let mut p = 1.0 / 16.0;
    while p < ratio {
        pos.push(p);
        p *= 2.0;
    }
    pos.push(ratio);
    let mut pts = Vec::with_capacity(2 * pos.len() + 1);
    if symmetric {
        pts.extend(pos.iter().rev().map(|x| -x));
    }
    pts.push(0.0);
    pts.extend(pos);
    pts
}

fn numerical(context: String, failure: QuadratureFailure) -> Error {
    Error::Numerical(format!("{context}: {failure}"))
}

impl TruncatedBreitWigner {
    /// Density for a state localized within `radius` whose products separate
    /// at `speed`: support half-width ℏv/(2R).
    pub fn new(
        center: PhysQuantity,
        width: PhysQuantity,
        speed: PhysQuantity,
        radius: PhysQuantity,
    ) -> Result<Self> {
        SpreadModel::localization(speed, radius)?;
        let half = PhysQuantity::energy_mev(half_support_mev(speed, radius))?;
        Self::with_half_support(center, width, half)
    }

    pub fn with_half_support(
        center: PhysQuantity,
        width: PhysQuantity,
        half_support: PhysQuantity,
    ) -> Result<Self> {
        let center = center.expect(Dimension::ENERGY)?;
        let width = width.expect_positive(Dimension::ENERGY, "width")?;
        let half = half_support.expect_positive(Dimension::ENERGY, "half support")?;
        Self::build(
            center,
            width,
            half,
            Scale::Physical {
                hbar: ConstantsTable::reference().hbar_mev_s(),
            },
        )
    }

    /// Dimensionless construction with ℏ = 1 and center 0.
    pub fn desk_scale(width: f64, half_support: f64) -> Result<Self> {
        let width = require_positive("width", width)?;
        let half = require_positive("half support", half_support)?;
        Self::build(0.0, width, half, Scale::Desk)
    }

    fn build(center: f64, width: f64, half_support: f64, scale: Scale) -> Result<Self> {
        let ratio = half_support / width;
        if !ratio.is_finite() || ratio <= 0.0 {
            return Err(Error::domain("half support / width", "finite and > 0", ratio));
        }
        Ok(TruncatedBreitWigner {
            center,
            width,
            half_support,
            norm_constant: norm_constant(ratio),
            scale,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn half_support(&self) -> f64 {
        self.half_support
    }

    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    pub fn is_desk_scale(&self) -> bool {
        self.scale == Scale::Desk
    }

    fn hbar(&self) -> f64 {
        match self.scale {
            Scale::Physical { hbar } => hbar,
            Scale::Desk => 1.0,
        }
    }

    fn ratio(&self) -> f64 {
        self.half_support / self.width
    }

    /// Density per unit `u`.
    fn unit_density(&self, u: f64) -> f64 {
        self.norm_constant / (2.0 * PI) / (u * u + 0.25)
    }

    /// ρ(E), in inverse energy units; zero outside the support.
    pub fn density(&self, energy: f64) -> f64 {
        self.density_at_offset(energy - self.center)
    }

    /// ρ(center + offset). Even in `offset` bit for bit.
    pub fn density_at_offset(&self, offset: f64) -> f64 {
        let x = offset.abs();
        if x > self.half_support {
            return 0.0;
        }
        let g = self.width;
        self.norm_constant * (g / (2.0 * PI)) / (x * x + 0.25 * g * g)
    }

    /// Typed form of [`density`](Self::density) for physical-scale distributions.
    pub fn density_of(&self, energy: PhysQuantity) -> Result<f64> {
        if self.is_desk_scale() {
            return Err(Error::Config("desk-scale density takes a bare number".into()));
        }
        Ok(self.density(energy.expect(Dimension::ENERGY)?))
    }

    /// ∫ρ(E) dE over the support by adaptive quadrature.
    pub fn normalization_integral(&self) -> Result<f64> {
        let ratio = self.ratio();
        Quadrature::default()
            .integrate(|u| self.unit_density(u), &breakpoints(ratio, true))
            .map(|e| e.value)
            .map_err(|f| numerical("normalization integral".into(), f))
    }

    /// Closed-form variance `N·(γ/π)·[a − (γ/2)·atan(2a/γ)]`.
    pub fn variance_closed_form(&self) -> f64 {
        self.norm_constant / PI * variance_bracket(self.ratio()) * self.width * self.width
    }

    /// Mean and standard deviation by quadrature, checked against the closed
    /// form to [`MOMENT_AGREEMENT`].
    pub fn moments(&self) -> Result<Moments> {
        let ratio = self.ratio();
        let pts = breakpoints(ratio, true);
        let mean_u = Quadrature::default()
            .integrate(|u| u * self.unit_density(u), &pts)
            .map_err(|f| numerical("mean".into(), f))?
            .value;
        let var_u = Quadrature::with_tolerances(0.0, 1e-12)
            .integrate(
                |u| {
                    let d = u - mean_u;
                    d * d * self.unit_density(u)
                },
                &pts,
            )
            .map_err(|f| numerical("variance".into(), f))?
            .value;
        let closed = self.variance_closed_form() / (self.width * self.width);
        let disagreement = ((var_u - closed) / closed).abs();
        if !(disagreement <= MOMENT_AGREEMENT) {
            return Err(Error::Numerical(format!(
                "variance quadrature {var_u:e} disagrees with closed form {closed:e} \
                 (relative {disagreement:e})"
            )));
        }
        Ok(Moments {
            mean: self.center + self.width * mean_u,
            delta_e: self.width * var_u.sqrt(),
            delta_e_closed_form: self.width * closed.sqrt(),
        })
    }

    /// Survival amplitude a(t) with the carrier phase at `center` removed.
    ///
    /// Because ρ is even about its center the amplitude is real, and it is
    /// computed as `1 − 2∫ρ sin²(x t/2ℏ) dx` so that short times keep full
    /// relative precision in `1 − a`.
    pub fn survival_amplitude(&self, t: f64) -> Result<f64> {
        require_non_negative("time", t)?;
        let s = self.width * t / self.hbar();
        if s == 0.0 {
            return Ok(1.0);
        }
        let ratio = self.ratio();
        let quad = Quadrature::with_tolerances(0.0, 1e-12).max_panel_width(PI / s);
        let half = quad
            .integrate(
                |u| {
                    let sn = (0.5 * u * s).sin();
                    sn * sn * self.unit_density(u)
                },
                &breakpoints(ratio, false),
            )
            .map_err(|f| numerical(format!("survival integral at t = {t:e}"), f))?
            .value;
        Ok(1.0 - 4.0 * half)
    }

    /// P(t) = |a(t)|², `t` in seconds (physical) or in 1/energy units (desk).
    pub fn survival_probability(&self, t: f64) -> Result<f64> {
        let a = self.survival_amplitude(t)?;
        Ok(a * a)
    }

    /// Typed form: physical distributions take a Time, desk ones a
    /// dimensionless number.
    pub fn survival_at(&self, t: PhysQuantity) -> Result<f64> {
        let expected = if self.is_desk_scale() {
            Dimension::DIMENSIONLESS
        } else {
            Dimension::TIME
        };
        self.survival_probability(t.expect(expected)?)
    }

    /// P(t) on a linear or logarithmic grid; points are evaluated in
    /// parallel and returned in grid order.
    pub fn sample_survival(
        &self,
        t_min: f64,
        t_max: f64,
        n_samples: usize,
        spacing: Spacing,
    ) -> Result<SurvivalCurve> {
        require_non_negative("t_min", t_min)?;
        if !(t_min < t_max) {
            return Err(Error::Config(format!("t_min {t_min} must be below t_max {t_max}")));
        }
        if n_samples < 2 {
            return Err(Error::Config(format!("need at least 2 samples, got {n_samples}")));
        }
        let ts = grid::build(t_min, t_max, n_samples, spacing)?;
        let results: Vec<Result<f64>> = ts.par_iter().map(|&t| self.survival_probability(t)).collect();
        let samples = ts
            .into_iter()
            .zip(results)
            .map(|(t, p)| p.map(|p| SurvivalSample { t, p }))
            .collect::<Result<Vec<_>>>()?;
        Ok(SurvivalCurve { samples })
    }
}
