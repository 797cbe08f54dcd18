//! Globally adaptive 7/15-point Gauss–Kronrod quadrature over a set of
//! initial panels.
//!
//! The worst panel (largest error estimate) is bisected until the summed
//! error falls below `max(epsabs, epsrel·|I|)` or the panel cap is hit.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Kronrod abscissae on [-1, 1] (non-negative half); odd indices are the
// 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

/// Refinement did not reach the requested tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureFailure {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    PanelCap,
    /// The worst panel is too narrow to bisect in floating point.
    Roundoff,
    NonFinite,
}

impl std::fmt::Display for QuadratureFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let why = match self.reason {
            FailureReason::PanelCap => "panel cap reached",
            FailureReason::Roundoff => "roundoff limit",
            FailureReason::NonFinite => "non-finite integrand",
        };
        write!(
            f,
            "{why} after {} panels (estimate {:e}, error {:e})",
            self.panels, self.value, self.error
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub epsabs: f64,
    pub epsrel: f64,
    pub max_panels: usize,
    /// Upper bound on the width of every panel, applied before refinement.
    pub max_panel_width: Option<f64>,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            epsabs: 1e-12,
            epsrel: 1e-12,
            max_panels: 1_000_000,
            max_panel_width: None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One Gauss–Kronrod 7/15 panel, with the QUADPACK error heuristic.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

impl Quadrature {
    pub fn with_tolerances(epsabs: f64, epsrel: f64) -> Self {
        Quadrature {
            epsabs,
            epsrel,
            ..Default::default()
        }
    }

    pub fn max_panel_width(mut self, width: f64) -> Self {
        self.max_panel_width = Some(width);
        self
    }

    /// Integrates `f` over `[breakpoints[0], breakpoints[last]]`, starting
    /// from the panels delimited by the (sorted) breakpoints.
    pub fn integrate<F: Fn(f64) -> f64>(
        &self,
        f: F,
        breakpoints: &[f64],
    ) -> Result<Estimate, QuadratureFailure> {
        assert!(breakpoints.len() >= 2, "need at least one panel");
        let mut edges: Vec<(f64, f64)> = Vec::with_capacity(breakpoints.len());
        for w in breakpoints.windows(2) {
            let (a, b) = (w[0], w[1]);
            debug_assert!(a <= b, "breakpoints must be sorted");
            if a == b {
                continue;
            }
            match self.max_panel_width {
                Some(cap) if b - a > cap => {
                    let pieces = ((b - a) / cap).ceil();
                    if pieces > self.max_panels as f64 {
                        return Err(QuadratureFailure {
                            value: f64::NAN,
                            error: f64::INFINITY,
                            panels: pieces as usize,
                            reason: FailureReason::PanelCap,
                        });
                    }
                    let n = pieces as usize;
                    let step = (b - a) / n as f64;
                    for i in 0..n {
                        let lo = a + step * i as f64;
                        let hi = if i + 1 == n { b } else { a + step * (i + 1) as f64 };
                        edges.push((lo, hi));
                    }
                }
                _ => edges.push((a, b)),
            }
        }
        if edges.is_empty() {
            return Ok(Estimate {
                value: 0.0,
                error: 0.0,
                panels: 0,
            });
        }
        if edges.len() > self.max_panels {
            return Err(QuadratureFailure {
                value: f64::NAN,
                error: f64::INFINITY,
                panels: edges.len(),
                reason: FailureReason::PanelCap,
            });
        }

        let mut heap = BinaryHeap::with_capacity(edges.len() * 2);
        let mut total = 0.0;
        let mut total_err = 0.0;
        for (a, b) in edges {
            let (value, error) = gk15(&f, a, b);
            total += value;
            total_err += error;
            heap.push(Panel { a, b, value, error });
        }

        loop {
            if !total.is_finite() || !total_err.is_finite() {
                return Err(QuadratureFailure {
                    value: total,
                    error: total_err,
                    panels: heap.len(),
                    reason: FailureReason::NonFinite,
                });
            }
            if total_err <= self.epsabs.max(self.epsrel * total.abs()) {
                break;
            }
            if heap.len() >= self.max_panels {
                return Err(QuadratureFailure {
                    value: total,
                    error: total_err,
                    panels: heap.len(),
                    reason: FailureReason::PanelCap,
                });
            }
            let worst = heap.pop().expect("heap is never empty here");
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b) {
                heap.push(worst);
                return Err(QuadratureFailure {
                    value: total,
                    error: total_err,
                    panels: heap.len(),
                    reason: FailureReason::Roundoff,
                });
            }
            let (v1, e1) = gk15(&f, worst.a, mid);
            let (v2, e2) = gk15(&f, mid, worst.b);
            total += v1 + v2 - worst.value;
            total_err += e1 + e2 - worst.error;
            heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
            heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        }

        // Re-sum in left-to-right order so the result does not carry the
        // drift of the incremental updates.
        let mut panels = heap.into_vec();
        panels.sort_by(|p, q| p.a.total_cmp(&q.a));
        let value = panels.iter().map(|p| p.value).sum();
        let error = panels.iter().map(|p| p.error).sum();
        Ok(Estimate {
            value,
            error,
            panels: panels.len(),
        })
    }
}
