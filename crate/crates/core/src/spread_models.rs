//! Closed-form energy-spread models ΔE(γ) and the two form-factor cutoffs.
//!
//! All three models share the shape ΔE = K·√γ; they differ only in the
//! coefficient K:
//!
//! | model                 | K²                |
//! |-----------------------|-------------------|
//! | symmetric resonance   | m − E_th          |
//! | step cutoff at M      | M² / (4π Δm)      |
//! | localization (v, R)   | ℏ v / (2R)        |

use std::f64::consts::PI;
use std::fmt;

use crate::channels::DecayChannel;
use crate::error::{require_non_negative, Error, Result};
use crate::units::{ConstantsTable, Dimension, PhysQuantity};

/// Smooth form factor M²/(M+ω)².
pub fn cutoff_smooth(omega: PhysQuantity, m: PhysQuantity) -> Result<f64> {
    let (omega, m) = cutoff_args(omega, m)?;
    Ok((m / (m + omega)).powi(2))
}

/// Sharp form factor: 1 below M, 0 above, 1/2 at ω = M.
pub fn cutoff_step(omega: PhysQuantity, m: PhysQuantity) -> Result<f64> {
    let (omega, m) = cutoff_args(omega, m)?;
    Ok(if omega < m {
        1.0
    } else if omega > m {
        0.0
    } else {
        0.5
    })
}

fn cutoff_args(omega: PhysQuantity, m: PhysQuantity) -> Result<(f64, f64)> {
    let omega = require_non_negative("omega", omega.expect(Dimension::ENERGY)?)?;
    let m = m.expect_positive(Dimension::ENERGY, "cutoff scale M")?;
    Ok((omega, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    SymmetricResonance,
    StepCutoffGut,
    Localization,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::SymmetricResonance => "symmetric_resonance",
            ModelKind::StepCutoffGut => "step_cutoff_gut",
            ModelKind::Localization => "localization",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpreadModel {
    SymmetricResonance {
        channel: DecayChannel,
    },
    StepCutoffGut {
        cutoff: PhysQuantity,
        channel: DecayChannel,
    },
    Localization {
        speed: PhysQuantity,
        radius: PhysQuantity,
    },
}

impl SpreadModel {
    pub fn symmetric_resonance(channel: DecayChannel) -> Self {
        SpreadModel::SymmetricResonance { channel }
    }

    pub fn step_cutoff_gut(cutoff: PhysQuantity, channel: DecayChannel) -> Result<Self> {
        cutoff.expect_positive(Dimension::ENERGY, "cutoff scale M")?;
        Ok(SpreadModel::StepCutoffGut { cutoff, channel })
    }

    /// `speed` must lie in (0, c]; `radius` must be positive.
    pub fn localization(speed: PhysQuantity, radius: PhysQuantity) -> Result<Self> {
        let v = speed.expect_positive(Dimension::SPEED, "relative speed v")?;
        let c = ConstantsTable::reference().c().magnitude();
        // one ulp of slack so that "1 c" given in other units still passes
        if v > c * (1.0 + f64::EPSILON) {
            return Err(Error::domain("relative speed v [cm/s]", "<= c", v));
        }
        radius.expect_positive(Dimension::LENGTH, "localization radius R")?;
        Ok(SpreadModel::Localization { speed, radius })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            SpreadModel::SymmetricResonance { .. } => ModelKind::SymmetricResonance,
            SpreadModel::StepCutoffGut { .. } => ModelKind::StepCutoffGut,
            SpreadModel::Localization { .. } => ModelKind::Localization,
        }
    }

    pub fn channel(&self) -> Option<&DecayChannel> {
        match self {
            SpreadModel::SymmetricResonance { channel } | SpreadModel::StepCutoffGut { channel, .. } => {
                Some(channel)
            }
            SpreadModel::Localization { .. } => None,
        }
    }

    /// K², in MeV, such that ΔE = √(K²·γ).
    fn coefficient_squared(&self) -> f64 {
        match self {
            SpreadModel::SymmetricResonance { channel } => channel.mass_gap().magnitude(),
            SpreadModel::StepCutoffGut { cutoff, channel } => {
                let m = cutoff.magnitude();
                m * m / (4.0 * PI * channel.mass_gap().magnitude())
            }
            SpreadModel::Localization { speed, radius } => {
                half_support_mev(*speed, *radius)
            }
        }
    }

    /// The coefficient K of ΔE = K·√γ, in MeV^(1/2).
    pub fn spread_coefficient(&self) -> PhysQuantity {
        PhysQuantity::canonical(self.coefficient_squared().sqrt(), Dimension::ENERGY_SQRT)
            .expect("finite for validated parameters")
    }

    /// Energy spread for resonance width `gamma`.
    pub fn delta_e(&self, gamma: PhysQuantity) -> Result<PhysQuantity> {
        let gamma = gamma.expect_positive(Dimension::ENERGY, "resonance width")?;
        PhysQuantity::canonical((self.coefficient_squared() * gamma).sqrt(), Dimension::ENERGY)
    }
}

/// ℏv/(2R) in MeV: the half-width of the energy window of a state localized
/// within R whose products separate at speed v.
pub(crate) fn half_support_mev(speed: PhysQuantity, radius: PhysQuantity) -> f64 {
    let hbar = ConstantsTable::reference().hbar_mev_s();
    hbar * speed.magnitude() / (2.0 * radius.magnitude())
}
