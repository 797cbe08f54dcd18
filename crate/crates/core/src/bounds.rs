//! Minimum measurement duration from the time-energy relation `T·ΔE ≳ ℏ`,
//! evaluated for complete scenarios and over parameter sweeps.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::DecayChannel;
use crate::error::{require_positive, Error, Result};
use crate::spread_models::{ModelKind, SpreadModel};
use crate::units::{ConstantsTable, Dimension, PhysQuantity, Unit};

pub const DEFAULT_CAMPAIGN_YEARS: f64 = 10.0;

/// ℏ/ΔE: the saturating value of the bound.
pub fn min_measurement_time(delta_e: PhysQuantity) -> Result<PhysQuantity> {
    let de = delta_e.expect_positive(Dimension::ENERGY, "energy spread")?;
    PhysQuantity::canonical(ConstantsTable::reference().hbar_mev_s() / de, Dimension::TIME)
}

/// `c` in `T_min = c·√(τ/s)` seconds: `√ℏ / K` for ΔE = K·√γ.
pub fn tm_coefficient(model: &SpreadModel) -> f64 {
    ConstantsTable::reference().hbar_mev_s().sqrt() / model.spread_coefficient().magnitude()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub channel: DecayChannel,
    pub lifetime: PhysQuantity,
    pub model: SpreadModel,
    pub campaign_limit: PhysQuantity,
    /// Multiplier ≥ 1 applied to the bound; 1 reports it at saturation.
    pub safety_factor: f64,
}

impl Scenario {
    pub fn new(channel: DecayChannel, lifetime: PhysQuantity, model: SpreadModel) -> Result<Self> {
        let s = Scenario {
            channel,
            lifetime,
            model,
            campaign_limit: PhysQuantity::new(DEFAULT_CAMPAIGN_YEARS, Unit::Year)?,
            safety_factor: 1.0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_campaign_limit(mut self, limit: PhysQuantity) -> Result<Self> {
        self.campaign_limit = limit;
        self.validate()?;
        Ok(self)
    }

    pub fn with_safety_factor(mut self, factor: f64) -> Result<Self> {
        self.safety_factor = factor;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.lifetime.expect_positive(Dimension::TIME, "lifetime")?;
        self.campaign_limit.expect_positive(Dimension::TIME, "campaign limit")?;
        if !(self.safety_factor.is_finite() && self.safety_factor >= 1.0) {
            return Err(Error::domain("safety factor", "finite and >= 1", self.safety_factor));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub model: String,
    pub channel: String,
    pub lifetime_s: f64,
    pub campaign_limit_s: f64,
    pub safety_factor: f64,
    pub gamma_mev: f64,
    pub delta_e_mev: f64,
    pub t_m_min_s: f64,
    pub coefficient_s_per_sqrt_s: f64,
    pub observable: bool,
}

impl BoundReport {
    pub fn t_m_min(&self) -> PhysQuantity {
        PhysQuantity::seconds(self.t_m_min_s).expect("finite")
    }
}

pub fn evaluate(s: &Scenario) -> Result<BoundReport> {
    s.validate()?;
    let consts = ConstantsTable::reference();
    let gamma = consts.width_from_lifetime(s.lifetime)?;
    let delta_e = s.model.delta_e(gamma)?;
    let t_min = min_measurement_time(delta_e)?.scale(s.safety_factor)?;
    let limit = s.campaign_limit.magnitude();
    Ok(BoundReport {
        model: s.model.kind().to_string(),
        channel: s.channel.name().to_string(),
        lifetime_s: s.lifetime.magnitude(),
        campaign_limit_s: limit,
        safety_factor: s.safety_factor,
        gamma_mev: gamma.magnitude(),
        delta_e_mev: delta_e.magnitude(),
        t_m_min_s: t_min.magnitude(),
        coefficient_s_per_sqrt_s: s.safety_factor * tm_coefficient(&s.model),
        observable: t_min.magnitude() <= limit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    Tau,
    Radius,
    Speed,
    Cutoff,
}

impl SweepParam {
    pub fn dimension(self) -> Dimension {
        match self {
            SweepParam::Tau => Dimension::TIME,
            SweepParam::Radius => Dimension::LENGTH,
            SweepParam::Speed => Dimension::SPEED,
            SweepParam::Cutoff => Dimension::ENERGY,
        }
    }

    /// Unit used when grid values are given as bare numbers.
    pub fn default_unit(self) -> Unit {
        match self {
            SweepParam::Tau => Unit::Year,
            SweepParam::Radius => Unit::Centimeter,
            SweepParam::Speed => Unit::SpeedOfLight,
            SweepParam::Cutoff => Unit::GeV,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::Tau => "tau",
            SweepParam::Radius => "R",
            SweepParam::Speed => "v",
            SweepParam::Cutoff => "M",
        }
    }

    fn applies_to(self, kind: ModelKind) -> bool {
        match self {
            SweepParam::Tau => true,
            SweepParam::Radius | SweepParam::Speed => kind == ModelKind::Localization,
            SweepParam::Cutoff => kind == ModelKind::StepCutoffGut,
        }
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau" => Ok(SweepParam::Tau),
            "R" | "r" => Ok(SweepParam::Radius),
            "v" => Ok(SweepParam::Speed),
            "M" | "m" => Ok(SweepParam::Cutoff),
            other => Err(Error::Config(format!("unknown sweep parameter `{other}` (expected tau|R|v|M)"))),
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn with_parameter(s: &Scenario, param: SweepParam, value: PhysQuantity) -> Result<Scenario> {
    let mut out = s.clone();
    match (param, &s.model) {
        (SweepParam::Tau, _) => out.lifetime = value,
        (SweepParam::Radius, SpreadModel::Localization { speed, .. }) => {
            out.model = SpreadModel::localization(*speed, value)?;
        }
        (SweepParam::Speed, SpreadModel::Localization { radius, .. }) => {
            out.model = SpreadModel::localization(value, *radius)?;
        }
        (SweepParam::Cutoff, SpreadModel::StepCutoffGut { channel, .. }) => {
            out.model = SpreadModel::step_cutoff_gut(value, channel.clone())?;
        }
        _ => unreachable!("checked by applies_to"),
    }
    Ok(out)
}

/// One report per grid value, in grid order.
pub fn sweep(s: &Scenario, param: SweepParam, grid: &[PhysQuantity]) -> Result<Vec<BoundReport>> {
    if !param.applies_to(s.model.kind()) {
        return Err(Error::Config(format!(
            "parameter `{param}` does not apply to model `{}`",
            s.model.kind()
        )));
    }
    for (i, q) in grid.iter().enumerate() {
        let v = q.expect(param.dimension())?;
        require_positive(&format!("grid value #{i} for `{param}`"), v)?;
    }
    let results: Vec<Result<BoundReport>> = grid
        .par_iter()
        .map(|&value| with_parameter(s, param, value).and_then(|sc| evaluate(&sc)))
        .collect();
    results.into_iter().collect()
}
