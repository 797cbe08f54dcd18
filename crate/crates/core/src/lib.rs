//! Energy spread of unstable states and the measurement-duration bound it
//! implies through the time-energy uncertainty relation.
//!
//! * [`units`]: dimension-checked quantities and reference constants
//! * [`channels`]: decay channels, threshold energy and mass gap
//! * [`spread_models`]: closed-form ΔE(γ) models and form-factor cutoffs
//! * [`spectral`]: truncated Breit–Wigner density, moments, survival law
//! * [`bounds`]: minimum measurement time, scenarios and sweeps
//! * [`cli`]: the `decay-spread` command-line frontend

pub mod bounds;
pub mod channels;
pub mod cli;
pub mod error;
pub mod grid;
pub mod quadrature;
pub mod spectral;
pub mod spread_models;
pub mod units;

pub use bounds::{evaluate, min_measurement_time, sweep, tm_coefficient, BoundReport, Scenario, SweepParam};
pub use channels::DecayChannel;
pub use error::{Error, Result};
pub use spectral::{SurvivalCurve, TruncatedBreitWigner};
pub use spread_models::{cutoff_smooth, cutoff_step, SpreadModel};
pub use units::{ConstantsTable, Dimension, PhysQuantity, Unit};
