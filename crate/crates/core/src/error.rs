use thiserror::Error;

use crate::units::Dimension;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: Dimension,
        right: Dimension,
    },

    #[error("{what} must be {requirement}, got {value}")]
    Domain {
        what: String,
        requirement: &'static str,
        value: f64,
    },

    #[error("non-finite magnitude for {0}")]
    NonFinite(String),

    #[error("unknown unit `{0}`")]
    UnknownUnit(String),

    #[error("{0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn domain(what: impl Into<String>, requirement: &'static str, value: f64) -> Self {
        Error::Domain {
            what: what.into(),
            requirement,
            value,
        }
    }

    /// Whether the error came out of a quadrature or other numerical routine
    /// rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with a domain error unless `value` is finite and strictly positive.
pub(crate) fn require_positive(what: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(what, "finite and > 0", value))
    }
}

pub(crate) fn require_non_negative(what: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(what, "finite and >= 0", value))
    }
}
