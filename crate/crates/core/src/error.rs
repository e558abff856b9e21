use thiserror::Error;

/// Errors raised by the model and calculator operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-positive {quantity} ({value}) at t = {time}")]
    NonPositive {
        quantity: &'static str,
        value: f64,
        time: f64,
    },

    #[error("step {step} exceeds horizon {horizon}")]
    StepExceedsHorizon { step: f64, horizon: f64 },

    #[error("target of {target_years} years is below the default path over {horizon} years")]
    TargetBelowDefault { target_years: f64, horizon: f64 },

    #[error("solver did not converge after {iterations} iterations (bracket [{low}, {high}])")]
    NoConvergence {
        iterations: usize,
        low: f64,
        high: f64,
    },
}

impl ModelError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        ModelError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

/// Fails unless `value` is finite and strictly positive.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ModelError::invalid(name, format!("must be > 0, got {value}")))
    }
}

pub(crate) fn require_at_least(name: &'static str, value: f64, min: f64) -> Result<()> {
    if value >= min && !value.is_nan() {
        Ok(())
    } else {
        Err(ModelError::invalid(name, format!("must be >= {min}, got {value}")))
    }
}

pub(crate) fn require_fraction(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ModelError::invalid(name, format!("must lie in [0, 1], got {value}")))
    }
}
