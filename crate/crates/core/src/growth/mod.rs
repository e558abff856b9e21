//! Semi-endogenous idea production.
//!
//! Technology grows as `Ȧ/A = α · S^λ · A^(-β)`, where `S` is research effort
//! measured in human-researcher equivalents. With `S0 = A0 = 1` the
//! productivity constant `α` is the instantaneous growth rate at the start,
//! and the default calibration (`α = 0.0125`, `λ = 0.75`, `β = 2.4`) sits on
//! the 1.25%/yr steady state reached with 4%/yr effort growth.

mod integrate;
mod schedule;
mod solver;

pub use integrate::{integrate_final, integrate_trajectory, Trajectory, DEFAULT_STEP};
pub use schedule::{EffortComponent, ResearcherSchedule};
pub use solver::{
    frontload_path, simulate_constant_growth, solve_required_growth, FrontloadPath, SolverOptions,
};

use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, require_positive, ModelError, Result};

/// Default-path growth in research effort (4%/yr).
pub const DEFAULT_EFFORT_GROWTH: f64 = 0.04;
/// Default-path TFP growth (1.25%/yr).
pub const DEFAULT_TFP_GROWTH: f64 = 0.0125;

/// Parameters of the idea production function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthParams {
    /// Productivity constant.
    pub alpha: f64,
    /// Parallelism ("stepping on toes") elasticity, in (0, 1].
    pub lambda: f64,
    /// Fishing-out elasticity, > 0.
    pub beta: f64,
}

impl Default for GrowthParams {
    fn default() -> Self {
        Self {
            alpha: 0.0125,
            lambda: 0.75,
            beta: 2.4,
        }
    }
}

impl GrowthParams {
    pub fn new(alpha: f64, lambda: f64, beta: f64) -> Result<Self> {
        let params = Self {
            alpha,
            lambda,
            beta,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("alpha", self.alpha)?;
        require_positive("beta", self.beta)?;
        if !(self.lambda > 0.0 && self.lambda <= 1.0) {
            return Err(ModelError::invalid(
                "lambda",
                format!("must lie in (0, 1], got {}", self.lambda),
            ));
        }
        Ok(())
    }

    /// Right-hand side of `dA/dt = α S^λ A^(1-β)`.
    #[inline]
    pub(crate) fn tech_derivative(&self, effort: f64, tech_level: f64) -> f64 {
        self.alpha * effort.powf(self.lambda) * tech_level.powf(1.0 - self.beta)
    }
}

/// Steady-state technology growth `λ g_S / β` for a continuous effort growth rate.
pub fn steady_state_growth(params: &GrowthParams, effort_growth: f64) -> Result<f64> {
    params.validate()?;
    require_at_least("effort_growth", effort_growth, 0.0)?;
    Ok(params.lambda * effort_growth / params.beta)
}

/// Instantaneous growth rate `α S^λ A^(-β)`.
pub fn instantaneous_growth(params: &GrowthParams, effort: f64, tech_level: f64) -> Result<f64> {
    params.validate()?;
    if !(effort > 0.0) {
        return Err(ModelError::NonPositive {
            quantity: "effort",
            value: effort,
            time: 0.0,
        });
    }
    if !(tech_level > 0.0) {
        return Err(ModelError::NonPositive {
            quantity: "tech_level",
            value: tech_level,
            time: 0.0,
        });
    }
    Ok(params.alpha * effort.powf(params.lambda) * tech_level.powf(-params.beta))
}

/// Years of default-path progress represented by a technology ratio,
/// using the discrete compound definition `ln(ratio) / ln(1 + g)`.
pub fn years_of_progress(tech_ratio: f64, default_growth: f64) -> Result<f64> {
    if !(tech_ratio >= 1.0) {
        return Err(ModelError::invalid(
            "tech_ratio",
            format!("technological regress is not modeled (ratio {tech_ratio})"),
        ));
    }
    require_positive("default_growth", default_growth)?;
    Ok(tech_ratio.ln() / default_growth.ln_1p())
}

/// Instantaneous effort jump `speedup^(1/λ)` that multiplies the growth rate by `speedup`.
pub fn frontload_boost(params: &GrowthParams, speedup: f64) -> Result<f64> {
    params.validate()?;
    if !(speedup > 1.0) {
        return Err(ModelError::invalid("speedup", format!("must be > 1, got {speedup}")));
    }
    Ok(speedup.powf(1.0 / params.lambda))
}

/// Split of research effort into cognitive labour `C` and a physical
/// labour-plus-capital index `P`, combined as `C^γ P^(1-γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CognitivePhysicalSplit {
    pub gamma: f64,
    pub cognitive: f64,
    pub physical: f64,
}

impl CognitivePhysicalSplit {
    pub fn new(gamma: f64, cognitive: f64, physical: f64) -> Result<Self> {
        let split = Self {
            gamma,
            cognitive,
            physical,
        };
        split.validate()?;
        Ok(split)
    }

    pub fn validate(&self) -> Result<()> {
        validate_gamma(self.gamma)?;
        require_positive("cognitive", self.cognitive)?;
        require_positive("physical", self.physical)
    }

    /// Combined research effort `C^γ P^(1-γ)`.
    pub fn effort(&self) -> f64 {
        if self.gamma == 1.0 {
            return self.cognitive;
        }
        self.cognitive.powf(self.gamma) * self.physical.powf(1.0 - self.gamma)
    }
}

pub(crate) fn validate_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(ModelError::invalid(
            "gamma",
            format!("must lie in (0, 1], got {gamma}"),
        ))
    }
}

/// Steady-state growth `λ (γ g_C + (1-γ) g_P) / β` under a Cobb-Douglas effort split.
pub fn cobb_douglas_steady_state(
    params: &GrowthParams,
    split: &CognitivePhysicalSplit,
    cognitive_growth: f64,
    physical_growth: f64,
) -> Result<f64> {
    params.validate()?;
    split.validate()?;
    require_at_least("cognitive_growth", cognitive_growth, 0.0)?;
    require_at_least("physical_growth", physical_growth, 0.0)?;
    let gamma = split.gamma;
    let combined = gamma * cognitive_growth + (1.0 - gamma) * physical_growth;
    Ok(params.lambda * combined / params.beta)
}

/// Extra factor by which cognitive effort must rise, relative to the
/// `γ = 1` case, to multiply growth by `speedup` with physical inputs held fixed.
pub fn cognitive_boost_factor(lambda: f64, gamma: f64, speedup: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(ModelError::invalid(
            "lambda",
            format!("must lie in (0, 1], got {lambda}"),
        ));
    }
    validate_gamma(gamma)?;
    if !(speedup > 1.0) {
        return Err(ModelError::invalid("speedup", format!("must be > 1, got {speedup}")));
    }
    Ok(speedup.powf(1.0 / (gamma * lambda)) / speedup.powf(1.0 / lambda))
}

/// Logarithmic ideas variant `g_A = g0 + θ ln(S / S_ref)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogIdeasParams {
    /// Coefficient on `ln S`, per year.
    pub theta: f64,
    /// Growth at the reference effort.
    pub base_growth: f64,
    /// Elasticity of `g_A` with respect to `S` at the reference effort.
    pub reference_elasticity: f64,
}

impl LogIdeasParams {
    /// Calibrates `θ = elasticity × base_growth`.
    pub fn calibrated(base_growth: f64, reference_elasticity: f64) -> Result<Self> {
        require_positive("base_growth", base_growth)?;
        require_positive("reference_elasticity", reference_elasticity)?;
        Ok(Self {
            theta: reference_elasticity * base_growth,
            base_growth,
            reference_elasticity,
        })
    }
}

impl Default for LogIdeasParams {
    fn default() -> Self {
        Self {
            theta: 0.75 * 0.015,
            base_growth: 0.015,
            reference_elasticity: 0.75,
        }
    }
}

pub fn log_ideas_growth(params: &LogIdeasParams, effort_multiplier: f64) -> Result<f64> {
    require_at_least("effort_multiplier", effort_multiplier, 1.0)?;
    Ok(params.base_growth + params.theta * effort_multiplier.ln())
}
