use serde::Serialize;

use super::integrate::integrate_final;
use super::{frontload_boost, GrowthParams, ResearcherSchedule, DEFAULT_EFFORT_GROWTH, DEFAULT_TFP_GROWTH};
use crate::error::{require_positive, ModelError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub step: f64,
    /// Bisection bracket on the annual effort growth rate.
    pub bracket: (f64, f64),
    /// Width of the bracket below which `g` counts as resolved.
    pub rate_tolerance: f64,
    /// Relative residual on the final technology level.
    pub residual_tolerance: f64,
    pub max_iterations: usize,
    pub default_growth: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            step: super::DEFAULT_STEP,
            bracket: (0.0, 10.0),
            rate_tolerance: 1e-6,
            residual_tolerance: 1e-9,
            max_iterations: 200,
            default_growth: DEFAULT_TFP_GROWTH,
        }
    }
}

/// Technology level after `horizon` years with `S(t) = (1 + g)^t`, `S0 = A0 = 1`.
pub fn simulate_constant_growth(
    params: &GrowthParams,
    growth: f64,
    horizon: f64,
    step: f64,
) -> Result<f64> {
    if !(growth > -1.0) {
        return Err(ModelError::invalid("growth", format!("must be > -1, got {growth}")));
    }
    integrate_final(params, &ResearcherSchedule::compound(growth), horizon, step)
}

/// Constant annual effort growth `g` such that `horizon` years of
/// `S(t) = (1 + g)^t` deliver `target_years` of default-path progress,
/// i.e. `A(horizon) = (1 + g_default)^target_years`.
pub fn solve_required_growth(
    params: &GrowthParams,
    target_years: f64,
    horizon: f64,
    options: &SolverOptions,
) -> Result<f64> {
    params.validate()?;
    require_positive("horizon", horizon)?;
    require_positive("target_years", target_years)?;
    if target_years < horizon {
        return Err(ModelError::TargetBelowDefault {
            target_years,
            horizon,
        });
    }
    let target = (1.0 + options.default_growth).powf(target_years);
    let residual = |g: f64| -> Result<f64> {
        Ok(simulate_constant_growth(params, g, horizon, options.step)? / target - 1.0)
    };

    let (mut lo, mut hi) = options.bracket;
    let r_lo = residual(lo)?;
    let r_hi = residual(hi)?;
    if r_lo > 0.0 || r_hi < 0.0 {
        return Err(ModelError::NoConvergence {
            iterations: 0,
            low: lo,
            high: hi,
        });
    }
    if r_lo.abs() <= options.residual_tolerance {
        return Ok(lo);
    }

    for _ in 0..options.max_iterations {
        let mid = 0.5 * (lo + hi);
        let r = residual(mid)?;
        if r.abs() <= options.residual_tolerance && hi - lo <= options.rate_tolerance {
            return Ok(mid);
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            let mid = 0.5 * (lo + hi);
            if residual(mid)?.abs() <= options.residual_tolerance {
                return Ok(mid);
            }
            break;
        }
    }
    Err(ModelError::NoConvergence {
        iterations: options.max_iterations,
        low: lo,
        high: hi,
    })
}

/// Analytic front-loaded path: jump effort by `speedup^(1/λ)`, then grow it
/// at `speedup` times the default effort growth for `horizon` years.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontloadPath {
    pub jump: f64,
    pub steady_growth: f64,
    pub total_increase: f64,
    /// Geometric-mean annual growth, `total^(1/horizon) - 1`.
    pub mean_growth: f64,
}

pub fn frontload_path(params: &GrowthParams, speedup: f64, horizon: f64) -> Result<FrontloadPath> {
    require_positive("horizon", horizon)?;
    let jump = frontload_boost(params, speedup)?;
    let steady_growth = speedup * DEFAULT_EFFORT_GROWTH;
    let total_increase = jump * (1.0 + steady_growth).powf(horizon);
    Ok(FrontloadPath {
        jump,
        steady_growth,
        total_increase,
        mean_growth: total_increase.powf(1.0 / horizon) - 1.0,
    })
}
