use serde::Serialize;

use super::{years_of_progress, GrowthParams, ResearcherSchedule, DEFAULT_TFP_GROWTH};
use crate::error::{require_positive, ModelError, Result};

/// Default integration step, in years.
pub const DEFAULT_STEP: f64 = 0.01;

/// Technology path sampled on a uniform time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub effort_human: Vec<f64>,
    pub effort_ai: Vec<f64>,
    pub effort_total: Vec<f64>,
    pub tech_level: Vec<f64>,
    pub growth_rate: Vec<f64>,
    pub equiv_years: Vec<f64>,
    /// Step actually used (`horizon / n`).
    pub step: f64,
    /// Default-path growth rate used for `equiv_years`.
    pub default_growth: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_tech_level(&self) -> f64 {
        *self.tech_level.last().expect("trajectory has at least two points")
    }

    /// `A(horizon) / A(0)`.
    pub fn tfp_multiplier(&self) -> f64 {
        self.final_tech_level() / self.tech_level[0]
    }

    pub fn final_equiv_years(&self) -> f64 {
        *self.equiv_years.last().expect("trajectory has at least two points")
    }
}

/// One classical fourth-order Runge-Kutta step for `y' = f(t, y)`.
#[inline]
pub(crate) fn rk4_step(f: impl Fn(f64, f64) -> f64, t: f64, y: f64, h: f64) -> f64 {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    let k4 = f(t + h, y + h * k3);
    y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Number of uniform steps covering `horizon` with spacing no larger than `step`.
pub(crate) fn step_count(horizon: f64, step: f64) -> usize {
    let ratio = horizon / step;
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.0) {
        nearest.max(1.0) as usize
    } else {
        ratio.ceil() as usize
    }
}

fn check_inputs(
    params: &GrowthParams,
    schedule: &ResearcherSchedule,
    horizon: f64,
    step: f64,
) -> Result<usize> {
    params.validate()?;
    schedule.validate()?;
    require_positive("horizon", horizon)?;
    require_positive("step", step)?;
    if step > horizon {
        return Err(ModelError::StepExceedsHorizon { step, horizon });
    }
    Ok(step_count(horizon, step))
}

fn effort_checked(schedule: &ResearcherSchedule, t: f64) -> Result<f64> {
    let s = schedule.effective_at(t);
    if s > 0.0 && s.is_finite() {
        Ok(s)
    } else {
        Err(ModelError::NonPositive {
            quantity: "effort",
            value: s,
            time: t,
        })
    }
}

/// Final technology level only, skipping trajectory storage.
pub fn integrate_final(
    params: &GrowthParams,
    schedule: &ResearcherSchedule,
    horizon: f64,
    step: f64,
) -> Result<f64> {
    let n = check_inputs(params, schedule, horizon, step)?;
    let h = horizon / n as f64;
    let rhs = |t: f64, a: f64| params.tech_derivative(schedule.effective_at(t), a);
    let mut a: f64 = 1.0;
    for i in 0..n {
        let t = i as f64 * h;
        a = rk4_step(rhs, t, a, h);
        if !(a > 0.0 && a.is_finite()) {
            return Err(ModelError::NonPositive {
                quantity: "tech_level",
                value: a,
                time: t + h,
            });
        }
    }
    // Effort is checked only at the ends; components are positive exponentials.
    effort_checked(schedule, 0.0)?;
    effort_checked(schedule, horizon)?;
    Ok(a)
}

/// Integrates `dA/dt = α S(t)^λ A^(1-β)` from `A(0) = 1` with fixed-step RK4.
///
/// The grid is uniform; if `step` does not divide `horizon` the step is
/// shrunk to `horizon / ceil(horizon / step)`.
pub fn integrate_trajectory(
    params: &GrowthParams,
    schedule: &ResearcherSchedule,
    horizon: f64,
    step: f64,
) -> Result<Trajectory> {
    let n = check_inputs(params, schedule, horizon, step)?;
    let h = horizon / n as f64;
    let rhs = |t: f64, a: f64| params.tech_derivative(schedule.effective_at(t), a);

    let mut traj = Trajectory {
        times: Vec::with_capacity(n + 1),
        effort_human: Vec::with_capacity(n + 1),
        effort_ai: Vec::with_capacity(n + 1),
        effort_total: Vec::with_capacity(n + 1),
        tech_level: Vec::with_capacity(n + 1),
        growth_rate: Vec::with_capacity(n + 1),
        equiv_years: Vec::with_capacity(n + 1),
        step: h,
        default_growth: DEFAULT_TFP_GROWTH,
    };

    let mut a: f64 = 1.0;
    for i in 0..=n {
        let t = if i == n { horizon } else { i as f64 * h };
        let s_eff = effort_checked(schedule, t)?;
        if !(a > 0.0 && a.is_finite()) {
            return Err(ModelError::NonPositive {
                quantity: "tech_level",
                value: a,
                time: t,
            });
        }
        traj.times.push(t);
        traj.effort_human.push(schedule.human_at(t));
        traj.effort_ai.push(schedule.ai_at(t));
        traj.effort_total.push(schedule.total_at(t));
        traj.tech_level.push(a);
        traj.growth_rate
            .push(params.alpha * s_eff.powf(params.lambda) * a.powf(-params.beta));
        traj.equiv_years.push(years_of_progress(a.max(1.0), DEFAULT_TFP_GROWTH)?);
        if i < n {
            a = rk4_step(rhs, i as f64 * h, a, h);
        }
    }
    Ok(traj)
}
