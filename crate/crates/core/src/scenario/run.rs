use serde::Serialize;

use super::{Scenario, ScenarioError};
use crate::drivers::{ai_effort_growth, relative_speed, scenario_projection, DriverProjection};
use crate::growth::{integrate_trajectory, years_of_progress, Trajectory, DEFAULT_TFP_GROWTH};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioSummary {
    pub tfp_multiplier: f64,
    pub years_of_progress: f64,
    /// Annual multiplier of AI research effort.
    pub ai_growth: f64,
    /// AI effort growth relative to human effort growth; `None` if humans do not grow.
    pub relative_speed: Option<f64>,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRun {
    pub scenario: Scenario,
    pub trajectory: Trajectory,
    pub projection: DriverProjection,
    pub summary: ScenarioSummary,
}

pub fn run_scenario(scenario: &Scenario, step: f64) -> Result<ScenarioRun, ScenarioError> {
    scenario.validate()?;
    let schedule = scenario.schedule()?;
    let trajectory = integrate_trajectory(
        &scenario.growth,
        &schedule,
        scenario.spec.horizon_years,
        step,
    )?;
    let projection = scenario_projection(&scenario.spec)?;
    let tfp_multiplier = trajectory.tfp_multiplier();
    let ai_growth = ai_effort_growth(&scenario.spec.rates);
    let summary = ScenarioSummary {
        tfp_multiplier,
        years_of_progress: years_of_progress(tfp_multiplier, DEFAULT_TFP_GROWTH)?,
        ai_growth,
        relative_speed: relative_speed(ai_growth, scenario.spec.human_growth).ok(),
        step: trajectory.step,
    };
    Ok(ScenarioRun {
        scenario: scenario.clone(),
        trajectory,
        projection,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drivers::Preset;
    use crate::growth::DEFAULT_STEP;

    #[test]
    fn conservative_headline() {
        let run = run_scenario(&Scenario::from_preset(Preset::ConservativePostParity), DEFAULT_STEP)
            .unwrap();
        let s = run.summary;
        assert!(s.tfp_multiplier > 50.0 / 1.7 && s.tfp_multiplier < 50.0 * 1.7);
        assert!(s.years_of_progress >= 280.0, "{}", s.years_of_progress);
        assert_eq!(s.relative_speed, Some(100.0));
    }

    #[test]
    fn default_path_is_close_to_a_decade() {
        let run = run_scenario(&Scenario::from_preset(Preset::DefaultPath), DEFAULT_STEP).unwrap();
        let s = run.summary;
        assert!(((s.tfp_multiplier / 1.0125f64.powi(10)) - 1.0).abs() < 1e-3);
        assert!((s.years_of_progress - 10.0).abs() < 0.1, "{}", s.years_of_progress);
    }

    #[test]
    fn moderate_totals_match_table() {
        let run = run_scenario(&Scenario::from_preset(Preset::Moderate), DEFAULT_STEP).unwrap();
        let p = run.projection;
        assert!((p.training.total / 1e4 - 1.0).abs() < 0.1);
        assert_eq!(p.algorithmic.total, 1e3);
        assert!((p.inference_compute.total / 1e4 - 1.0).abs() < 0.1);
        assert!((p.effort_total / 1e11 - 1.0).abs() < 0.1);
    }
}
