use std::fmt::Write as _;

use serde::Deserialize;

use super::file::RawScenario;
use super::{Scenario, ScenarioError};
use crate::drivers::effort_schedule;
use crate::growth::{integrate_final, years_of_progress, DEFAULT_TFP_GROWTH};

pub const DEFAULT_COMBINATION_LIMIT: u64 = 100_000;
pub const MAX_SWEEP_PARAMETERS: usize = 3;

/// Values taken by one swept parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterAxis {
    pub path: String,
    pub values: Vec<f64>,
}

/// Cartesian grid over up to three scenario parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axes: Vec<ParameterAxis>,
    pub limit: u64,
}

impl SweepGrid {
    pub fn new(axes: Vec<ParameterAxis>) -> Self {
        Self {
            axes,
            limit: DEFAULT_COMBINATION_LIMIT,
        }
    }

    pub fn combinations(&self) -> u128 {
        self.axes.iter().map(|a| a.values.len() as u128).product()
    }

    fn validate(&self, template: &Scenario) -> Result<(), ScenarioError> {
        if self.axes.len() > MAX_SWEEP_PARAMETERS {
            return Err(ScenarioError::field(
                "parameter",
                format!("at most {MAX_SWEEP_PARAMETERS} parameters may be swept"),
            ));
        }
        let combinations = self.combinations();
        if combinations > self.limit as u128 {
            return Err(ScenarioError::SweepTooLarge {
                combinations,
                limit: self.limit,
            });
        }
        let mut probe = template.clone();
        for axis in &self.axes {
            if axis.values.is_empty() {
                return Err(ScenarioError::field(axis.path.clone(), "no values to sweep"));
            }
            set_parameter(&mut probe, &axis.path, axis.values[0])?;
        }
        Ok(())
    }

    /// Parameter values at a flat grid index; the first axis varies slowest.
    fn point(&self, mut index: usize) -> Vec<f64> {
        let mut values = vec![0.0; self.axes.len()];
        for (slot, axis) in values.iter_mut().zip(&self.axes).rev() {
            let n = axis.values.len();
            *slot = axis.values[index % n];
            index /= n;
        }
        values
    }
}

/// Sets a scenario parameter by its file path, e.g. `growth.lambda`.
pub fn set_parameter(scenario: &mut Scenario, path: &str, value: f64) -> Result<(), ScenarioError> {
    let spec = &mut scenario.spec;
    let slot: &mut f64 = match path {
        "horizon_years" => &mut spec.horizon_years,
        "human_growth" => &mut spec.human_growth,
        "growth.alpha" => &mut scenario.growth.alpha,
        "growth.lambda" => &mut scenario.growth.lambda,
        "growth.beta" => &mut scenario.growth.beta,
        "growth.gamma" => {
            scenario.gamma = Some(value);
            return Ok(());
        }
        "drivers.training" => &mut spec.rates.training_compute,
        "drivers.algorithmic" => &mut spec.rates.algorithmic_efficiency,
        "drivers.post_training" => &mut spec.rates.post_training,
        "drivers.inference_compute" => &mut spec.rates.inference_compute,
        "drivers.inference_efficiency" => &mut spec.rates.inference_efficiency,
        "caps.training_total" => &mut spec.caps.training_total,
        "caps.algorithmic_total" => &mut spec.caps.algorithmic_total,
        "caps.inference_total" => &mut spec.caps.inference_total,
        other => return Err(ScenarioError::UnknownParameter(other.to_string())),
    };
    *slot = value;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub values: Vec<f64>,
    pub tfp_multiplier: f64,
    pub years_of_progress: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub paths: Vec<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn csv(&self) -> String {
        let mut out = String::new();
        for path in &self.paths {
            out.push_str(path);
            out.push(',');
        }
        out.push_str("tfp_multiplier,years_of_progress\n");
        for row in &self.rows {
            for v in &row.values {
                let _ = write!(out, "{v},");
            }
            let _ = writeln!(out, "{},{}", row.tfp_multiplier, row.years_of_progress);
        }
        out
    }
}

/// How sweep points are evaluated. Without the `parallel` feature both run sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

fn evaluate(
    grid: &SweepGrid,
    template: &Scenario,
    step: f64,
    index: usize,
) -> Result<SweepRow, ScenarioError> {
    let values = grid.point(index);
    let mut scenario = template.clone();
    for (axis, &v) in grid.axes.iter().zip(&values) {
        set_parameter(&mut scenario, &axis.path, v)?;
    }
    scenario.validate()?;
    let mut schedule = effort_schedule(&scenario.spec)?;
    if let Some(gamma) = scenario.gamma {
        schedule = schedule.with_cognitive_share(gamma)?;
    }
    let tfp = integrate_final(&scenario.growth, &schedule, scenario.spec.horizon_years, step)?;
    Ok(SweepRow {
        index,
        values,
        tfp_multiplier: tfp,
        years_of_progress: years_of_progress(tfp, DEFAULT_TFP_GROWTH)?,
    })
}

pub fn sweep_with(
    grid: &SweepGrid,
    template: &Scenario,
    step: f64,
    execution: Execution,
) -> Result<SweepTable, ScenarioError> {
    template.validate()?;
    grid.validate(template)?;
    let n = grid.combinations() as usize;
    let rows: Result<Vec<SweepRow>, ScenarioError> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n)
                .into_par_iter()
                .map(|i| evaluate(grid, template, step, i))
                .collect()
        }
        _ => (0..n).map(|i| evaluate(grid, template, step, i)).collect(),
    };
    Ok(SweepTable {
        paths: grid.axes.iter().map(|a| a.path.clone()).collect(),
        rows: rows?,
    })
}

pub fn sweep(grid: &SweepGrid, template: &Scenario, step: f64) -> Result<SweepTable, ScenarioError> {
    sweep_with(grid, template, step, Execution::default())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    #[serde(default)]
    scenario: RawScenario,
    limit: Option<u64>,
    #[serde(default)]
    parameter: Vec<RawAxis>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    path: String,
    values: Option<Vec<f64>>,
    range: Option<RawRange>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRange {
    min: f64,
    max: f64,
    count: usize,
}

fn linspace(r: &RawRange) -> Vec<f64> {
    match r.count {
        0 => vec![],
        1 => vec![r.min],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    r.max
                } else {
                    r.min + (r.max - r.min) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Parses a sweep file: a `[scenario]` table in the scenario schema plus
/// `[[parameter]]` entries with either `values` or `range = {min, max, count}`.
pub fn parse_sweep(text: &str) -> Result<(SweepGrid, Scenario), ScenarioError> {
    let raw: RawSweep = toml::from_str(text).map_err(|e| ScenarioError::from_toml(e, text))?;
    let template = raw.scenario.resolve()?;
    let mut axes = Vec::with_capacity(raw.parameter.len());
    for (i, axis) in raw.parameter.into_iter().enumerate() {
        let values = match (axis.values, axis.range) {
            (Some(v), None) => v,
            (None, Some(r)) => linspace(&r),
            _ => {
                return Err(ScenarioError::field(
                    format!("parameter[{i}]"),
                    "exactly one of `values` or `range` is required",
                ))
            }
        };
        axes.push(ParameterAxis {
            path: axis.path,
            values,
        });
    }
    let mut grid = SweepGrid::new(axes);
    if let Some(limit) = raw.limit {
        grid.limit = limit;
    }
    Ok((grid, template))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drivers::Preset;
    use crate::growth::DEFAULT_STEP;
    use crate::scenario::run_scenario;

    fn conservative() -> Scenario {
        Scenario::from_preset(Preset::ConservativePostParity)
    }

    fn axis(path: &str, values: &[f64]) -> ParameterAxis {
        ParameterAxis {
            path: path.into(),
            values: values.to_vec(),
        }
    }

    #[test]
    fn lambda_beta_monotonicity() {
        let grid = SweepGrid::new(vec![
            axis("growth.lambda", &[0.5, 0.75, 1.0]),
            axis("growth.beta", &[2.4, 3.1]),
        ]);
        let table = sweep(&grid, &conservative(), DEFAULT_STEP).unwrap();
        assert_eq!(table.rows.len(), 6);
        let years: Vec<f64> = table.rows.iter().map(|r| r.years_of_progress).collect();
        // Rows: (λ0,β0), (λ0,β1), (λ1,β0), ...
        for l in 0..3 {
            assert!(years[2 * l] > years[2 * l + 1]);
            if l > 0 {
                assert!(years[2 * l] > years[2 * (l - 1)]);
                assert!(years[2 * l + 1] > years[2 * (l - 1) + 1]);
            }
        }
        assert_eq!(table.rows[3].values, vec![0.75, 3.1]);
    }

    #[test]
    fn single_point_matches_run() {
        let grid = SweepGrid::new(vec![axis("growth.lambda", &[0.75])]);
        let table = sweep(&grid, &conservative(), DEFAULT_STEP).unwrap();
        let run = run_scenario(&conservative(), DEFAULT_STEP).unwrap();
        assert_eq!(table.rows[0].tfp_multiplier, run.summary.tfp_multiplier);
        assert_eq!(table.rows[0].years_of_progress, run.summary.years_of_progress);
    }

    #[test]
    fn slower_ai_growth_still_gives_a_century() {
        // 2.5x/yr AI effort growth: inference compute 2x times efficiency 1.25x.
        let grid = SweepGrid::new(vec![axis("drivers.inference_efficiency", &[1.25])]);
        let table = sweep(&grid, &conservative(), DEFAULT_STEP).unwrap();
        assert!(table.rows[0].years_of_progress >= 100.0);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let grid = SweepGrid::new(vec![
            axis("growth.lambda", &[0.5, 0.6, 0.7, 0.8]),
            axis("human_growth", &[0.01, 0.04]),
            axis("drivers.inference_compute", &[1.5, 2.0, 2.5]),
        ]);
        let a = sweep_with(&grid, &conservative(), 0.05, Execution::Parallel).unwrap();
        let b = sweep_with(&grid, &conservative(), 0.05, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert!(a.rows.iter().enumerate().all(|(i, r)| r.index == i));
    }

    #[test]
    fn sweep_errors() {
        let big = SweepGrid {
            axes: vec![axis("growth.lambda", &[0.5; 400]), axis("growth.beta", &[2.4; 400])],
            limit: DEFAULT_COMBINATION_LIMIT,
        };
        assert!(matches!(
            sweep(&big, &conservative(), DEFAULT_STEP),
            Err(ScenarioError::SweepTooLarge { .. })
        ));
        let bad = SweepGrid::new(vec![axis("growth.kappa", &[1.0])]);
        assert!(matches!(
            sweep(&bad, &conservative(), DEFAULT_STEP),
            Err(ScenarioError::UnknownParameter(_))
        ));
        let out_of_range = SweepGrid::new(vec![axis("growth.lambda", &[0.5, 1.5])]);
        assert!(sweep(&out_of_range, &conservative(), DEFAULT_STEP).is_err());
    }

    #[test]
    fn parse_sweep_file() {
        let text = r#"
[scenario]
name = "conservative-post-parity"

[[parameter]]
path = "growth.lambda"
values = [0.5, 0.75, 1.0]

[[parameter]]
path = "growth.beta"
range = { min = 2.4, max = 3.1, count = 2 }
"#;
        let (grid, template) = parse_sweep(text).unwrap();
        assert_eq!(template, conservative());
        assert_eq!(grid.combinations(), 6);
        assert_eq!(grid.axes[1].values, vec![2.4, 3.1]);
        assert!(parse_sweep("[[parameter]]\npath = \"growth.beta\"\n").is_err());
    }
}
