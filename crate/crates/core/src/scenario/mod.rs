//! Scenario files, runs, reports and parameter sweeps.

mod file;
mod report;
mod run;
mod sweep;

pub use file::{parse_scenario, serialize_scenario, RawScenario, Scenario};
pub use report::{sig3, trajectory_csv};
pub use run::{run_scenario, ScenarioRun, ScenarioSummary};
pub use sweep::{
    parse_sweep, set_parameter, sweep, sweep_with, Execution, ParameterAxis, SweepGrid, SweepRow,
    SweepTable, DEFAULT_COMBINATION_LIMIT, MAX_SWEEP_PARAMETERS,
};

use thiserror::Error;

use crate::error::ModelError;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{}{field}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Parse {
        field: String,
        line: Option<usize>,
        message: String,
    },

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error("sweep has {combinations} combinations, above the limit of {limit}")]
    SweepTooLarge { combinations: u128, limit: u64 },

    #[error("unknown sweep parameter path `{0}`")]
    UnknownParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ScenarioError {
    pub(crate) fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ScenarioError::Parse {
            field: field.into(),
            line: None,
            message: message.into(),
        }
    }

    /// Converts a TOML decoding error, locating its line in `text`.
    pub(crate) fn from_toml(err: toml::de::Error, text: &str) -> Self {
        let line = err
            .span()
            .map(|span| text[..span.start.min(text.len())].matches('\n').count() + 1);
        let message = err.message().to_string();
        // Decoder messages name the offending key as "... for key `a.b`"
        let field = message
            .split("for key `")
            .nth(1)
            .and_then(|rest| rest.split('`').next())
            .unwrap_or("")
            .to_string();
        ScenarioError::Parse {
            field: if field.is_empty() { "<document>".into() } else { field },
            line,
            message,
        }
    }
}
