use serde::{Deserialize, Serialize};

use super::ScenarioError;
use crate::drivers::{
    DriverRates, FeedbackMode, HeadroomCaps, Preset, ScenarioSpec,
};
use crate::error::ModelError;
use crate::growth::{GrowthParams, ResearcherSchedule};

/// A fully validated scenario: effort drivers plus growth parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub spec: ScenarioSpec,
    pub growth: GrowthParams,
    /// Cognitive share of research effort; `None` means all effort is cognitive.
    pub gamma: Option<f64>,
}

impl Scenario {
    pub fn from_preset(preset: Preset) -> Self {
        Self {
            spec: preset.spec(),
            growth: GrowthParams::default(),
            gamma: None,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.spec.validate().map_err(with_field_path)?;
        if !(self.spec.horizon_years > 0.0) {
            return Err(ScenarioError::field("horizon_years", "must be > 0"));
        }
        self.growth.validate().map_err(|e| prefix(e, "growth"))?;
        if let Some(gamma) = self.gamma {
            crate::growth::validate_gamma(gamma).map_err(|e| prefix(e, "growth"))?;
        }
        Ok(())
    }

    pub fn schedule(&self) -> Result<ResearcherSchedule, ScenarioError> {
        let schedule = crate::drivers::effort_schedule(&self.spec)?;
        Ok(match self.gamma {
            Some(gamma) => schedule.with_cognitive_share(gamma)?,
            None => schedule,
        })
    }
}

fn with_field_path(err: ModelError) -> ScenarioError {
    match err {
        ModelError::InvalidParameter { name, reason } => ScenarioError::field(name, reason),
        other => ScenarioError::Model(other),
    }
}

fn prefix(err: ModelError, section: &str) -> ScenarioError {
    match err {
        ModelError::InvalidParameter { name, reason } => {
            ScenarioError::field(format!("{section}.{name}"), reason)
        }
        other => ScenarioError::Model(other),
    }
}

/// On-disk scenario schema. Every key is optional; omitted keys come from
/// the preset named by `name`, or from the default path when `name` is not
/// a preset.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon_years: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub human_growth: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feedback_mode: Option<FeedbackMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_at_start: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<RawGrowth>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drivers: Option<RawDrivers>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<RawCaps>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrowth {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDrivers {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub training: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithmic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub post_training: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inference_compute: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inference_efficiency: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCaps {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub training_total: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithmic_total: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inference_total: Option<f64>,
}

impl RawScenario {
    /// Applies defaults and validates.
    pub fn resolve(&self) -> Result<Scenario, ScenarioError> {
        let preset = self.name.as_deref().and_then(|n| n.parse::<Preset>().ok());
        let mut spec = preset.unwrap_or(Preset::DefaultPath).spec();
        if let Some(name) = &self.name {
            spec.name = name.clone();
        }
        if let Some(h) = self.horizon_years {
            spec.horizon_years = h;
        }
        if let Some(g) = self.human_growth {
            spec.human_growth = g;
        }
        if let Some(p) = self.parity_at_start {
            spec.parity_at_start = p;
        }
        let algorithmic_cap_given = self
            .caps
            .as_ref()
            .and_then(|c| c.algorithmic_total)
            .is_some();
        if let Some(mode) = self.feedback_mode {
            if mode != spec.feedback_mode && !algorithmic_cap_given {
                spec.caps.algorithmic_total = HeadroomCaps::for_mode(mode).algorithmic_total;
            }
            spec.feedback_mode = mode;
        }
        if let Some(d) = &self.drivers {
            let r = &mut spec.rates;
            set(&mut r.training_compute, d.training);
            set(&mut r.algorithmic_efficiency, d.algorithmic);
            set(&mut r.post_training, d.post_training);
            set(&mut r.inference_compute, d.inference_compute);
            set(&mut r.inference_efficiency, d.inference_efficiency);
        }
        if let Some(c) = &self.caps {
            set(&mut spec.caps.training_total, c.training_total);
            set(&mut spec.caps.algorithmic_total, c.algorithmic_total);
            set(&mut spec.caps.inference_total, c.inference_total);
        }
        let mut growth = GrowthParams::default();
        let mut gamma = None;
        if let Some(g) = &self.growth {
            set(&mut growth.alpha, g.alpha);
            set(&mut growth.lambda, g.lambda);
            set(&mut growth.beta, g.beta);
            gamma = g.gamma;
        }
        let scenario = Scenario {
            spec,
            growth,
            gamma,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Fully explicit form of a scenario.
    pub fn from_scenario(s: &Scenario) -> Self {
        let r: &DriverRates = &s.spec.rates;
        Self {
            name: Some(s.spec.name.clone()),
            horizon_years: Some(s.spec.horizon_years),
            human_growth: Some(s.spec.human_growth),
            feedback_mode: Some(s.spec.feedback_mode),
            parity_at_start: Some(s.spec.parity_at_start),
            growth: Some(RawGrowth {
                alpha: Some(s.growth.alpha),
                lambda: Some(s.growth.lambda),
                beta: Some(s.growth.beta),
                gamma: s.gamma,
            }),
            drivers: Some(RawDrivers {
                training: Some(r.training_compute),
                algorithmic: Some(r.algorithmic_efficiency),
                post_training: Some(r.post_training),
                inference_compute: Some(r.inference_compute),
                inference_efficiency: Some(r.inference_efficiency),
            }),
            caps: Some(RawCaps {
                training_total: Some(s.spec.caps.training_total),
                algorithmic_total: Some(s.spec.caps.algorithmic_total),
                inference_total: Some(s.spec.caps.inference_total),
            }),
        }
    }
}

fn set(target: &mut f64, value: Option<f64>) {
    if let Some(v) = value {
        *target = v;
    }
}

/// Parses TOML scenario text into a validated scenario.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| ScenarioError::from_toml(e, text))?;
    raw.resolve()
}

pub fn serialize_scenario(scenario: &Scenario) -> String {
    toml::to_string(&RawScenario::from_scenario(scenario))
        .expect("scenario schema always serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_preset_file() {
        let s = parse_scenario("name = \"moderate\"\n").unwrap();
        assert_eq!(s, Scenario::from_preset(Preset::Moderate));
    }

    #[test]
    fn software_feedback_override_behaves_like_rapid() {
        let text = r#"
name = "moderate"
feedback_mode = "software"

[drivers]
algorithmic = 8
inference_efficiency = 20
"#;
        let s = parse_scenario(text).unwrap();
        let rapid = Preset::Rapid.spec();
        assert_eq!(s.spec.rates, rapid.rates);
        assert_eq!(s.spec.caps, rapid.caps);
        assert_eq!(s.spec.feedback_mode, FeedbackMode::Software);
    }

    #[test]
    fn range_error_names_field() {
        let err = parse_scenario("[drivers]\ntraining = 0.5\n").unwrap_err();
        match err {
            ScenarioError::Parse { field, .. } => assert_eq!(field, "drivers.training"),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_scenario("[growth]\nlambda = 1.5\n").unwrap_err();
        assert!(err.to_string().contains("growth.lambda"), "{err}");
        let err = parse_scenario("horizon_years = 0\n").unwrap_err();
        assert!(err.to_string().contains("horizon_years"), "{err}");
        let err = parse_scenario("[caps]\ninference_total = 0.1\n").unwrap_err();
        assert!(err.to_string().contains("caps.inference_total"), "{err}");
    }

    #[test]
    fn unknown_keys_and_type_mismatch() {
        let err = parse_scenario("name = \"x\"\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = parse_scenario("[drivers]\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = parse_scenario("\n\n[drivers]\ntraining = \"fast\"\n").unwrap_err();
        match err {
            ScenarioError::Parse { line, .. } => assert_eq!(line, Some(4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn presets_round_trip() {
        for p in Preset::ALL {
            let s = Scenario::from_preset(p);
            let text = serialize_scenario(&s);
            assert_eq!(parse_scenario(&text).unwrap(), s, "{text}");
        }
    }

    #[test]
    fn custom_name_starts_from_default_path() {
        let s = parse_scenario("name = \"mine\"\nparity_at_start = true\n").unwrap();
        assert_eq!(s.spec.rates, DriverRates::ONES);
        assert!(s.spec.parity_at_start);
        assert_eq!(s.growth, GrowthParams::default());
    }
}
