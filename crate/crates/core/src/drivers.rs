//! AI research effort as a product of growth drivers.
//!
//! Every annual figure here is a multiplier (`4.5` means 4.5x per year).
//! Cumulative growth of a capped driver is `min(rate^t, cap)`: it compounds
//! continuously until it reaches its headroom cap at `t* = ln(cap)/ln(rate)`
//! and holds there.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, require_positive, ModelError, Result};
use crate::growth::{EffortComponent, ResearcherSchedule};

/// Annual multipliers of the five effort drivers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriverRates {
    #[serde(rename = "training")]
    pub training_compute: f64,
    #[serde(rename = "algorithmic")]
    pub algorithmic_efficiency: f64,
    pub post_training: f64,
    pub inference_compute: f64,
    pub inference_efficiency: f64,
}

impl DriverRates {
    pub const ONES: Self = Self {
        training_compute: 1.0,
        algorithmic_efficiency: 1.0,
        post_training: 1.0,
        inference_compute: 1.0,
        inference_efficiency: 1.0,
    };

    /// Current trends: 4.5x training compute, 3x algorithmic efficiency,
    /// 3x post-training, 2.5x inference compute, 10x inference cost decline.
    pub const CURRENT: Self = Self {
        training_compute: 4.5,
        algorithmic_efficiency: 3.0,
        post_training: 3.0,
        inference_compute: 2.5,
        inference_efficiency: 10.0,
    };

    pub fn fields(&self) -> [(&'static str, f64); 5] {
        [
            ("training", self.training_compute),
            ("algorithmic", self.algorithmic_efficiency),
            ("post_training", self.post_training),
            ("inference_compute", self.inference_compute),
            ("inference_efficiency", self.inference_efficiency),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.fields() {
            if !(value >= 1.0 && value.is_finite()) {
                return Err(ModelError::invalid(
                    driver_field(name),
                    format!("annual multiplier must be >= 1, got {value}"),
                ));
            }
        }
        Ok(())
    }
}

fn driver_field(name: &str) -> &'static str {
    match name {
        "training" => "drivers.training",
        "algorithmic" => "drivers.algorithmic",
        "post_training" => "drivers.post_training",
        "inference_compute" => "drivers.inference_compute",
        _ => "drivers.inference_efficiency",
    }
}

/// Maximum cumulative multipliers before physical limits bind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeadroomCaps {
    pub training_total: f64,
    pub algorithmic_total: f64,
    pub inference_total: f64,
}

impl HeadroomCaps {
    pub const UNBOUNDED: Self = Self {
        training_total: f64::INFINITY,
        algorithmic_total: f64::INFINITY,
        inference_total: f64::INFINITY,
    };

    pub fn for_mode(mode: FeedbackMode) -> Self {
        Self {
            training_total: 1e4,
            algorithmic_total: match mode {
                FeedbackMode::None => 1e3,
                FeedbackMode::Software => 1e9,
            },
            inference_total: 1e4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("caps.training_total", self.training_total),
            ("caps.algorithmic_total", self.algorithmic_total),
            ("caps.inference_total", self.inference_total),
        ] {
            require_at_least(name, value, 1.0)?;
        }
        Ok(())
    }
}

impl Default for HeadroomCaps {
    fn default() -> Self {
        Self::for_mode(FeedbackMode::None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FeedbackMode {
    #[default]
    None,
    Software,
}

impl fmt::Display for FeedbackMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeedbackMode::None => "none",
            FeedbackMode::Software => "software",
        })
    }
}

/// A named effort-growth scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSpec {
    pub name: String,
    pub horizon_years: f64,
    pub rates: DriverRates,
    pub caps: HeadroomCaps,
    /// Annual growth of human research effort (0.04 = 4%/yr).
    pub human_growth: f64,
    pub feedback_mode: FeedbackMode,
    /// AI effort equals human effort at `t = 0`.
    pub parity_at_start: bool,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        require_at_least("horizon_years", self.horizon_years, 0.0)?;
        if !self.horizon_years.is_finite() {
            return Err(ModelError::invalid("horizon_years", "must be finite"));
        }
        self.rates.validate()?;
        self.caps.validate()?;
        require_at_least("human_growth", self.human_growth, 0.0)?;
        Ok(())
    }

    pub fn preset(preset: Preset) -> Self {
        preset.spec()
    }
}

/// Named scenario presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum Preset {
    DefaultPath,
    Current,
    Moderate,
    Rapid,
    ScalingLimits,
    ConservativePostParity,
    AggressivePostParity,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::DefaultPath,
        Preset::Current,
        Preset::Moderate,
        Preset::Rapid,
        Preset::ScalingLimits,
        Preset::ConservativePostParity,
        Preset::AggressivePostParity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::DefaultPath => "default-path",
            Preset::Current => "current",
            Preset::Moderate => "moderate",
            Preset::Rapid => "rapid",
            Preset::ScalingLimits => "scaling-limits",
            Preset::ConservativePostParity => "conservative-post-parity",
            Preset::AggressivePostParity => "aggressive-post-parity",
        }
    }

    pub fn spec(&self) -> ScenarioSpec {
        let base = ScenarioSpec {
            name: self.name().to_string(),
            horizon_years: 10.0,
            rates: DriverRates::ONES,
            caps: HeadroomCaps::default(),
            human_growth: 0.04,
            feedback_mode: FeedbackMode::None,
            parity_at_start: false,
        };
        let rates = |t, a, p, ic, ie| DriverRates {
            training_compute: t,
            algorithmic_efficiency: a,
            post_training: p,
            inference_compute: ic,
            inference_efficiency: ie,
        };
        match self {
            Preset::DefaultPath => base,
            Preset::Current => ScenarioSpec {
                rates: DriverRates::CURRENT,
                ..base
            },
            Preset::Moderate => ScenarioSpec {
                rates: rates(2.5, 2.0, 1.0, 2.5, 5.0),
                ..base
            },
            Preset::Rapid => ScenarioSpec {
                rates: rates(2.5, 8.0, 1.0, 2.5, 20.0),
                caps: HeadroomCaps::for_mode(FeedbackMode::Software),
                feedback_mode: FeedbackMode::Software,
                ..base
            },
            // Current training and algorithmic trends run into their caps;
            // inference compute grows just fast enough (~2.51x) to reach its
            // 10,000x cap at the end of the decade.
            Preset::ScalingLimits => ScenarioSpec {
                rates: rates(4.5, 3.0, 1.0, 1e4f64.powf(0.1), 13.5),
                ..base
            },
            Preset::ConservativePostParity => ScenarioSpec {
                rates: rates(1.0, 2.5, 1.0, 2.0, 2.5),
                caps: HeadroomCaps::UNBOUNDED,
                parity_at_start: true,
                ..base
            },
            Preset::AggressivePostParity => ScenarioSpec {
                rates: rates(2.0, 5.0, 1.0, 2.5, 10.0),
                caps: HeadroomCaps::UNBOUNDED,
                feedback_mode: FeedbackMode::Software,
                parity_at_start: true,
                ..base
            },
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<Preset> for &'static str {
    fn from(p: Preset) -> Self {
        p.name()
    }
}

impl FromStr for Preset {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| ModelError::invalid("preset", format!("unknown preset `{s}`")))
    }
}

/// Effective training compute growth: training compute times algorithmic
/// efficiency, times post-training enhancements when requested.
pub fn effective_compute_growth(rates: &DriverRates, include_post_training: bool) -> f64 {
    let base = rates.training_compute * rates.algorithmic_efficiency;
    if include_post_training {
        base * rates.post_training
    } else {
        base
    }
}

/// Growth of the AI researcher population: inference efficiency times inference compute.
pub fn ai_effort_growth(rates: &DriverRates) -> f64 {
    rates.inference_efficiency * rates.inference_compute
}

/// How many times faster AI effort grows than human effort, comparing
/// percentage growth: `(m - 1) / g_human`.
pub fn relative_speed(ai_annual_multiplier: f64, human_growth: f64) -> Result<f64> {
    require_at_least("ai_annual_multiplier", ai_annual_multiplier, 1.0)?;
    require_positive("human_growth", human_growth)?;
    Ok((ai_annual_multiplier - 1.0) / human_growth)
}

/// Runtime efficiency bought by a training-efficiency multiplier: a model
/// `X` times cheaper to run costs `X^2` more training, so the gain is `sqrt`.
pub fn inference_efficiency_from_training(effective_training_multiplier: f64) -> Result<f64> {
    require_at_least("effective_training_multiplier", effective_training_multiplier, 1.0)?;
    Ok(effective_training_multiplier.sqrt())
}

/// Cumulative multiplier of one driver after `years`, and when it hit its cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CappedGrowth {
    pub total: f64,
    pub cap_reached_at: Option<f64>,
}

/// `min(rate^t, cap)` with continuous clipping.
pub fn capped_growth(rate: f64, cap: f64, years: f64) -> CappedGrowth {
    if years <= 0.0 || rate <= 1.0 {
        return CappedGrowth {
            total: 1.0,
            cap_reached_at: (cap <= 1.0).then_some(0.0),
        };
    }
    if cap.is_infinite() {
        return CappedGrowth {
            total: rate.powf(years),
            cap_reached_at: None,
        };
    }
    let hit = cap.ln() / rate.ln();
    // Relative slack absorbs rounding when the rate was chosen to land on the cap.
    if hit <= years * (1.0 + 1e-12) {
        CappedGrowth {
            total: cap,
            cap_reached_at: Some(hit.min(years)),
        }
    } else {
        CappedGrowth {
            total: rate.powf(years),
            cap_reached_at: None,
        }
    }
}

/// Decade-style totals for a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriverProjection {
    pub horizon_years: f64,
    pub training: CappedGrowth,
    pub algorithmic: CappedGrowth,
    pub inference_compute: CappedGrowth,
    pub post_training_total: f64,
    /// Effective training compute, which sets inference efficiency.
    pub effective_compute_total: f64,
    /// AI research effort: effective compute times inference compute.
    pub effort_total: f64,
    /// `effort_total^(1/horizon)`, or 1 for a zero horizon.
    pub average_annual: f64,
}

pub fn scenario_projection(spec: &ScenarioSpec) -> Result<DriverProjection> {
    spec.validate()?;
    let years = spec.horizon_years;
    let training = capped_growth(spec.rates.training_compute, spec.caps.training_total, years);
    let algorithmic =
        capped_growth(spec.rates.algorithmic_efficiency, spec.caps.algorithmic_total, years);
    let inference_compute =
        capped_growth(spec.rates.inference_compute, spec.caps.inference_total, years);
    let post_training_total = if years > 0.0 {
        spec.rates.post_training.powf(years)
    } else {
        1.0
    };
    let effective_compute_total = training.total * algorithmic.total;
    let effort_total = effective_compute_total * inference_compute.total;
    let average_annual = if years > 0.0 {
        effort_total.powf(1.0 / years)
    } else {
        1.0
    };
    Ok(DriverProjection {
        horizon_years: years,
        training,
        algorithmic,
        inference_compute,
        post_training_total,
        effective_compute_total,
        effort_total,
        average_annual,
    })
}

/// Human-plus-AI effort schedule with `S_human(0) = 1`.
///
/// At parity AI effort starts equal to human effort, doubling the total;
/// otherwise it starts at zero.
pub fn effort_schedule(spec: &ScenarioSpec) -> Result<ResearcherSchedule> {
    spec.validate()?;
    let human = EffortComponent::new(1.0, 1.0 + spec.human_growth);
    let ai = EffortComponent::new(
        if spec.parity_at_start { 1.0 } else { 0.0 },
        ai_effort_growth(&spec.rates),
    );
    Ok(ResearcherSchedule::new(human, ai))
}

/// Range of effective-compute growth between two models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComputeRange {
    pub low: f64,
    pub high: f64,
}

pub fn effective_compute_bridge(
    raw_compute_ratio: f64,
    algo_low: f64,
    algo_high: f64,
    post_training_multiplier: f64,
) -> Result<ComputeRange> {
    require_at_least("raw_compute_ratio", raw_compute_ratio, 1.0)?;
    require_at_least("algo_low", algo_low, 1.0)?;
    require_at_least("algo_high", algo_high, algo_low)?;
    require_at_least("post_training_multiplier", post_training_multiplier, 1.0)?;
    Ok(ComputeRange {
        low: raw_compute_ratio * algo_low * post_training_multiplier,
        high: raw_compute_ratio * algo_high * post_training_multiplier,
    })
}

/// Years until the task horizon grows from `start` to `target` hours at a
/// fixed doubling time.
pub fn task_horizon_extrapolation(doubling_months: f64, start_hours: f64, target_hours: f64) -> Result<f64> {
    require_positive("doubling_months", doubling_months)?;
    require_positive("start_hours", start_hours)?;
    require_at_least("target_hours", target_hours, start_hours)?;
    Ok(doubling_months / 12.0 * (target_hours / start_hours).log2())
}

/// Row of a scenario table as stated alongside what the rates imply.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub driver: &'static str,
    pub stated_rate: f64,
    pub stated_total: Option<f64>,
    /// `rate^horizon`, ignoring caps.
    pub compounded: f64,
}

/// One column of a scenario table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableColumn {
    pub preset: Preset,
    pub rows: Vec<TableRow>,
    /// The AI research effort row as stated.
    pub stated_effort_rate: f64,
    pub stated_effort_total: Option<f64>,
    pub relative_speed: f64,
    /// Lower bound the table gives for the relative speed.
    pub stated_relative_speed: f64,
}

fn row(driver: &'static str, rate: f64, total: Option<f64>, horizon: f64) -> TableRow {
    TableRow {
        driver,
        stated_rate: rate,
        stated_total: total,
        compounded: rate.powf(horizon),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    PreParity,
    PostParity,
}

impl FromStr for TableKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pre-parity" => Ok(TableKind::PreParity),
            "post-parity" => Ok(TableKind::PostParity),
            other => Err(ModelError::invalid("table", format!("unknown table `{other}`"))),
        }
    }
}

/// The coming-decade and post-parity scenario tables.
pub fn scenario_table(kind: TableKind) -> Vec<TableColumn> {
    let h = 10.0;
    let column = |preset, rows, effort: f64, effort_total, stated_speed| TableColumn {
        preset,
        rows,
        stated_effort_rate: effort,
        stated_effort_total: effort_total,
        relative_speed: (effort - 1.0) / 0.04,
        stated_relative_speed: stated_speed,
    };
    match kind {
        TableKind::PreParity => vec![
            column(
                Preset::Current,
                vec![
                    row("training compute", 4.5, None, h),
                    row("algorithmic efficiency", 3.0, None, h),
                    row("inference compute", 2.5, None, h),
                ],
                25.0,
                None,
                600.0,
            ),
            column(
                Preset::Moderate,
                vec![
                    row("training compute", 2.5, Some(1e4), h),
                    row("algorithmic efficiency", 2.0, Some(1e3), h),
                    row("inference compute", 2.5, Some(1e4), h),
                ],
                12.0,
                Some(1e11),
                300.0,
            ),
            column(
                Preset::Rapid,
                vec![
                    row("training compute", 2.5, None, h),
                    row("algorithmic efficiency", 8.0, Some(1e9), h),
                    row("inference compute", 2.5, Some(1e4), h),
                ],
                50.0,
                Some(1e17),
                1000.0,
            ),
        ],
        TableKind::PostParity => vec![
            column(
                Preset::ConservativePostParity,
                vec![
                    row("training compute", 1.0, None, h),
                    row("algorithmic efficiency", 2.5, Some(1e4), h),
                    row("inference compute", 2.0, Some(1e3), h),
                ],
                5.0,
                Some(1e7),
                100.0,
            ),
            column(
                Preset::AggressivePostParity,
                vec![
                    row("training compute", 2.0, Some(1e3), h),
                    row("algorithmic efficiency", 5.0, Some(1e7), h),
                    row("inference compute", 2.5, Some(1e4), h),
                ],
                25.0,
                Some(1e14),
                600.0,
            ),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn effective_compute_examples() {
        let c = DriverRates::CURRENT;
        assert_eq!(effective_compute_growth(&c, false), 13.5);
        assert_eq!(effective_compute_growth(&c, true), 40.5);
        assert_eq!(effective_compute_growth(&DriverRates::ONES, true), 1.0);
    }

    #[test]
    fn ai_effort_examples() {
        assert_eq!(ai_effort_growth(&DriverRates::CURRENT), 25.0);
        let conservative = Preset::ConservativePostParity.spec().rates;
        assert_eq!(ai_effort_growth(&conservative), 5.0);
        assert_eq!(ai_effort_growth(&DriverRates::ONES), 1.0);
    }

    #[test]
    fn relative_speed_examples() {
        assert!((relative_speed(25.0, 0.04).unwrap() - 600.0).abs() < 1e-9);
        assert!((relative_speed(5.0, 0.04).unwrap() - 100.0).abs() < 1e-9);
        assert!((relative_speed(1.04, 0.04).unwrap() - 1.0).abs() < 1e-9);
        assert!((relative_speed(12.0, 0.04).unwrap() - 275.0).abs() < 1e-9);
        assert!(relative_speed(2.0, 0.0).is_err());
    }

    #[test]
    fn scaling_limits_hits_every_cap() {
        let p = scenario_projection(&Preset::ScalingLimits.spec()).unwrap();
        assert_eq!(p.effort_total, 1e11);
        assert!((p.average_annual - 12.59).abs() < 0.01);
        assert!(p.training.cap_reached_at.unwrap() < 7.0);
        assert!(p.inference_compute.cap_reached_at.is_some());
    }

    #[test]
    fn rapid_projection_near_table() {
        let p = scenario_projection(&Preset::Rapid.spec()).unwrap();
        assert_eq!(p.algorithmic.total, 1e9);
        assert!(rel(p.effort_total, 1e17) < 0.1, "{}", p.effort_total);
        assert!(p.average_annual > 49.0);
    }

    #[test]
    fn zero_horizon_projection() {
        let spec = ScenarioSpec {
            horizon_years: 0.0,
            ..Preset::Rapid.spec()
        };
        let p = scenario_projection(&spec).unwrap();
        assert_eq!(p.effort_total, 1.0);
        assert_eq!(p.average_annual, 1.0);
        assert_eq!(p.training.total, 1.0);
    }

    #[test]
    fn training_inference_trade_off() {
        assert_eq!(inference_efficiency_from_training(4.0).unwrap(), 2.0);
        assert_eq!(inference_efficiency_from_training(1.0).unwrap(), 1.0);
        assert_eq!(inference_efficiency_from_training(100.0).unwrap(), 10.0);
        assert!(inference_efficiency_from_training(0.5).is_err());
    }

    #[test]
    fn effort_schedule_examples() {
        let s = effort_schedule(&Preset::ConservativePostParity.spec()).unwrap();
        assert!((s.human_at(10.0) - 1.48).abs() < 0.01);
        assert!(rel(s.ai_at(10.0), 9.765625e6) < 1e-12);
        assert!(rel(s.total_at(10.0), 9.77e6) < 1e-3);

        let symmetric = ScenarioSpec {
            rates: DriverRates {
                inference_efficiency: 1.04,
                ..DriverRates::ONES
            },
            parity_at_start: true,
            ..Preset::DefaultPath.spec()
        };
        let s = effort_schedule(&symmetric).unwrap();
        for t in [0.0, 2.5, 10.0] {
            assert!(rel(s.total_at(t), 2.0 * 1.04f64.powf(t)) < 1e-12);
        }
    }

    #[test]
    fn bridge_examples() {
        let raw = 2.1e25 / 1.9e21;
        let r = effective_compute_bridge(raw, 5.0, 50.0, 1.0).unwrap();
        assert!(r.low > 5e4 && r.low < 6e4);
        assert!(r.high > 5e5 && r.high < 6e5);
        assert!(r.low >= 1e4 && r.high <= 1e6);
        let r = effective_compute_bridge(raw, 5.0, 50.0, 20.0).unwrap();
        assert!((r.high.log10() - 7.0).abs() < 0.5);
        let r = effective_compute_bridge(raw, 1.0, 1.0, 1.0).unwrap();
        assert_eq!((r.low, r.high), (raw, raw));
    }

    #[test]
    fn task_horizon_examples() {
        let y = task_horizon_extrapolation(7.0, 1.0, 167.0).unwrap();
        assert!((3.0..=6.0).contains(&y));
        assert!((y - 4.307).abs() < 1e-3);
        assert_eq!(task_horizon_extrapolation(7.0, 3.0, 3.0).unwrap(), 0.0);
        assert!((task_horizon_extrapolation(7.0, 1.0, 2.0).unwrap() - 7.0 / 12.0).abs() < 1e-15);
        assert!(task_horizon_extrapolation(7.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn presets_round_trip_by_name() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
            p.spec().validate().unwrap();
        }
        assert!("nope".parse::<Preset>().is_err());
    }

    #[test]
    fn table_totals_within_ten_percent() {
        for kind in [TableKind::PreParity, TableKind::PostParity] {
            for col in scenario_table(kind) {
                for row in &col.rows {
                    if let Some(total) = row.stated_total {
                        assert!(rel(row.compounded, total) <= 0.1, "{} {:?}", row.driver, col.preset);
                    }
                }
            }
        }
    }
}
