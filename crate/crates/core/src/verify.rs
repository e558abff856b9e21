//! Self-verification: recomputes every headline figure and compares it with
//! the published value at a per-check tolerance.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::drivers::{
    ai_effort_growth, effective_compute_growth, relative_speed, scenario_projection, DriverRates,
    Preset,
};
use crate::growth::{
    cognitive_boost_factor, frontload_path, instantaneous_growth, integrate_trajectory,
    log_ideas_growth, simulate_constant_growth, solve_required_growth, steady_state_growth,
    GrowthParams, LogIdeasParams, ResearcherSchedule, SolverOptions, DEFAULT_STEP,
};
use crate::industry::{
    learning_cost_ratio, lead_ratio, replicator_doubling_time, robot_returns, LeadRatioParams,
    LearningCurve, ReplicatorParams, RobotEconomics,
};
use crate::limits::{
    equilibrium_temperature, fleet_volume, probe_fleet_energy, warming, PhysicalConstants,
    SolarReference, ThermalScenario,
};
use crate::scenario::{parse_scenario, run_scenario, serialize_scenario, Scenario};

/// Acceptance band for a check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Bound {
    /// `|computed - expected| <= tol`
    Abs(f64),
    /// `|computed - expected| <= tol * |expected|`
    Rel(f64),
    /// `lo <= computed <= hi`
    Range(f64, f64),
    /// `computed >= expected`
    AtLeast,
    /// `computed < expected`
    Below,
}

impl Bound {
    pub fn admits(&self, computed: f64, expected: f64) -> bool {
        match *self {
            Bound::Abs(tol) => (computed - expected).abs() <= tol,
            Bound::Rel(tol) => (computed - expected).abs() <= tol * expected.abs(),
            Bound::Range(lo, hi) => (lo..=hi).contains(&computed),
            Bound::AtLeast => computed >= expected,
            Bound::Below => computed < expected,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Abs(t) => write!(f, "±{t:e}"),
            Bound::Rel(t) => write!(f, "rel {t:e}"),
            Bound::Range(lo, hi) => write!(f, "[{lo}, {hi}]"),
            Bound::AtLeast => f.write_str(">="),
            Bound::Below => f.write_str("<"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub group: &'static str,
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    fn new(criterion: u8, group: &'static str, name: &str, computed: f64, expected: f64, bound: Bound) -> Self {
        Self {
            criterion,
            group,
            name: name.to_string(),
            computed,
            expected,
            bound,
            passed: bound.admits(computed, expected),
        }
    }

    fn flag(criterion: u8, group: &'static str, name: &str, ok: bool) -> Self {
        Self::new(criterion, group, name, f64::from(u8::from(ok)), 1.0, Bound::Abs(0.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub params: GrowthParams,
    /// Substring matched against group and check names; empty selects everything.
    pub filter: Option<String>,
    pub step: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            params: GrowthParams::default(),
            filter: None,
            step: DEFAULT_STEP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<4}{:<22}{:<44}{:>16}{:>16}  {:<16}verdict",
            "#", "group", "check", "computed", "expected", "tolerance"
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<4}{:<22}{:<44}{:>16}{:>16}  {:<16}{}",
                c.criterion,
                c.group,
                c.name,
                format_value(c.computed),
                format_value(c.expected),
                c.bound.to_string(),
                if c.passed { "PASS" } else { "FAIL" }
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        );
        out
    }
}

fn format_value(x: f64) -> String {
    if x != 0.0 && (x.abs() >= 1e6 || x.abs() < 1e-3) {
        format!("{x:.6e}")
    } else {
        format!("{x:.6}")
    }
}

type Group = fn(&VerifyOptions) -> Vec<Check>;

/// Check groups in report order.
pub const GROUPS: [(&str, Group); 16] = [
    ("steady-state", steady_state),
    ("required-growth", required_growth),
    ("frontload", frontload),
    ("conservative-decade", conservative_decade),
    ("log-ideas", log_ideas),
    ("cobb-douglas", cobb_douglas),
    ("driver-arithmetic", driver_arithmetic),
    ("decade-totals", decade_totals),
    ("learning-curve", learning_curve),
    ("replicator", replicator),
    ("robot-economics", robot_economics),
    ("lead-ratio", lead),
    ("warming", thermal),
    ("probe-fleet", probe_fleet),
    ("drone-volume", drone_volume),
    ("properties", properties),
];

pub fn verify(options: &VerifyOptions) -> VerifyReport {
    let filter = options.filter.as_deref().unwrap_or("");
    let mut checks = Vec::new();
    for (group, run) in GROUPS {
        let group_matches = group.contains(filter);
        for check in run(options) {
            if group_matches || check.name.contains(filter) {
                checks.push(check);
            }
        }
    }
    VerifyReport { checks }
}

fn steady_state(o: &VerifyOptions) -> Vec<Check> {
    let g = steady_state_growth(&o.params, 0.04).unwrap_or(f64::NAN);
    vec![Check::new(1, "steady-state", "g_A at 4% effort growth", g, 0.0125, Bound::Abs(1e-12))]
}

fn required_growth(o: &VerifyOptions) -> Vec<Check> {
    let opts = SolverOptions {
        step: o.step,
        ..SolverOptions::default()
    };
    let target = 1.0125f64.powi(100);
    let (g, residual) = match solve_required_growth(&o.params, 100.0, 10.0, &opts) {
        Ok(g) => {
            let a = simulate_constant_growth(&o.params, g, 10.0, o.step).unwrap_or(f64::NAN);
            (g, ((a - target) / target).abs())
        }
        Err(_) => (f64::NAN, f64::NAN),
    };
    vec![
        Check::new(2, "required-growth", "effort growth for 100 yr in 10", g, 1.0, Bound::Range(0.85, 1.15)),
        Check::new(2, "required-growth", "forward-simulation residual", residual, 1e-6, Bound::Below),
    ]
}

fn frontload(o: &VerifyOptions) -> Vec<Check> {
    let path = frontload_path(&o.params, 10.0, 10.0).ok();
    let get = |f: fn(&crate::growth::FrontloadPath) -> f64| path.as_ref().map(f).unwrap_or(f64::NAN);
    vec![
        Check::new(3, "frontload", "jump 10^(1/lambda)", get(|p| p.jump), 21.54, Bound::Abs(0.01)),
        Check::new(3, "frontload", "total effort increase", get(|p| p.total_increase), 620.0, Bound::Range(600.0, 640.0)),
        Check::new(3, "frontload", "geometric-mean effort growth", get(|p| p.mean_growth), 0.90, Bound::Range(0.88, 0.92)),
    ]
}

fn conservative_run(o: &VerifyOptions) -> Option<crate::scenario::ScenarioRun> {
    let mut scenario = Scenario::from_preset(Preset::ConservativePostParity);
    scenario.growth = o.params;
    run_scenario(&scenario, o.step).ok()
}

fn conservative_decade(o: &VerifyOptions) -> Vec<Check> {
    let run = conservative_run(o);
    let tfp = run.as_ref().map_or(f64::NAN, |r| r.summary.tfp_multiplier);
    let years = run.as_ref().map_or(f64::NAN, |r| r.summary.years_of_progress);
    let recorded = run
        .as_ref()
        .is_some_and(|r| r.report().contains("convention:") && r.report().contains("parity"));
    vec![
        Check::new(4, "conservative-decade", "TFP multiplier", tfp, 50.0, Bound::Range(30.0, 70.0)),
        Check::new(4, "conservative-decade", "equivalent years", years, 280.0, Bound::AtLeast),
        Check::flag(4, "conservative-decade", "convention recorded in report", recorded),
    ]
}

fn log_ideas(_: &VerifyOptions) -> Vec<Check> {
    let g = LogIdeasParams::calibrated(0.015, 0.75)
        .and_then(|p| log_ideas_growth(&p, 1e7))
        .unwrap_or(f64::NAN);
    vec![Check::new(5, "log-ideas", "g_A with S x 1e7", g, 0.196, Bound::Abs(0.001))]
}

fn cobb_douglas(o: &VerifyOptions) -> Vec<Check> {
    let b = cognitive_boost_factor(o.params.lambda, 0.7, 10.0).unwrap_or(f64::NAN);
    vec![Check::new(6, "cobb-douglas", "extra cognitive factor", b, 3.73, Bound::Abs(0.01))]
}

fn driver_arithmetic(_: &VerifyOptions) -> Vec<Check> {
    let c = DriverRates::CURRENT;
    let speed = |m: f64| relative_speed(m, 0.04).unwrap_or(f64::NAN);
    let conservative = ai_effort_growth(&Preset::ConservativePostParity.spec().rates);
    let rapid = effective_compute_growth(&Preset::Rapid.spec().rates, false)
        * Preset::Rapid.spec().rates.inference_compute;
    let g = "driver-arithmetic";
    vec![
        Check::new(7, g, "effective compute growth", effective_compute_growth(&c, false), 13.5, Bound::Abs(1e-12)),
        Check::new(7, g, "with post-training", effective_compute_growth(&c, true), 40.5, Bound::Abs(1e-12)),
        Check::new(7, g, "AI population growth", ai_effort_growth(&c), 25.0, Bound::Abs(1e-12)),
        Check::new(7, g, "relative speed, current", speed(ai_effort_growth(&c)), 600.0, Bound::Abs(1e-9)),
        Check::new(7, g, "relative speed, conservative", speed(conservative), 100.0, Bound::Abs(1e-9)),
        Check::new(7, g, "relative speed, rapid", speed(rapid), 1225.0, Bound::Abs(1e-9)),
        Check::new(7, g, "rapid speed vs stated >=1000x", speed(rapid), 1000.0, Bound::AtLeast),
    ]
}

fn decade_totals(_: &VerifyOptions) -> Vec<Check> {
    let scaling = scenario_projection(&Preset::ScalingLimits.spec())
        .map(|p| p.effort_total)
        .unwrap_or(f64::NAN);
    let g = "decade-totals";
    vec![
        Check::new(8, g, "scaling-limits product", scaling, 1e11, Bound::Abs(0.0)),
        Check::new(8, g, "2.5^10 vs 10,000x", 2.5f64.powi(10), 1e4, Bound::Rel(0.1)),
        Check::new(8, g, "2^10 vs 1,000x", 2f64.powi(10), 1e3, Bound::Rel(0.1)),
        Check::new(8, g, "5^10 vs 10^7x", 5f64.powi(10), 1e7, Bound::Rel(0.1)),
        Check::new(8, g, "50^10 vs 10^17x", 50f64.powi(10), 1e17, Bound::Rel(0.1)),
    ]
}

fn learning_curve(_: &VerifyOptions) -> Vec<Check> {
    let r = LearningCurve::new(0.2)
        .and_then(|c| learning_cost_ratio(&c, 1e5))
        .unwrap_or(f64::NAN);
    vec![Check::new(9, "learning-curve", "cost ratio at 1e5x production", r, 0.0246, Bound::Abs(0.0005))]
}

fn replicator(_: &VerifyOptions) -> Vec<Check> {
    let t = replicator_doubling_time(&ReplicatorParams {
        production_period: 2.0,
        reinvest_fraction: 0.75,
    })
    .unwrap_or(f64::NAN);
    vec![Check::new(10, "replicator", "doubling time, years", t, 2.48, Bound::Abs(0.02))]
}

fn robot_economics(_: &VerifyOptions) -> Vec<Check> {
    let r = robot_returns(&RobotEconomics {
        unit_cost: 100e3,
        replaced_salary: 50e3,
        hours_multiple: 5.0,
        operating_cost: 25e3,
    })
    .ok();
    let ret = r.map_or(f64::NAN, |r| r.annual_return);
    let payback = r.and_then(|r| r.payback_months).unwrap_or(f64::INFINITY);
    vec![
        Check::new(11, "robot-economics", "annual return", ret, 2.0, Bound::AtLeast),
        Check::new(11, "robot-economics", "payback, months", payback, 6.0, Bound::Below),
    ]
}

fn lead(_: &VerifyOptions) -> Vec<Check> {
    let at = |t| {
        lead_ratio(&LeadRatioParams {
            exponent_n: 2.0,
            lead_c: 1.0,
            time_t: t,
        })
        .unwrap_or(f64::NAN)
    };
    vec![
        Check::new(12, "lead-ratio", "R(1), n=2 c=1", at(1.0), 3f64.exp(), Bound::Rel(1e-9)),
        Check::new(12, "lead-ratio", "R(2), n=2 c=1", at(2.0), 5f64.exp(), Bound::Rel(1e-9)),
    ]
}

fn thermal(_: &VerifyOptions) -> Vec<Check> {
    let k = PhysicalConstants::default();
    let scenario = ThermalScenario::fraction_of_solar(&k, 0.5, SolarReference::Absorbed);
    let dt = warming(&k, &scenario).unwrap_or(f64::NAN);
    // Direct evaluation with literal constants.
    let absorbed: f64 = 1361.0 * 0.7 / 4.0;
    let direct = (1.5 * absorbed / 5.670e-8).powf(0.25) - (absorbed / 5.670e-8).powf(0.25);
    let t_hot = equilibrium_temperature(&k, &scenario).unwrap_or(f64::NAN);
    vec![
        Check::new(13, "warming", "warming at half absorbed solar, K", dt, 25.0, Bound::Abs(3.0)),
        Check::new(13, "warming", "agrees with direct evaluation", dt, direct, Bound::Rel(1e-12)),
        Check::new(13, "warming", "hot-state temperature, K", t_hot, (1.5 * absorbed / 5.670e-8).powf(0.25), Bound::Rel(1e-12)),
    ]
}

fn probe_fleet(_: &VerifyOptions) -> Vec<Check> {
    let k = PhysicalConstants::default();
    let e = probe_fleet_energy(&k, 1e10, 1.0, 0.99).ok();
    let seconds = e.map_or(f64::NAN, |e| e.solar_seconds);
    let gamma = 1.0 / (1.0 - 0.99f64 * 0.99).sqrt();
    let direct = 1e10 * (gamma - 1.0) * 2.998e8f64.powi(2) / 3.828e26;
    vec![
        Check::new(14, "probe-fleet", "seconds of solar output", seconds, 60.0, Bound::Below),
        Check::new(14, "probe-fleet", "agrees with direct evaluation", seconds, direct, Bound::Rel(1e-9)),
    ]
}

fn drone_volume(_: &VerifyOptions) -> Vec<Check> {
    let f = fleet_volume(1e10, 16.0, [76.0, 180.0, 19.0]).ok();
    let fleet = f.map_or(f64::NAN, |f| f.fleet_m3);
    let hangar = f.map_or(f64::NAN, |f| f.enclosure_m3);
    vec![
        Check::new(15, "drone-volume", "fleet volume, m^3", fleet, 1.6e5, Bound::Rel(1e-12)),
        Check::new(15, "drone-volume", "hangar volume, m^3", hangar, 2.6e5, Bound::Rel(0.01)),
        Check::new(15, "drone-volume", "fleet fits in hangar", fleet, hangar, Bound::Below),
    ]
}

/// Maximum relative error of the integrator against `exact` over `[0, horizon]`.
fn max_rel_error(
    params: &GrowthParams,
    schedule: &ResearcherSchedule,
    horizon: f64,
    step: f64,
    exact: impl Fn(f64) -> f64,
) -> f64 {
    match integrate_trajectory(params, schedule, horizon, step) {
        Ok(traj) => traj
            .times
            .iter()
            .zip(&traj.tech_level)
            .map(|(&t, &a)| ((a - exact(t)) / exact(t)).abs())
            .fold(0.0, f64::max),
        Err(_) => f64::NAN,
    }
}

/// Steady-state tracking error at `g_S = 0.4` with `α` on the steady state.
pub fn steady_state_tracking_error(params: &GrowthParams, step: f64) -> f64 {
    let g_s = 0.4;
    let g_a = params.lambda * g_s / params.beta;
    let calibrated = GrowthParams {
        alpha: g_a,
        ..*params
    };
    max_rel_error(&calibrated, &ResearcherSchedule::continuous(g_s), 10.0, step, |t| {
        (g_a * t).exp()
    })
}

fn properties(o: &VerifyOptions) -> Vec<Check> {
    let g = "properties";
    let p = o.params;
    let mut checks = Vec::new();

    let constant = max_rel_error(&p, &ResearcherSchedule::constant(1.0), 100.0, o.step, |t| {
        (1.0 + p.beta * p.alpha * t).powf(1.0 / p.beta)
    });
    checks.push(Check::new(16, g, "integrator vs constant-effort closed form", constant, 1e-8, Bound::Below));

    let g_a = p.lambda * 0.04 / p.beta;
    let steady = GrowthParams { alpha: g_a, ..p };
    let tracking = max_rel_error(&steady, &ResearcherSchedule::continuous(0.04), 100.0, o.step, |t| {
        (g_a * t).exp()
    });
    checks.push(Check::new(16, g, "integrator vs steady-state closed form", tracking, 1e-8, Bound::Below));

    let coarse = steady_state_tracking_error(&p, 1.0);
    let fine = steady_state_tracking_error(&p, 0.5);
    checks.push(Check::new(16, g, "error ratio on step halving", coarse / fine, 8.0, Bound::AtLeast));

    let opts = SolverOptions {
        step: o.step,
        ..SolverOptions::default()
    };
    let roundtrip = solve_required_growth(&p, 50.0, 10.0, &opts)
        .and_then(|rate| simulate_constant_growth(&p, rate, 10.0, o.step))
        .map(|a| (a / 1.0125f64.powi(50) - 1.0).abs())
        .unwrap_or(f64::NAN);
    checks.push(Check::new(16, g, "solver roundtrip, 50 yr in 10", roundtrip, 1e-6, Bound::Below));

    checks.push(Check::flag(16, g, "monotonicity battery", monotone_battery(&p)));

    let round_trip = Preset::ALL.iter().all(|&preset| {
        let s = Scenario::from_preset(preset);
        parse_scenario(&serialize_scenario(&s)).is_ok_and(|back| back == s)
    });
    checks.push(Check::flag(16, g, "parse/serialize round trip", round_trip));

    let first = conservative_run(o).map(|r| (r.csv(), r.report()));
    let second = conservative_run(o).map(|r| (r.csv(), r.report()));
    checks.push(Check::flag(16, g, "byte-identical outputs", first.is_some() && first == second));
    checks
}

fn monotone_battery(p: &GrowthParams) -> bool {
    let grid = [0.1, 0.5, 1.0, 2.0, 10.0, 1e3, 1e6];
    let growth = |s, a| instantaneous_growth(p, s, a).unwrap_or(f64::NAN);
    let in_effort = grid
        .iter()
        .all(|&a| grid.windows(2).all(|w| growth(w[1], a) > growth(w[0], a)));
    let in_tech = grid
        .iter()
        .all(|&s| grid.windows(2).all(|w| growth(s, w[1]) < growth(s, w[0])));

    let k = PhysicalConstants::default();
    let temps: Vec<f64> = [0.0, 10.0, 100.0, 1000.0]
        .iter()
        .map(|&f| equilibrium_temperature(&k, &ThermalScenario { extra_flux: f }).unwrap_or(f64::NAN))
        .collect();
    let hotter = temps.windows(2).all(|w| w[1] > w[0]);

    let speeds = [0.0, 0.1, 0.5, 0.9, 0.99];
    let energies: Vec<f64> = speeds
        .iter()
        .map(|&b| probe_fleet_energy(&k, 1.0, 1.0, b).map_or(f64::NAN, |e| e.joules))
        .collect();
    let faster = energies.windows(2).all(|w| w[1] > w[0]);

    in_effort && in_tech && hotter && faster
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_group() {
        let report = verify(&VerifyOptions {
            filter: Some("lead-ratio".into()),
            ..Default::default()
        });
        assert_eq!(report.checks.len(), 2);
        assert!(report.all_passed());
    }

    #[test]
    fn empty_filter_runs_everything_in_order() {
        let a = verify(&VerifyOptions {
            filter: Some(String::new()),
            ..Default::default()
        });
        let b = verify(&VerifyOptions::default());
        assert_eq!(a, b);
        let order: Vec<u8> = a.checks.iter().map(|c| c.criterion).collect();
        assert!(order.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*order.last().unwrap(), 16);
    }

    #[test]
    fn perturbed_beta_fails_steady_state() {
        let opts = VerifyOptions {
            params: GrowthParams {
                beta: 3.1,
                ..Default::default()
            },
            filter: Some("steady-state".into()),
            ..Default::default()
        };
        let report = verify(&opts);
        assert!(!report.all_passed());
        let full = verify(&VerifyOptions {
            filter: None,
            ..opts
        });
        // Parameter-free checks are unaffected.
        for c in full.checks.iter().filter(|c| (5..=15).contains(&c.criterion) && c.criterion != 6) {
            assert!(c.passed, "{c:?}");
        }
        let tfp = full.checks.iter().find(|c| c.name == "TFP multiplier").unwrap();
        assert!(tfp.computed < 32.0);
    }

    #[test]
    fn bounds() {
        assert!(Bound::Range(1.0, 2.0).admits(1.5, 0.0));
        assert!(!Bound::Below.admits(2.0, 2.0));
        assert!(Bound::AtLeast.admits(2.0, 2.0));
        assert!(!Bound::Abs(0.1).admits(f64::NAN, 1.0));
    }
}
