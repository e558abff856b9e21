use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn takeoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_takeoff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn steady_state_default() {
    let o = takeoff(&["steady-state"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tfp_growth: 0.0125"));
}

#[test]
fn simulate_csv_is_deterministic() {
    let path = scenario("conservative.toml");
    let a = takeoff(&["simulate", path.to_str().unwrap()]);
    let b = takeoff(&["simulate", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("year,"));
    assert_eq!(text.lines().count(), 1 + 1001);
}

#[test]
fn simulate_text_report_names_convention() {
    let path = scenario("conservative.toml");
    let o = takeoff(&["simulate", "--format", "text", path.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("convention:"));
    assert!(text.contains("TFP multiplier: 32.8x"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ss.csv");
    let o = takeoff(&["steady-state", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("quantity,value,unit\n"));
}

#[test]
fn bad_scenario_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "horizon_years = 10\n[growth]\nlamda = 0.5\n").unwrap();
    let o = takeoff(&["simulate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lamda"));

    std::fs::write(&path, "[growth]\nbeta = -1\n").unwrap();
    let o = takeoff(&["simulate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("growth.beta"));
}

#[test]
fn missing_file_and_bad_usage_exit_one() {
    assert_eq!(takeoff(&["simulate", "/nonexistent.toml"]).status.code(), Some(1));
    assert_eq!(takeoff(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(takeoff(&["solve", "--horizon", "10"]).status.code(), Some(1));
}

#[test]
fn unreachable_target_is_non_convergence() {
    let o = takeoff(&["solve", "--target-years", "100000", "--horizon", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_reports_growth() {
    let o = takeoff(&["solve", "--target-years", "50", "--horizon", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("required_effort_growth"));
}

#[test]
fn tables_flag_rounded_speed() {
    let o = takeoff(&["tables", "pre-parity"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("275x faster"));
    assert!(text.contains("1225x faster"));
}

#[test]
fn limits_and_industry_calculators() {
    let o = takeoff(&["limits", "probes"]);
    assert!(stdout(&o).contains("solar_output_equivalent: 14.3 s"));
    let o = takeoff(&["limits", "warming", "--reference", "incident"]);
    assert!(stdout(&o).contains("warming: 36.7 K"));
    let o = takeoff(&["industry", "replicator"]);
    assert!(stdout(&o).contains("doubling_time: 2.48 yr"));
    let o = takeoff(&["industry", "compound", "--rate", "1", "--years", "10"]);
    assert!(stdout(&o).contains("multiplier: 1024 x"));
    let o = takeoff(&["limits", "probes", "--speed", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_file_runs() {
    let path = scenario("lambda-beta-sweep.toml");
    let o = takeoff(&["sweep", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 3 * 5 * 3);
}

#[test]
fn verify_filter_passes_and_perturbation_fails() {
    let o = takeoff(&["verify", "--filter", "warming"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = takeoff(&["verify", "--filter", "steady-state", "--beta", "2.0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}
