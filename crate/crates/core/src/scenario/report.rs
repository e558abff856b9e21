use std::fmt::Write as _;

use super::ScenarioRun;
use crate::drivers::CappedGrowth;
use crate::growth::Trajectory;

/// Formats a value to three significant digits.
pub fn sig3(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..6).contains(&mag) {
        let decimals = (2 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.2e}")
    }
}

pub const CSV_HEADER: &str =
    "year,effort_human,effort_ai,effort_total,tech_level,growth_rate,equiv_years";

/// Plot-ready CSV with one row per grid point.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(traj.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..traj.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            traj.times[i],
            traj.effort_human[i],
            traj.effort_ai[i],
            traj.effort_total[i],
            traj.tech_level[i],
            traj.growth_rate[i],
            traj.equiv_years[i]
        );
    }
    out
}

fn capped(label: &str, g: &CappedGrowth, out: &mut String) {
    let _ = write!(out, "  {label:<24}{:>12}x", sig3(g.total));
    match g.cap_reached_at {
        Some(t) => {
            let _ = writeln!(out, "  (cap reached at {} yr)", sig3(t));
        }
        None => out.push('\n'),
    }
}

impl ScenarioRun {
    pub fn csv(&self) -> String {
        trajectory_csv(&self.trajectory)
    }

    /// Human-readable summary.
    pub fn report(&self) -> String {
        let spec = &self.scenario.spec;
        let g = &self.scenario.growth;
        let s = &self.summary;
        let p = &self.projection;
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", spec.name);
        let _ = writeln!(out, "horizon: {} years", sig3(spec.horizon_years));
        let _ = writeln!(
            out,
            "growth: alpha = {}, lambda = {}, beta = {}{}",
            g.alpha,
            g.lambda,
            g.beta,
            self.scenario
                .gamma
                .map(|gm| format!(", gamma = {gm}"))
                .unwrap_or_default()
        );
        out.push_str("convention:\n");
        let _ = writeln!(
            out,
            "  S(t) = (1 + {})^t + S_ai(0) * {}^t, S_human(0) = 1, S_ai(0) = {}",
            spec.human_growth,
            sig3(s.ai_growth),
            if spec.parity_at_start { "1 (parity)" } else { "0" }
        );
        let _ = writeln!(
            out,
            "  dA/dt = alpha * S^lambda * A^(1 - beta), A(0) = 1, fixed-step RK4, step {} yr",
            s.step
        );
        out.push_str("  years of progress = ln(A(T)/A(0)) / ln(1.0125)\n");
        out.push_str("driver totals:\n");
        capped("training compute", &p.training, &mut out);
        capped("algorithmic efficiency", &p.algorithmic, &mut out);
        capped("inference compute", &p.inference_compute, &mut out);
        let _ = writeln!(out, "  {:<24}{:>12}x", "post-training", sig3(p.post_training_total));
        let _ = writeln!(
            out,
            "  {:<24}{:>12}x  ({}x/yr average)",
            "AI research effort",
            sig3(p.effort_total),
            sig3(p.average_annual)
        );
        let _ = writeln!(out, "AI effort growth: {}x/yr", sig3(s.ai_growth));
        if let Some(speed) = s.relative_speed {
            let _ = writeln!(out, "AI vs human effort growth: {}x faster", sig3(speed));
        }
        let _ = writeln!(out, "TFP multiplier: {}x", sig3(s.tfp_multiplier));
        let _ = writeln!(out, "years of progress: {}", sig3(s.years_of_progress));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_significant_digits() {
        assert_eq!(sig3(314.93), "315");
        assert_eq!(sig3(32.789), "32.8");
        assert_eq!(sig3(1.0125), "1.01");
        assert_eq!(sig3(0.0246), "0.0246");
        assert_eq!(sig3(1e11), "1.00e11");
        assert_eq!(sig3(0.0), "0");
    }
}
