use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use takeoff_core::drivers::{scenario_projection, scenario_table, TableKind};
use takeoff_core::growth::{
    frontload_path, simulate_constant_growth, solve_required_growth, steady_state_growth,
    GrowthParams, SolverOptions, DEFAULT_STEP,
};
use takeoff_core::industry::{
    compound_growth, learning_cost_ratio, lead_ratio, replicator_doubling_time, robot_returns,
    LeadRatioParams, LearningCurve, ReplicatorParams, RobotEconomics,
};
use takeoff_core::limits::{
    crustal_resource, energy_headroom, equilibrium_temperature, fleet_volume, probe_fleet_energy,
    solar_capture, storage_capacity, warming, PhysicalConstants, SolarReference, ThermalScenario,
};
use takeoff_core::scenario::{parse_scenario, parse_sweep, run_scenario, sig3, sweep, ScenarioError};
use takeoff_core::verify::{verify, VerifyOptions};
use takeoff_core::ModelError;

const EXIT_INPUT: u8 = 1;
const EXIT_NO_CONVERGENCE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "takeoff", version, about = "Growth-model toolkit for AI-accelerated research")]
struct Cli {
    /// Integration step in years.
    #[arg(long, global = true, default_value_t = DEFAULT_STEP)]
    step: f64,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Copy)]
struct GrowthArgs {
    #[arg(long, default_value_t = 0.0125)]
    alpha: f64,
    #[arg(long, default_value_t = 0.75)]
    lambda: f64,
    #[arg(long, default_value_t = 2.4)]
    beta: f64,
}

impl GrowthArgs {
    fn params(&self) -> GrowthParams {
        GrowthParams {
            alpha: self.alpha,
            lambda: self.lambda,
            beta: self.beta,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Steady-state TFP growth for a given effort growth rate.
    SteadyState {
        #[command(flatten)]
        growth: GrowthArgs,
        /// Continuous growth rate of research effort.
        #[arg(long, default_value_t = 0.04)]
        effort_growth: f64,
    },
    /// Integrate a scenario file.
    Simulate { file: PathBuf },
    /// Constant effort growth needed for N years of progress in H years.
    Solve {
        #[arg(long)]
        target_years: f64,
        #[arg(long)]
        horizon: f64,
        #[command(flatten)]
        growth: GrowthArgs,
    },
    /// Scenario tables with stated and recomputed figures.
    Tables {
        #[arg(value_parser = ["pre-parity", "post-parity"])]
        which: Option<String>,
    },
    /// Physical-limit calculators.
    Limits {
        #[command(subcommand)]
        calculator: LimitsCalc,
    },
    /// Industrial-growth calculators.
    Industry {
        #[command(subcommand)]
        calculator: IndustryCalc,
    },
    /// Parameter sweep over a scenario template.
    Sweep { file: PathBuf },
    /// Recompute every headline figure and report pass/fail.
    Verify {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum LimitsCalc {
    /// Warming from non-solar heat dissipated at the surface.
    Warming {
        /// Extra flux as a fraction of the reference solar flux.
        #[arg(long, default_value_t = 0.5)]
        fraction: f64,
        #[arg(long, value_enum, default_value_t = Reference::Absorbed)]
        reference: Reference,
    },
    /// Kinetic energy of a relativistic probe fleet.
    Probes {
        #[arg(long, default_value_t = 1e10)]
        count: f64,
        #[arg(long, default_value_t = 1.0)]
        mass_kg: f64,
        #[arg(long, default_value_t = 0.99)]
        speed: f64,
    },
    /// Solar power from an ocean-surface area and its copper requirement.
    Solar {
        /// Defaults to 2% of the ocean surface.
        #[arg(long)]
        area_km2: Option<f64>,
        #[arg(long, default_value_t = 500.0)]
        flux: f64,
        #[arg(long, default_value_t = 5.5)]
        copper_t_per_mw: f64,
    },
    /// Recoverable crustal stock of an element.
    Crust {
        #[arg(long, default_value_t = 6e-5)]
        abundance: f64,
        #[arg(long, default_value_t = 0.15)]
        recoverable: f64,
        #[arg(long, default_value_t = 2e10)]
        requirement_t: f64,
    },
    /// DNA-density data storage.
    Storage {
        #[arg(long, default_value_t = 2.0)]
        grams: f64,
        #[arg(long, default_value_t = 1e21)]
        bits_per_gram: f64,
        #[arg(long, default_value_t = 1e14)]
        bytes_per_brain: f64,
    },
    /// Volume of a fleet of small drones against an enclosure.
    Fleet {
        #[arg(long, default_value_t = 1e10)]
        count: f64,
        #[arg(long, default_value_t = 16.0)]
        unit_cm3: f64,
        #[arg(long, num_args = 3, default_values_t = [76.0, 180.0, 19.0])]
        enclosure_m: Vec<f64>,
    },
    /// Multiple of current energy use from captured sunlight.
    Headroom {
        #[arg(long, default_value_t = 1.9e13)]
        current_w: f64,
        #[arg(long, default_value_t = 0.001)]
        capture: f64,
        #[arg(long, default_value_t = 0.1)]
        efficiency: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Reference {
    Absorbed,
    Incident,
}

#[derive(Subcommand, Debug)]
enum IndustryCalc {
    /// Experience-curve cost ratio.
    Learning {
        #[arg(long, default_value_t = 0.2)]
        rate: f64,
        #[arg(long, default_value_t = 1e5)]
        multiplier: f64,
    },
    /// Doubling time of a self-replicating factory stock.
    Replicator {
        #[arg(long, default_value_t = 2.0)]
        period: f64,
        #[arg(long, default_value_t = 0.75)]
        fraction: f64,
    },
    /// Return and payback of a general-purpose robot.
    Robot {
        #[arg(long, default_value_t = 100e3)]
        unit_cost: f64,
        #[arg(long, default_value_t = 50e3)]
        salary: f64,
        #[arg(long, default_value_t = 5.0)]
        hours_multiple: f64,
        #[arg(long, default_value_t = 25e3)]
        operating_cost: f64,
    },
    /// Lead ratio of two economies on a super-exponential curve.
    Lead {
        #[arg(long, default_value_t = 2.0)]
        n: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Compound growth multiplier.
    Compound {
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        years: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    NoConvergence(String),
    VerifyFailed(String),
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::NoConvergence { .. } => CliError::NoConvergence(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Model(m) => m.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Named quantities rendered as `name: value unit` or CSV.
#[derive(Default)]
struct Quantities(Vec<(String, f64, &'static str)>, Vec<String>);

impl Quantities {
    fn push(&mut self, name: &str, value: f64, unit: &'static str) -> &mut Self {
        self.0.push((name.to_string(), value, unit));
        self
    }

    fn note(&mut self, note: String) -> &mut Self {
        self.1.push(note);
        self
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str("quantity,value,unit\n");
                for (name, value, unit) in &self.0 {
                    out.push_str(&format!("{name},{value},{unit}\n"));
                }
            }
            Format::Text => {
                for (name, value, unit) in &self.0 {
                    out.push_str(&format!("{name}: {} {unit}\n", sig3(*value)));
                }
                for note in &self.1 {
                    out.push_str(&format!("note: {note}\n"));
                }
            }
        }
        out
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let text = cli.format.unwrap_or(Format::Text);
    match &cli.command {
        Command::SteadyState {
            growth,
            effort_growth,
        } => {
            let g = steady_state_growth(&growth.params(), *effort_growth)?;
            let mut q = Quantities::default();
            q.push("effort_growth", *effort_growth, "/yr")
                .push("tfp_growth", g, "/yr");
            Ok(q.render(text))
        }
        Command::Simulate { file } => {
            let scenario = parse_scenario(&read(file)?)?;
            let result = run_scenario(&scenario, cli.step)?;
            Ok(match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => result.csv(),
                Format::Text => result.report(),
            })
        }
        Command::Solve {
            target_years,
            horizon,
            growth,
        } => {
            let params = growth.params();
            let opts = SolverOptions {
                step: cli.step,
                ..SolverOptions::default()
            };
            let g = solve_required_growth(&params, *target_years, *horizon, &opts)?;
            let a = simulate_constant_growth(&params, g, *horizon, cli.step)?;
            let front = frontload_path(&params, *target_years / *horizon, *horizon).ok();
            let mut q = Quantities::default();
            q.push("required_effort_growth", g, "/yr")
                .push("effort_multiplier_per_year", 1.0 + g, "x")
                .push("total_effort_increase", (1.0 + g).powf(*horizon), "x")
                .push("tfp_multiplier", a, "x");
            if let Some(f) = front {
                q.push("frontload_jump", f.jump, "x")
                    .push("frontload_total_increase", f.total_increase, "x")
                    .push("frontload_mean_growth", f.mean_growth, "/yr");
            }
            q.note("S(t) = (1 + g)^t from S0 = A0 = 1; target A = 1.0125^target_years".into());
            Ok(q.render(text))
        }
        Command::Tables { which } => {
            let kinds = match which.as_deref() {
                Some(w) => vec![w.parse::<TableKind>()?],
                None => vec![TableKind::PreParity, TableKind::PostParity],
            };
            Ok(render_tables(&kinds, text)?)
        }
        Command::Limits { calculator } => Ok(limits(calculator)?.render(text)),
        Command::Industry { calculator } => Ok(industry(calculator)?.render(text)),
        Command::Sweep { file } => {
            let (grid, template) = parse_sweep(&read(file)?)?;
            let table = sweep(&grid, &template, cli.step)?;
            Ok(match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => table.csv(),
                Format::Text => {
                    let mut out = String::new();
                    for row in &table.rows {
                        for (path, v) in table.paths.iter().zip(&row.values) {
                            out.push_str(&format!("{path}={v} "));
                        }
                        out.push_str(&format!(
                            "tfp={} years={}\n",
                            sig3(row.tfp_multiplier),
                            sig3(row.years_of_progress)
                        ));
                    }
                    out
                }
            })
        }
        Command::Verify {
            filter,
            lambda,
            beta,
        } => {
            let mut params = GrowthParams::default();
            if let Some(l) = lambda {
                params.lambda = *l;
            }
            if let Some(b) = beta {
                params.beta = *b;
            }
            params.validate()?;
            let report = verify(&VerifyOptions {
                params,
                filter: filter.clone(),
                step: cli.step,
            });
            let table = report.table();
            if report.all_passed() {
                Ok(table)
            } else {
                Err(CliError::VerifyFailed(table))
            }
        }
    }
}

fn render_tables(kinds: &[TableKind], format: Format) -> Result<String, CliError> {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("table,scenario,driver,stated_rate,stated_total,rate_pow_10,projected_total\n");
    }
    for &kind in kinds {
        let label = match kind {
            TableKind::PreParity => "pre-parity",
            TableKind::PostParity => "post-parity",
        };
        if format == Format::Text {
            out.push_str(&format!("== {label} ==\n"));
        }
        for col in scenario_table(kind) {
            let projection = scenario_projection(&col.preset.spec())?;
            let projected = [
                projection.training.total,
                projection.algorithmic.total,
                projection.inference_compute.total,
            ];
            match format {
                Format::Csv => {
                    for (row, proj) in col.rows.iter().zip(projected) {
                        out.push_str(&format!(
                            "{label},{},{},{},{},{},{}\n",
                            col.preset,
                            row.driver,
                            row.stated_rate,
                            row.stated_total.map(|t| t.to_string()).unwrap_or_default(),
                            row.compounded,
                            proj
                        ));
                    }
                    out.push_str(&format!(
                        "{label},{},AI research effort,{},{},{},{}\n",
                        col.preset,
                        col.stated_effort_rate,
                        col.stated_effort_total.map(|t| t.to_string()).unwrap_or_default(),
                        col.stated_effort_rate.powi(10),
                        projection.effort_total
                    ));
                }
                Format::Text => {
                    out.push_str(&format!("{}\n", col.preset));
                    for (row, proj) in col.rows.iter().zip(projected) {
                        out.push_str(&format!(
                            "  {:<24}{:>6}x/yr  stated total {:>10}  rate^10 {:>10}  capped {:>10}\n",
                            row.driver,
                            row.stated_rate,
                            row.stated_total.map(sig3).unwrap_or_else(|| "-".into()),
                            sig3(row.compounded),
                            sig3(proj)
                        ));
                    }
                    out.push_str(&format!(
                        "  {:<24}{:>6}x/yr  stated total {:>10}  capped {:>10} ({}x/yr)\n",
                        "AI research effort",
                        col.stated_effort_rate,
                        col.stated_effort_total.map(sig3).unwrap_or_else(|| "-".into()),
                        sig3(projection.effort_total),
                        sig3(projection.average_annual)
                    ));
                    out.push_str(&format!(
                        "  AI vs human effort growth: {}x faster (stated >= {}x)\n",
                        sig3(col.relative_speed),
                        col.stated_relative_speed
                    ));
                    if col.relative_speed < col.stated_relative_speed {
                        out.push_str(&format!(
                            "  note: (m - 1) / 4% gives {}, below the stated {}x; the stated figure is rounded up\n",
                            sig3(col.relative_speed),
                            col.stated_relative_speed
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn limits(calc: &LimitsCalc) -> Result<Quantities, CliError> {
    let k = PhysicalConstants::default();
    let mut q = Quantities::default();
    match *calc {
        LimitsCalc::Warming {
            fraction,
            reference,
        } => {
            let reference = match reference {
                Reference::Absorbed => SolarReference::Absorbed,
                Reference::Incident => SolarReference::Incident,
            };
            let scenario = ThermalScenario::fraction_of_solar(&k, fraction, reference);
            q.push("extra_flux", scenario.extra_flux, "W/m^2")
                .push("baseline_temperature", equilibrium_temperature(&k, &ThermalScenario::none())?, "K")
                .push("temperature", equilibrium_temperature(&k, &scenario)?, "K")
                .push("warming", warming(&k, &scenario)?, "K");
        }
        LimitsCalc::Probes {
            count,
            mass_kg,
            speed,
        } => {
            let e = probe_fleet_energy(&k, count, mass_kg, speed)?;
            q.push("energy", e.joules, "J")
                .push("solar_output_equivalent", e.solar_seconds, "s");
        }
        LimitsCalc::Solar {
            area_km2,
            flux,
            copper_t_per_mw,
        } => {
            let area = area_km2.unwrap_or(0.02 * k.earth_ocean_area);
            let s = solar_capture(area, flux, copper_t_per_mw)?;
            q.push("area", area, "km^2")
                .push("power", s.power_mw, "MW")
                .push("copper", s.copper_tonnes, "t");
        }
        LimitsCalc::Crust {
            abundance,
            recoverable,
            requirement_t,
        } => {
            let total = crustal_resource(k.crust_mass, abundance, 1.0, requirement_t)?;
            let r = crustal_resource(k.crust_mass, abundance, recoverable, requirement_t)?;
            q.push("crustal_stock", total.tonnes, "t")
                .push("recoverable_stock", r.tonnes, "t")
                .push("requirement", r.requirement_tonnes, "t")
                .push("sufficient", f64::from(u8::from(r.sufficient)), "");
            let stated = 132e12;
            q.note(format!(
                "crust mass x abundance gives {} t, {}x the commonly quoted 132 trillion t; \
                 15% of either figure covers a 2e10 t requirement",
                sig3(total.tonnes),
                sig3(total.tonnes / stated)
            ));
        }
        LimitsCalc::Storage {
            grams,
            bits_per_gram,
            bytes_per_brain,
        } => {
            let s = storage_capacity(grams, bits_per_gram, bytes_per_brain)?;
            q.push("bits", s.bits, "bit")
                .push("capacity", s.exabytes, "EB")
                .push("brains", s.brains, "");
        }
        LimitsCalc::Fleet {
            count,
            unit_cm3,
            ref enclosure_m,
        } => {
            let dims = [enclosure_m[0], enclosure_m[1], enclosure_m[2]];
            let f = fleet_volume(count, unit_cm3, dims)?;
            q.push("fleet_volume", f.fleet_m3, "m^3")
                .push("enclosure_volume", f.enclosure_m3, "m^3")
                .push("fits", f64::from(u8::from(f.fits)), "");
        }
        LimitsCalc::Headroom {
            current_w,
            capture,
            efficiency,
        } => {
            q.push("multiplier", energy_headroom(&k, current_w, capture, efficiency)?, "x");
        }
    }
    Ok(q)
}

fn industry(calc: &IndustryCalc) -> Result<Quantities, CliError> {
    let mut q = Quantities::default();
    match *calc {
        IndustryCalc::Learning { rate, multiplier } => {
            let r = learning_cost_ratio(&LearningCurve::new(rate)?, multiplier)?;
            q.push("doublings", multiplier.log2(), "")
                .push("cost_ratio", r, "")
                .push("cost_decline", 1.0 - r, "");
        }
        IndustryCalc::Replicator { period, fraction } => {
            let p = ReplicatorParams {
                production_period: period,
                reinvest_fraction: fraction,
            };
            q.push("growth_per_period", p.growth_per_period(), "x")
                .push("doubling_time", replicator_doubling_time(&p)?, "yr");
        }
        IndustryCalc::Robot {
            unit_cost,
            salary,
            hours_multiple,
            operating_cost,
        } => {
            let r = robot_returns(&RobotEconomics {
                unit_cost,
                replaced_salary: salary,
                hours_multiple,
                operating_cost,
            })?;
            q.push("annual_return", r.annual_return, "/yr");
            match r.payback_months {
                Some(m) => {
                    q.push("payback", m, "months");
                }
                None => {
                    q.note("no payback: net income is not positive".into());
                }
            }
        }
        IndustryCalc::Lead { n, c, t } => {
            let r = lead_ratio(&LeadRatioParams {
                exponent_n: n,
                lead_c: c,
                time_t: t,
            })?;
            q.push("ratio", r, "x");
        }
        IndustryCalc::Compound { rate, years } => {
            q.push("multiplier", compound_growth(rate, years)?, "x");
        }
    }
    Ok(q)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (output, code) = match run(&cli) {
        Ok(out) => (out, 0),
        Err(CliError::VerifyFailed(table)) => (table, EXIT_VERIFY_FAILED),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INPUT);
        }
        Err(CliError::NoConvergence(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_NO_CONVERGENCE);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, output) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT);
            }
        }
        None => {
            let mut stdout = io::stdout().lock();
            if let Err(e) = stdout.write_all(output.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INPUT);
                }
            }
        }
    }
    ExitCode::from(code)
}
