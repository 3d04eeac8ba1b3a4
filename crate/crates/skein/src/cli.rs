//! Command-line interface: argument parsing, subcommand dispatch, artifact
//! emission, and the exit-code contract.
//!
//! Exit codes: 0 success, 1 usage (bad flags or a missing config file),
//! 2 config (unparseable or invalid configuration), 3 runtime (solver,
//! numerics, or artifact IO). Artifacts for one invocation land under
//! `<out>/<subcommand>-<run-id>/` where the run id is a digest of the
//! subcommand, the raw config bytes, and the overrides, so repeated
//! identical invocations rewrite identical files.

use crate::analysis::{formation_ratios, solo_baselines, UpwashLocus, METRICS_CSV_HEADER};
use crate::artifacts::{run_id, write_atomic};
use crate::config::{ConfigError, ConfigFile};
use crate::solver::solve_case;
use crate::spacing::{
    hummel_optimal_wts, munk_stagger_report, optimize_spacing, SpacingAxis, SpacingError,
    SpacingOutcome, StaggerReport,
};
use crate::sweeps::{run_sweep, write_plot_data, write_results, SweepError};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "skein",
    version,
    about = "Vortex-lattice formation-flight studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one formation case and report per-wing forces and ratios.
    Solve(RunArgs),
    /// Run one parameter across a list of values.
    Sweep(RunArgs),
    /// Search a separation axis for the maximum power saving.
    Optimize(RunArgs),
    /// Tabulate wake-plane drag across streamwise offsets.
    StaggerCheck(RunArgs),
    /// Parse and check a config without solving anything.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Path to the TOML config file.
    #[arg(long)]
    config: PathBuf,
    /// Directory run artifacts are written beneath.
    #[arg(long, default_value = "runs")]
    out: PathBuf,
    /// Config override as key=value; repeatable, applied in order.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Worker count ceiling. Case execution is sequential regardless, so
    /// artifacts never depend on scheduling; the flag caps future use.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Path to the TOML config file, or '-' to read standard input.
    #[arg(long)]
    config: PathBuf,
    /// Config override as key=value; repeatable, applied in order.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

const EXIT_USAGE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

/// Parse `argv` and run the selected subcommand to completion.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = err.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let _ = err.print();
                    ExitCode::from(EXIT_USAGE)
                }
            }
        }
    };
    let outcome = match &cli.command {
        Command::Solve(args) => execute(args, "solve", emit_solve),
        Command::Sweep(args) => execute(args, "sweep", emit_sweep),
        Command::Optimize(args) => execute(args, "optimize", emit_optimize),
        Command::StaggerCheck(args) => execute(args, "stagger-check", emit_stagger),
        Command::Validate(args) => validate(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit)
        }
    }
}

struct Failure {
    exit: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(err: ConfigError) -> Self {
        Failure {
            exit: EXIT_CONFIG,
            message: err.to_string(),
        }
    }
}

impl From<SweepError> for Failure {
    fn from(err: SweepError) -> Self {
        let exit = match err {
            SweepError::Invalid { .. } => EXIT_CONFIG,
            _ => EXIT_RUNTIME,
        };
        Failure {
            exit,
            message: err.to_string(),
        }
    }
}

impl From<SpacingError> for Failure {
    fn from(err: SpacingError) -> Self {
        let exit = match err {
            SpacingError::InvalidStudy { .. }
            | SpacingError::NonPositiveSpan { .. }
            | SpacingError::NoTrailingWing => EXIT_CONFIG,
            SpacingError::Probe { .. } | SpacingError::Metrics { .. } => EXIT_RUNTIME,
        };
        Failure {
            exit,
            message: err.to_string(),
        }
    }
}

fn load_config(path: &Path, overrides: &[String]) -> Result<(ConfigFile, Vec<u8>), Failure> {
    let bytes = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        if !path.exists() {
            return Err(Failure::usage(format!(
                "config file {} does not exist",
                path.display()
            )));
        }
        std::fs::read(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?
    };
    let text = std::str::from_utf8(&bytes).map_err(|_| Failure {
        exit: EXIT_CONFIG,
        message: "config is not UTF-8".to_string(),
    })?;
    let mut config = ConfigFile::parse(text)?;
    config.apply_overrides(overrides)?;
    Ok((config, bytes))
}

fn validate(args: &ValidateArgs) -> Result<(), Failure> {
    let (config, _) = load_config(&args.config, &args.set)?;
    config.validate()?;
    let layout = config.layout()?;
    println!(
        "ok: {} wing{} valid",
        layout.wings.len(),
        if layout.wings.len() == 1 { "" } else { "s" }
    );
    Ok(())
}

fn execute(
    args: &RunArgs,
    subcommand: &'static str,
    emit: fn(&RunArgs, &ConfigFile, &Path) -> Result<(), Failure>,
) -> Result<(), Failure> {
    if args.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let (config, bytes) = load_config(&args.config, &args.set)?;
    config.validate()?;
    let id = run_id(subcommand, &bytes, &args.set);
    let dir = args.out.join(format!("{subcommand}-{id}"));
    emit(args, &config, &dir)?;
    println!("artifacts: {}", dir.display());
    Ok(())
}

/// Fixed-point with at most 6 significant digits; the solver cannot support
/// more in printed summaries.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..=5).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn emit_solve(_args: &RunArgs, config: &ConfigFile, dir: &Path) -> Result<(), Failure> {
    let layout = config.layout()?;
    let cond = config.flight()?;
    let settings = config.solver()?;
    let baselines = solo_baselines(&layout, &cond, &settings)
        .map_err(|e| Failure::runtime(e.to_string()))?;
    let solution =
        solve_case(&layout, &cond, &settings).map_err(|e| Failure::runtime(e.to_string()))?;
    let metrics = formation_ratios(
        &solution,
        &layout,
        &baselines,
        &cond,
        &settings,
        UpwashLocus::default(),
    )
    .map_err(|e| Failure::runtime(e.to_string()))?;

    let mut csv = String::from(METRICS_CSV_HEADER);
    csv.push('\n');
    for wing in &metrics.wings {
        csv.push_str(&wing.csv_row("solve"));
        csv.push('\n');
    }
    write_atomic(&dir.join("metrics.csv"), csv.as_str())
        .map_err(|e| Failure::runtime(e.to_string()))?;
    let meta = json!({
        "layout": layout,
        "flight": cond,
        "solver": settings,
        "code_version": env!("CARGO_PKG_VERSION"),
    });
    let mut text = serde_json::to_string_pretty(&meta).expect("meta serializes");
    text.push('\n');
    write_atomic(&dir.join("meta.json"), text.as_str())
        .map_err(|e| Failure::runtime(e.to_string()))?;

    println!(
        "flight: V = {} m/s, rho = {} kg/m^3, alpha = {} deg",
        sig6(cond.v_inf),
        sig6(cond.rho),
        sig6(cond.alpha_deg)
    );
    println!(
        "{:<10} {:<15} {:>10} {:>10} {:>9} {:>9} {:>11} {:>8} {:>8}",
        "wing", "role", "lift N", "drag N", "L/L_solo", "D/D_solo", "dAlpha deg", "%dDrag", "%dPower"
    );
    for w in &metrics.wings {
        println!(
            "{:<10} {:<15} {:>10} {:>10} {:>9} {:>9} {:>11} {:>8} {:>8}",
            w.wing_id,
            w.role.label(),
            sig6(w.lift),
            sig6(w.induced_drag),
            sig6(w.lift_ratio),
            sig6(w.drag_ratio),
            sig6(w.delta_alpha.to_degrees()),
            sig6(100.0 * w.pct_drag_reduction),
            sig6(100.0 * w.pct_power_reduction),
        );
    }
    if let Some(avg) = metrics.average_trailing_power_reduction() {
        println!("average trailing power reduction: {}%", sig6(100.0 * avg));
    }
    Ok(())
}

fn emit_sweep(_args: &RunArgs, config: &ConfigFile, dir: &Path) -> Result<(), Failure> {
    let spec = config.sweep_spec()?;
    let result = run_sweep(&spec)?;
    write_results(&result, &spec, dir)?;
    write_plot_data(&result, dir)?;
    println!(
        "swept {} across {} value{}",
        spec.parameter.label(),
        result.cases.len(),
        if result.cases.len() == 1 { "" } else { "s" }
    );
    for case in &result.cases {
        match case.metrics.average_trailing_power_reduction() {
            Some(avg) => println!(
                "  {}: average trailing power reduction {}%",
                case.case_id,
                sig6(100.0 * avg)
            ),
            None => println!("  {}: no trailing wings", case.case_id),
        }
    }
    Ok(())
}

fn emit_optimize(_args: &RunArgs, config: &ConfigFile, dir: &Path) -> Result<(), Failure> {
    let study = config.study()?;
    let outcome = optimize_spacing(&study)?;
    write_trace(&outcome, &study, dir)?;
    println!(
        "optimum {} = {} m, objective = {}% ({} evaluations{})",
        study.axis.label(),
        sig6(outcome.optimum),
        sig6(100.0 * outcome.objective),
        outcome.evaluations,
        if outcome.multimodal {
            ", multimodal pre-scan: best grid point reported"
        } else {
            ""
        }
    );
    if study.axis == SpacingAxis::WingTipSpacing {
        let span = study.layout.leader().spec.span;
        if let Ok(rule) = hummel_optimal_wts(span) {
            println!(
                "tip-overlap rule of thumb for span {} m: overlap {} m (signed gap {} m)",
                sig6(span),
                sig6(rule.overlap_magnitude),
                sig6(rule.gap)
            );
        }
    }
    Ok(())
}

fn write_trace(
    outcome: &SpacingOutcome,
    study: &crate::spacing::SpacingStudy,
    dir: &Path,
) -> Result<(), Failure> {
    let mut csv = String::from("value,objective\n");
    for point in &outcome.trace {
        csv.push_str(&format!("{:.5e},{:.5e}\n", point.value, point.objective));
    }
    write_atomic(&dir.join("trace.csv"), csv.as_str())
        .map_err(|e| Failure::runtime(e.to_string()))?;
    let meta = json!({
        "spec": study,
        "optimum": outcome.optimum,
        "objective": outcome.objective,
        "multimodal": outcome.multimodal,
        "evaluations": outcome.evaluations,
        "code_version": env!("CARGO_PKG_VERSION"),
    });
    let mut text = serde_json::to_string_pretty(&meta).expect("meta serializes");
    text.push('\n');
    write_atomic(&dir.join("meta.json"), text.as_str())
        .map_err(|e| Failure::runtime(e.to_string()))
}

fn emit_stagger(_args: &RunArgs, config: &ConfigFile, dir: &Path) -> Result<(), Failure> {
    let (offsets, mode) = config.stagger()?;
    let layout = config.layout()?;
    let cond = config.flight()?;
    let settings = config.solver()?;
    let report = munk_stagger_report(&layout, &offsets, mode, &cond, &settings)?;
    write_stagger(&report, dir)?;
    println!("mode: {:?}", report.mode);
    for row in &report.rows {
        let wings: Vec<String> = row
            .per_wing
            .iter()
            .map(|(id, d)| format!("{id} {}", sig6(*d)))
            .collect();
        println!(
            "offset {} m: total {} N ({})",
            sig6(row.offset),
            sig6(row.total),
            wings.join(", ")
        );
    }
    Ok(())
}

fn write_stagger(report: &StaggerReport, dir: &Path) -> Result<(), Failure> {
    let mut csv = String::from("offset,wing_id,induced_drag\n");
    for row in &report.rows {
        for (id, drag) in &row.per_wing {
            csv.push_str(&format!("{:.5e},{id},{drag:.5e}\n", row.offset));
        }
        csv.push_str(&format!("{:.5e},total,{:.5e}\n", row.offset, row.total));
    }
    write_atomic(&dir.join("stagger.csv"), csv.as_str())
        .map_err(|e| Failure::runtime(e.to_string()))?;
    let meta = json!({
        "report": report,
        "code_version": env!("CARGO_PKG_VERSION"),
    });
    let mut text = serde_json::to_string_pretty(&meta).expect("meta serializes");
    text.push('\n');
    write_atomic(&dir.join("meta.json"), text.as_str())
        .map_err(|e| Failure::runtime(e.to_string()))
}
