//! `dqd`: thermal states of two coupled double quantum dots, their
//! correlation and teleportation quantifiers, and the extractable-work
//! thermodynamics, evaluated at points or swept over parameter grids.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dqd_core::correlations::SteeringMode;
use dqd_core::ModelParams;

use dqd::config::{self, AxisSpec, OutputFormat, SweepConfig};
use dqd::emit;
use dqd::error::{CliError, Result};
use dqd::fixtures;
use dqd::report;
use dqd::svg;
use dqd::sweep;

#[derive(Parser)]
#[command(
    name = "dqd",
    version,
    about = "Thermal-state correlations, teleportation metrics, and work \
             extraction for two coupled double quantum dots"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Gibbs state and energy spectrum at one parameter point
    State(PointArgs),
    /// Print discord, concurrence, steering, and CHSH quantities at one point
    Correlations(PointArgs),
    /// Print teleportation fidelity metrics at one point
    Teleport(PointArgs),
    /// Print work, efficiency, and entropic terms at one point
    Thermo(PointArgs),
    /// Evaluate quantities over a (j, delta, temperature) grid
    Sweep(SweepArgs),
    /// Compare regression fixtures against fresh computations
    Check(CheckArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SteeringModeArg {
    /// Closed-form steering expression
    Paper,
    /// Entropic-uncertainty steering criterion (default)
    Oracle,
}

impl SteeringModeArg {
    fn to_mode(self) -> SteeringMode {
        match self {
            SteeringModeArg::Paper => SteeringMode::ClosedForm,
            SteeringModeArg::Oracle => SteeringMode::Entropic,
        }
    }
}

#[derive(Args)]
struct PointArgs {
    /// JSON config with fixed j, delta, temperature values
    #[arg(long)]
    config: Option<PathBuf>,

    /// Coupling strength; overrides the config
    #[arg(long)]
    j: Option<f64>,

    /// Tunneling amplitude; overrides the config
    #[arg(long)]
    delta: Option<f64>,

    /// Temperature (must be positive); overrides the config
    #[arg(long)]
    temperature: Option<f64>,

    /// Steering criterion; overrides the config
    #[arg(long, value_enum)]
    steering_mode: Option<SteeringModeArg>,

    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON sweep configuration
    #[arg(long)]
    config: PathBuf,

    /// Write the table to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Write an SVG plot of the swept quantities; overrides the config
    #[arg(long)]
    plot: Option<PathBuf>,

    /// Worker threads; overrides DQD_WORKERS (default: all cores)
    #[arg(long)]
    workers: Option<usize>,

    /// Steering criterion; overrides the config
    #[arg(long, value_enum)]
    steering_mode: Option<SteeringModeArg>,

    /// Space the temperature grid logarithmically
    #[arg(long)]
    log_temperature: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Fixture file to check (or to write with --bless)
    #[arg(long)]
    fixtures: PathBuf,

    /// Recompute the canonical points and overwrite the fixture file
    #[arg(long)]
    bless: bool,

    /// Steering criterion used when blessing
    #[arg(long, value_enum)]
    steering_mode: Option<SteeringModeArg>,
}

fn read_config(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::ConfigIo {
        path: path.to_path_buf(),
        source,
    })
}

fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::OutputIo {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Merges config-file values with command-line overrides into one point.
/// Every parameter must come from one of the two sources.
fn resolve_point(args: &PointArgs) -> Result<(ModelParams, SteeringMode)> {
    let from_file = match &args.config {
        Some(path) => Some(config::parse_point_config(&read_config(path)?)?),
        None => None,
    };
    let pick = |flag: Option<f64>, stored: Option<f64>, name: &str| -> Result<f64> {
        flag.or(stored).ok_or_else(|| CliError::Validation {
            field: name.to_string(),
            message: format!("missing parameter (pass --{name} or provide a config file)"),
        })
    };
    let j = pick(args.j, from_file.map(|c| c.j), "j")?;
    let delta = pick(args.delta, from_file.map(|c| c.delta), "delta")?;
    let temperature = pick(
        args.temperature,
        from_file.map(|c| c.temperature),
        "temperature",
    )?;
    let params = ModelParams::new(j, delta, temperature).map_err(|e| CliError::Validation {
        field: "parameters".to_string(),
        message: e.to_string(),
    })?;
    let mode = args
        .steering_mode
        .map(SteeringModeArg::to_mode)
        .or(from_file.map(|c| c.steering_mode))
        .unwrap_or(SteeringMode::Entropic);
    Ok((params, mode))
}

fn apply_sweep_overrides(cfg: &mut SweepConfig, args: &SweepArgs) {
    if let Some(mode) = args.steering_mode {
        cfg.steering_mode = mode.to_mode();
    }
    if args.log_temperature {
        match cfg.temperature {
            AxisSpec::Range { ref mut log, .. } => *log = true,
            AxisSpec::Fixed(_) => unreachable!("sweep configs always carry a temperature range"),
        }
    }
    if let Some(path) = &args.plot {
        cfg.plot = Some(path.clone());
    }
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<()> {
    let mut cfg = config::parse_config(&read_config(&args.config)?)?;
    apply_sweep_overrides(&mut cfg, args);
    let workers = sweep::resolve_workers(args.workers)?;
    let output = sweep::run_sweep(&cfg, workers)?;
    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }
    let text = match cfg.output_format {
        OutputFormat::Csv => emit::emit_csv(&output),
        OutputFormat::Json => emit::emit_json(&output),
    };
    write_output(&text, args.out.as_deref())?;
    if let Some(plot_path) = &cfg.plot {
        let doc = svg::emit_svg(&output)?;
        fs::write(plot_path, doc).map_err(|source| CliError::OutputIo {
            path: plot_path.clone(),
            source,
        })?;
    }
    Ok(())
}

fn run_check_cmd(args: &CheckArgs) -> Result<()> {
    if args.bless {
        let mode = args
            .steering_mode
            .map(SteeringModeArg::to_mode)
            .unwrap_or(SteeringMode::Entropic);
        let n = fixtures::bless(&args.fixtures, mode)?;
        println!("blessed {n} fixture points to {}", args.fixtures.display());
        return Ok(());
    }
    let report = fixtures::check(&args.fixtures)?;
    print!("{}", report.text);
    if report.failures > 0 {
        return Err(CliError::FixturesFailed {
            failures: report.failures,
        });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.cmd {
        Cmd::State(args) => {
            let (params, _) = resolve_point(args)?;
            write_output(&report::state_report(params)?, args.out.as_deref())
        }
        Cmd::Correlations(args) => {
            let (params, mode) = resolve_point(args)?;
            write_output(
                &report::correlations_report_text(params, mode)?,
                args.out.as_deref(),
            )
        }
        Cmd::Teleport(args) => {
            let (params, _) = resolve_point(args)?;
            write_output(&report::teleport_report_text(params), args.out.as_deref())
        }
        Cmd::Thermo(args) => {
            let (params, _) = resolve_point(args)?;
            write_output(&report::thermo_report_text(params), args.out.as_deref())
        }
        Cmd::Sweep(args) => run_sweep_cmd(args),
        Cmd::Check(args) => run_check_cmd(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
