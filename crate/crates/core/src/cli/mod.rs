//! Command-line frontend.
//!
//! Exit statuses: 0 success, 1 a reference row outside tolerance, 2 input or
//! validation error, 3 numerical failure, 4 usage error.

pub mod output;
pub mod reference;
pub mod scenario;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{evaluate, sweep, SweepParam};
use crate::error::Error;
use crate::grid::{self, Spacing};
use crate::spectral::{SurvivalCurve, TruncatedBreitWigner};
use crate::spread_models::SpreadModel;
use crate::units::{ConstantsTable, PhysQuantity, Unit};

use reference::RowStatus;
use scenario::{parse_scenario, ScenarioFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFERENCE_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "decay-spread", version, about = "Energy spread and measurement-time bounds for unstable states")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one scenario file.
    Eval { scenario: PathBuf },
    /// Evaluate a scenario over a grid of one parameter.
    Sweep(SweepArgs),
    /// Survival probability curve of a truncated Breit-Wigner state.
    Survival(SurvivalArgs),
    /// Recompute the published p -> pi0 e+ figures and compare.
    #[command(name = "reference-report", alias = "paper-report")]
    ReferenceReport,
}

#[derive(Debug, Args)]
struct SweepArgs {
    scenario: PathBuf,
    /// tau | R | v | M
    #[arg(long)]
    param: String,
    /// min,max,n[,linear|log]
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Unit of the grid values (default: years, cm, c or GeV by parameter).
    #[arg(long)]
    unit: Option<String>,
}

#[derive(Debug, Args)]
struct SurvivalArgs {
    /// Localization scenario file (ignored with --desk-scale).
    #[arg(required_unless_present = "desk_scale")]
    scenario: Option<PathBuf>,
    /// Dimensionless mode: hbar = 1, center 0.
    #[arg(long)]
    desk_scale: bool,
    #[arg(long, default_value_t = 1.0)]
    width: f64,
    #[arg(long, default_value_t = 50.0)]
    half_support: f64,
    #[arg(long, allow_hyphen_values = true)]
    tmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    tmax: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "linear")]
    spacing: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Numerical(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("i/o error: {e}"))
    }
}

/// Where and how a command writes its data.
struct Sink {
    format: OutputFormat,
    path: Option<PathBuf>,
}

impl Sink {
    fn resolve(cli: &Cli, file: Option<&ScenarioFile>) -> Sink {
        Sink {
            format: cli
                .format
                .or(file.and_then(|f| f.output_format))
                .unwrap_or(OutputFormat::Csv),
            path: cli.output.clone().or(file.and_then(|f| f.output_path.clone())),
        }
    }

    fn emit(
        &self,
        stdout: &mut dyn Write,
        write: impl FnOnce(&mut dyn Write, OutputFormat) -> io::Result<()>,
    ) -> Result<(), Failure> {
        match &self.path {
            Some(p) => {
                let mut buf = Vec::new();
                write(&mut buf, self.format)?;
                fs::write(p, buf).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            }
            None => write(stdout, self.format)?,
        }
        Ok(())
    }
}

fn load(path: &Path) -> Result<ScenarioFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn cmd_eval(cli: &Cli, path: &Path, stdout: &mut dyn Write) -> Result<(), Failure> {
    let file = load(path)?;
    let report = evaluate(&file.scenario)?;
    Sink::resolve(cli, Some(&file)).emit(stdout, |w, fmt| match fmt {
        OutputFormat::Csv => output::write_reports_csv(w, std::slice::from_ref(&report)),
        OutputFormat::Json => output::write_json(w, &report),
    })
}

fn parse_grid(grid: &str) -> Result<(f64, f64, usize, Spacing), Failure> {
    let parts: Vec<&str> = grid.split(',').map(str::trim).collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(Failure::Input(format!("--grid `{grid}`: expected min,max,n[,spacing]")));
    }
    let num = |s: &str, what: &str| {
        s.parse::<f64>()
            .map_err(|_| Failure::Input(format!("--grid: {what} `{s}` is not a number")))
    };
    let min = num(parts[0], "min")?;
    let max = num(parts[1], "max")?;
    let n = parts[2]
        .parse::<usize>()
        .map_err(|_| Failure::Input(format!("--grid: n `{}` is not a count", parts[2])))?;
    let spacing = match parts.get(3) {
        Some(s) => s.parse()?,
        None => Spacing::Linear,
    };
    Ok((min, max, n, spacing))
}

#[derive(Serialize)]
struct SweepRecord<'a> {
    swept_param: &'a str,
    swept_value: f64,
    swept_unit: &'a str,
    #[serde(flatten)]
    report: &'a crate::bounds::BoundReport,
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let file = load(&args.scenario)?;
    let param: SweepParam = args.param.parse()?;
    let unit = match &args.unit {
        Some(u) => u.parse::<Unit>()?,
        None => param.default_unit(),
    };
    if unit.dimension() != param.dimension() {
        return Err(Failure::Input(format!(
            "--unit `{unit}` is {}, parameter `{param}` needs {}",
            unit.dimension(),
            param.dimension()
        )));
    }
    let (min, max, n, spacing) = parse_grid(&args.grid)?;
    let values = grid::build(min, max, n, spacing)?;
    let quantities = values
        .iter()
        .map(|&v| PhysQuantity::new(v, unit))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = sweep(&file.scenario, param, &quantities)?;
    let rows: Vec<(f64, _)> = values.into_iter().zip(reports).collect();
    Sink::resolve(cli, Some(&file)).emit(stdout, |w, fmt| match fmt {
        OutputFormat::Csv => output::write_sweep_csv(w, param.as_str(), unit.symbol(), &rows),
        OutputFormat::Json => {
            let recs: Vec<_> = rows
                .iter()
                .map(|(v, r)| SweepRecord {
                    swept_param: param.as_str(),
                    swept_value: *v,
                    swept_unit: unit.symbol(),
                    report: r,
                })
                .collect();
            output::write_json(w, &recs)
        }
    })
}

#[derive(Serialize)]
struct SurvivalRecord {
    t: f64,
    survival_probability: f64,
}

fn cmd_survival(cli: &Cli, args: &SurvivalArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let spacing: Spacing = args.spacing.parse()?;
    if !(args.tmin < args.tmax) {
        return Err(Failure::Input(format!(
            "--tmin {} must be below --tmax {}",
            args.tmin, args.tmax
        )));
    }
    let (dist, file) = if args.desk_scale {
        (TruncatedBreitWigner::desk_scale(args.width, args.half_support)?, None)
    } else {
        let path = args.scenario.as_deref().expect("clap enforces scenario without --desk-scale");
        let file = load(path)?;
        let s = &file.scenario;
        let (speed, radius) = match &s.model {
            SpreadModel::Localization { speed, radius } => (*speed, *radius),
            other => {
                return Err(Failure::Input(format!(
                    "model.kind: survival needs a localization scenario, got `{}`",
                    other.kind()
                )))
            }
        };
        let gamma = ConstantsTable::reference().width_from_lifetime(s.lifetime)?;
        let d = TruncatedBreitWigner::new(s.channel.parent_mass(), gamma, speed, radius)?;
        (d, Some(file))
    };
    let curve: SurvivalCurve = dist.sample_survival(args.tmin, args.tmax, args.n, spacing)?;
    let time_column = if dist.is_desk_scale() { "t" } else { "t_seconds" };
    Sink::resolve(cli, file.as_ref()).emit(stdout, |w, fmt| match fmt {
        OutputFormat::Csv => output::write_survival_csv(w, &curve, time_column),
        OutputFormat::Json => {
            let recs: Vec<_> = curve
                .samples
                .iter()
                .map(|s| SurvivalRecord {
                    t: s.t,
                    survival_probability: s.p,
                })
                .collect();
            output::write_json(w, &recs)
        }
    })
}

fn cmd_reference_report(cli: &Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let rows = reference::reference_rows()?;
    Sink::resolve(cli, None).emit(stdout, |w, fmt| match fmt {
        OutputFormat::Csv => {
            let cells: Vec<_> = rows.iter().map(|r| r.csv_fields()).collect();
            output::write_table_csv(w, &reference::HEADER, &cells)
        }
        OutputFormat::Json => output::write_json(w, &rows),
    })?;
    let failed: Vec<_> = rows
        .iter()
        .filter(|r| r.status == RowStatus::Fail)
        .map(|r| r.id)
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("rows outside tolerance: {}", failed.join(", "))))
    }
}

/// Runs the CLI with explicit streams; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Eval { scenario } => cmd_eval(&cli, scenario, stdout),
        Command::Sweep(args) => cmd_sweep(&cli, args, stdout),
        Command::Survival(args) => cmd_survival(&cli, args, stdout),
        Command::ReferenceReport => cmd_reference_report(&cli, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Numerical(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_NUMERICAL
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_REFERENCE_MISMATCH
        }
    }
}
