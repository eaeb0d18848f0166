//! Command-line front end: `bound`, `verify`, `means`, `quad` and `identity`.
//!
//! Exit codes: 0 success, 1 an inequality or certification failed, 2 usage or
//! input error, 3 the reference integrator did not converge.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use sconvex_ostrowski::Error as CoreError;

pub mod commands;
pub mod config;
pub mod render;
pub mod sweep;

pub use config::FileConfig;
pub use sweep::{SweepConfig, SweepReport, TargetFunction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

/// Default tolerance for verification records.
pub const DEFAULT_CLI_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Parser)]
#[command(
    name = "ostrowski",
    version,
    about = "Ostrowski-type bounds for s-convex derivatives"
)]
pub struct Cli {
    /// Tolerance for verification records and the oracle.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with defaults; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Panel budget of the reference integrator.
    #[arg(long, global = true)]
    pub oracle_budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one bound.
    Bound(BoundArgs),
    /// Sweep every bound against the oracle deviation.
    Verify(VerifyArgs),
    /// Gap between A^s and L_s^s with its three bounds.
    Means(MeansArgs),
    /// Certified composite-midpoint integration.
    Quad(QuadArgs),
    /// Check the kernel identity on a polynomial suite.
    Identity(IdentityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "t20")]
    T20,
    #[value(name = "teo1")]
    Teo1,
    #[value(name = "t21")]
    T21,
    #[value(name = "z")]
    Z,
    #[value(name = "t22")]
    T22,
    #[value(name = "eq11")]
    Eq11,
    #[value(name = "ee")]
    Ee,
    #[value(name = "eq14")]
    Eq14,
    #[value(name = "eq15")]
    Eq15,
    #[value(name = "eq16")]
    Eq16,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub da: Option<f64>,
    #[arg(long)]
    pub db: Option<f64>,
    #[arg(long)]
    pub dx: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Function spec, optionally suffixed with `@a,b`; repeatable.
    #[arg(long = "fn")]
    pub functions: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub s_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Option<Vec<f64>>,
    #[arg(long)]
    pub x_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MeansArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// One row per value; repeatable or comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub s: Vec<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    P4,
    P5,
    P6,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    #[arg(long = "fn")]
    pub function: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long)]
    pub target: f64,
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Largest panel count tried.
    #[arg(long, default_value_t = sconvex_ostrowski::DEFAULT_PANEL_BUDGET)]
    pub budget: usize,
    /// Also report the true error from the oracle.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    /// Function spec with optional `@a,b`; replaces the built-in suite.
    #[arg(long = "fn")]
    pub functions: Vec<String>,
    #[arg(long)]
    pub x_points: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io(_) => EXIT_USAGE,
            Self::Core(CoreError::NonConvergence { .. }) => EXIT_ORACLE,
            Self::Core(CoreError::BudgetExhausted { .. }) => EXIT_FAILURE,
            Self::Core(_) => EXIT_USAGE,
        }
    }
}

/// Settings shared by every subcommand after merging flags over the config file.
#[derive(Debug, Clone)]
pub struct Globals {
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub oracle_budget: usize,
}

/// Rendered output plus the exit code it implies.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn execute(cli: Cli) -> Result<(Globals, Outcome), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let globals = Globals {
        tol: cli.tol.or(file.tol).unwrap_or(DEFAULT_CLI_TOL),
        format: cli.format.or(file.format).unwrap_or(Format::Json),
        out: cli.out.clone().or_else(|| file.out.clone()),
        oracle_budget: cli
            .oracle_budget
            .or(file.oracle_budget)
            .unwrap_or(sconvex_ostrowski::toolkit::DEFAULT_MAX_PANELS),
    };
    if !(globals.tol > 0.0 && globals.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            globals.tol
        )));
    }
    let outcome = match &cli.command {
        Command::Bound(args) => commands::cmd_bound(args, &globals)?,
        Command::Verify(args) => {
            let config = SweepConfig::merge(args, &file, &globals)?;
            sweep::cmd_verify(&config, &globals)?
        }
        Command::Means(args) => commands::cmd_means(args, &globals)?,
        Command::Quad(args) => commands::cmd_quad(args, &globals)?,
        Command::Identity(args) => commands::cmd_identity(args, &globals)?,
    };
    Ok((globals, outcome))
}

/// Parses `args`, runs the subcommand and writes the report; returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli) {
        Ok((globals, outcome)) => {
            let written = match &globals.out {
                Some(path) => std::fs::write(path, &outcome.text),
                None => stdout.write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            if outcome.code == EXIT_FAILURE {
                let _ = writeln!(stderr, "one or more checks failed");
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
