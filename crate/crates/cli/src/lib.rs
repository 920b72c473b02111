//! Command-line front end for the quasi-exact DKP oscillator solver.
//!
//! `dkp <command> [flags]` with commands `roots`, `state`, `table`,
//! `figure1`, `verify` and `degeneracy`. Output is CSV (default) or flat
//! JSON, to stdout or `--output`. Exit codes: 0 success, 1 computational or
//! check failure, 2 usage error.

mod commands;
pub mod config;
pub mod format;
pub mod verify;

pub use commands::verify_outcome;

use clap::{Args, Parser, Subcommand};
use config::{pick, ConfigFile};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Failure(_) => EXIT_FAILURE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format '{other}' (expected csv|json)")),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dkp",
    version,
    about = "Quasi-exact spectrum of the DKP oscillator with a linear scalar potential"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    /// Particle mass (default 1).
    #[arg(long, global = true)]
    pub m: Option<f64>,
    /// Output format: csv or json (default csv).
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantization roots ζ for given n and parity.
    Roots(RootsArgs),
    /// One normalized state: ζ, λ, E, δ, N and residuals.
    State(StateArgs),
    /// Sampled eigenfunction, spinor components and currents.
    Table(TableArgs),
    /// Data for the ζ = 2 plot of the n = 0 and n = 1 states.
    Figure1,
    /// Run invariant suites.
    Verify(VerifyArgs),
    /// Exact common-root test of L_n^(1) and L_{n-1}^(1).
    Degeneracy(DegeneracyArgs),
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// even or odd.
    #[arg(long)]
    pub parity: Option<String>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// even or odd.
    #[arg(long)]
    pub parity: Option<String>,
    /// Index into the increasing root list (default 0).
    #[arg(long)]
    pub root_index: Option<usize>,
    /// Energy sign: + or - (default +).
    #[arg(long)]
    pub sign: Option<String>,
    /// Select the root nearest this ζ (relative 1e-6).
    #[arg(long, conflicts_with_all = ["lambda", "root_index"])]
    pub zeta: Option<f64>,
    /// Select the root nearest ζ = m²/λ.
    #[arg(long, conflicts_with = "root_index")]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Odd number of samples (default 501).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Half-width in units of 1/m, or "auto" (default).
    #[arg(long)]
    pub x_max: Option<String>,
    /// Dimensionless columns: x/λ_C, √λ_C φ, λ_C J.
    #[arg(long)]
    pub scaled: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// algebra, hypergeom, oracle or all (default all).
    #[arg(long)]
    pub scope: Option<String>,
}

#[derive(Debug, Args)]
pub struct DegeneracyArgs {
    /// Largest n to scan, 1..=100 (default 100).
    #[arg(long)]
    pub max_n: Option<usize>,
}

/// Resolved global settings.
#[derive(Clone, Debug)]
pub struct Globals {
    pub m: f64,
    pub format: Format,
}

/// Rendered output plus the exit code it should produce.
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let m = pick(cli.m, &cfg, "m")?.unwrap_or(1.0);
    if !(m.is_finite() && m > 0.0) {
        return Err(CliError::Usage(format!("--m must be positive, got {m}")));
    }
    let globals = Globals {
        m,
        format: pick(cli.format, &cfg, "format")?.unwrap_or(Format::Csv),
    };
    let output = pick(cli.output.clone(), &cfg, "output")?;
    let outcome = commands::dispatch(&cli.command, &globals, &cfg)?;
    match output {
        Some(path) => std::fs::write(&path, &outcome.body)
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Failure(format!("cannot write stdout: {e}")))?;
        }
    }
    Ok(outcome.code)
}
