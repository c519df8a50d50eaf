//! Command-line front end: `realize`, `symbolic`, `ladder`, `bode` and
//! `compare`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod document;

pub use document::{LadderDocument, Meta, TfDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Degenerate(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Degenerate(_) => 3,
            CliError::Validation(_) | CliError::Io { .. } => 2,
        }
    }
}

fn classify(e: foreal_core::Error) -> CliError {
    if e.is_validation() {
        CliError::Validation(e.to_string())
    } else {
        CliError::Degenerate(e.to_string())
    }
}

macro_rules! from_core {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                classify(e.into())
            }
        }
    )*};
}

from_core!(
    foreal_core::Error,
    foreal_core::ExactError,
    foreal_core::ApproxError,
    foreal_core::ControllerError,
    foreal_core::LadderError,
    foreal_core::FreqError,
    foreal_core::BaselineError
);

#[derive(Debug, Parser)]
#[command(name = "foreal", version, about = "Rational realizations of fractional-order controllers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realize a controller with numeric parameters as a transfer function.
    Realize(RealizeArgs),
    /// Print a controller with symbolic parameters.
    Symbolic(SymbolicArgs),
    /// Synthesize a continued-fraction ladder from a transfer function.
    Ladder(LadderArgs),
    /// Sample the Bode response of a transfer function.
    Bode(BodeArgs),
    /// Compare approximation methods against the ideal differintegrator.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Controller {
    Diffint,
    Fopid,
    Fopd,
    Leadlag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Integrator,
    Differentiator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    Hz,
    Rad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    CfeLow,
    CfeHigh,
    Oustaloup,
    ModOustaloup,
    Carlson,
}

/// Parameter values are exact rationals (`1/2`, `0.5`, `2.5e-3`) for
/// `realize`, and polynomial expressions in the parameter symbols for
/// `symbolic`.
#[derive(Debug, Clone, Args)]
pub struct Params {
    #[arg(long)]
    pub controller: Controller,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kp: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub ki: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kd: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kc: Option<String>,
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, value_enum, default_value = "low")]
    pub range: RangeArg,
    /// Differintegrator direction.
    #[arg(long, value_enum, default_value = "integrator")]
    pub sign: SignArg,
    #[arg(long, default_value_t = 5)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    #[command(flatten)]
    pub params: Params,
    /// Decimal coefficients with 15 significant digits instead of exact
    /// rationals.
    #[arg(long)]
    pub float: bool,
    #[arg(long)]
    pub no_meta: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SymbolicArgs {
    #[command(flatten)]
    pub params: Params,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub no_meta: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    #[arg(long)]
    pub tf: PathBuf,
    #[arg(long)]
    pub netlist: Option<PathBuf>,
    /// Port name in the netlist.
    #[arg(long, default_value = "Z")]
    pub name: String,
    #[arg(long)]
    pub no_meta: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub fmin: f64,
    #[arg(long, default_value_t = 1e3)]
    pub fmax: f64,
    #[arg(long, default_value_t = foreal_core::freqresp::DEFAULT_POINTS_PER_DECADE)]
    pub points_per_decade: usize,
    #[arg(long, value_enum, default_value = "hz")]
    pub unit: UnitArg,
}

#[derive(Debug, Args)]
pub struct BodeArgs {
    #[arg(long)]
    pub tf: PathBuf,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long)]
    pub no_meta: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub lambda: String,
    /// Order of the continued-fraction realizations.
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "cfe-low,cfe-high,oustaloup,mod-oustaloup,carlson")]
    pub methods: Vec<Method>,
    #[arg(long, value_enum, default_value = "integrator")]
    pub sign: SignArg,
    /// Time scale of the high-range realization.
    #[arg(long = "T", default_value = "1")]
    pub t: String,
    /// Oustaloup recursion depth; the filters have order 2N+1 and 2N+3.
    #[arg(long, default_value_t = 3)]
    pub oustaloup_n: usize,
    /// Fitting band of the Oustaloup filters, in the sweep unit. Defaults
    /// to the sweep range.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub oustaloup_band: Option<Vec<f64>>,
    #[arg(long, default_value_t = 3)]
    pub carlson_iterations: usize,
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Band over which the fit is scored, in the sweep unit. Defaults to
    /// the sweep range.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub band: Option<Vec<f64>>,
    /// Phase tolerance for the constant-phase band, degrees.
    #[arg(long, default_value_t = 5.0)]
    pub tolerance: f64,
    #[arg(long)]
    pub no_meta: bool,
    /// CSV destination; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Fit report destination. When omitted the report goes to stdout if
    /// the CSV went to a file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Runs one command and returns the process exit code: 0 on success, 2 for
/// invalid input, 3 when the algebra degenerates.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
