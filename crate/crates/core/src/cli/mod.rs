//! The `ber-bounds` command line.
//!
//! ```text
//! ber-bounds estimate --input data.csv [--method ghp|pw|both] [--priors p.toml]
//! ber-bounds oracle   --model model.toml [--mc-budget N] [--seed S]
//! ber-bounds sweep    --kind mu|m|n-convergence --grid 0.5,1,2 [--trials T]
//! ber-bounds bench    --m 10 --n 5000 --gamma 0.5 [--trials 5]
//! ```
//!
//! Exit codes: 0 success, 2 input error, 3 validation error, 4 internal
//! invariant breach. Failures print one JSON line `{"error": .., "message": ..}`
//! on standard error.

mod commands;
pub mod io;
pub mod schema;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::geometry::MstAlgorithm;

pub use commands::{cmd_bench, cmd_estimate, cmd_oracle, cmd_sweep, parse_grid, run_bench};

#[derive(Debug, Parser)]
#[command(name = "ber-bounds", version, about = "Bounds on the multi-class Bayes error rate")]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write 0 for every runtime field so outputs are byte-reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate BER bounds from a labeled CSV file.
    Estimate(EstimateArgs),
    /// Monte Carlo ground truth for a Gaussian mixture model file.
    Oracle(OracleArgs),
    /// Parameter sweeps over circle-of-Gaussians models, as CSV.
    Sweep(SweepArgs),
    /// Wall time of the global-MST and pairwise-MST pipelines.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ghp,
    Pw,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Prim,
    KdBoruvka,
    Auto,
}

impl From<AlgorithmArg> for MstAlgorithm {
    fn from(value: AlgorithmArg) -> Self {
        match value {
            AlgorithmArg::Prim => MstAlgorithm::Prim,
            AlgorithmArg::KdBoruvka => MstAlgorithm::KdBoruvka,
            AlgorithmArg::Auto => MstAlgorithm::Auto,
        }
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// CSV with a header row and an integer `label` column.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "ghp")]
    pub method: MethodArg,
    /// TOML or JSON file with `priors = [...]`, ordered by ascending label
    /// value. Empirical priors are used when absent.
    #[arg(long)]
    pub priors: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub algorithm: AlgorithmArg,
    /// Recorded in the report; estimation itself is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Model file (TOML, or JSON with a `.json` extension).
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    pub mc_budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Mu,
    M,
    NConvergence,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub kind: SweepKind,
    /// Comma-separated grid values (radii, class counts or sample sizes).
    #[arg(long)]
    pub grid: String,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.3)]
    pub sigma2: f64,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Samples per trial (ignored by the n-convergence sweep).
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    pub mc_budget: usize,
    #[arg(long, value_enum, default_value = "auto")]
    pub algorithm: AlgorithmArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    pub m: usize,
    #[arg(long, default_value_t = 5000)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.3)]
    pub sigma2: f64,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 200_000)]
    pub mc_budget: usize,
    #[arg(long, value_enum, default_value = "prim")]
    pub algorithm: AlgorithmArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Failure of a CLI command, carrying its exit code class.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input file or argument (exit 2).
    Input { kind: &'static str, message: String },
    /// Input parsed but failed dataset/model validation (exit 3).
    Validation(Error),
    /// An internal invariant failed (exit 4).
    Internal(String),
}

impl CliError {
    pub fn input(kind: &'static str, message: impl Into<String>) -> Self {
        CliError::Input { kind, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Validation(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    /// One-line JSON description for standard error.
    pub fn to_json_line(&self) -> String {
        let (kind, message) = match self {
            CliError::Input { kind, message } => (*kind, message.clone()),
            CliError::Validation(e) => (e.kind(), e.to_string()),
            CliError::Internal(m) => ("InvariantBreach", m.clone()),
        };
        serde_json::json!({ "error": kind, "message": message, "exit_code": self.exit_code() })
            .to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantBreach(m) => CliError::Internal(m),
            other => CliError::Validation(other),
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(CliError::input("BadArgument", e.to_string())),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let timing = !cli.no_timing;
    match &cli.command {
        Command::Estimate(a) => cmd_estimate(a, timing),
        Command::Oracle(a) => cmd_oracle(a, timing),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) if e.use_stderr() && e.kind() != clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            eprintln!("{}", CliError::input("BadArgument", e.to_string().lines().next().unwrap_or("")).to_json_line());
            2
        }
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() { 2 } else { 0 }
        }
    }
}
