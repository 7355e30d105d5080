//! `acegraph` command-line interface.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use acegraph::{Group, Norm};

#[derive(Parser, Debug)]
#[command(name = "acegraph", version, about = "Invariant polynomial index sets and evaluation graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the invariant tuples K_G(nu, D).
    Enumerate(EnumerateArgs),
    /// Classify tuples as dependent or independent.
    Classify(ClassifyArgs),
    /// Build an evaluation graph and write it in the ACEDAG format.
    Build(BuildArgs),
    /// Node statistics over a grid of (numax, D, algorithm) as CSV.
    Stats(StatsArgs),
    /// Evaluate a graph (and optionally a model) on a particle configuration.
    Eval(EvalArgs),
    /// Run self-check suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgArg {
    Orig,
    Gen,
}

#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    #[arg(long, default_value = "T")]
    pub group: Group,
    #[arg(long, default_value = "1")]
    pub p: Norm,
    /// Maximal degree D.
    #[arg(long = "D")]
    pub d: u32,
    /// Correlation order.
    #[arg(long)]
    pub nu: usize,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Print only counts.
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub set: SetArgs,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub set: SetArgs,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long, default_value = "T")]
    pub group: Group,
    #[arg(long, default_value = "1")]
    pub p: Norm,
    #[arg(long = "D")]
    pub d: u32,
    #[arg(long)]
    pub numax: usize,
    #[arg(long, value_enum, default_value = "orig")]
    pub alg: AlgArg,
    /// Sub-tuple length for the generalized heuristic.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[arg(long, default_value = "T")]
    pub group: Group,
    #[arg(long, default_value = "1")]
    pub p: Norm,
    /// Single degree; overrides --Dmin/--Dmax.
    #[arg(long = "D")]
    pub d: Option<u32>,
    #[arg(long = "Dmin", default_value_t = 1)]
    pub d_min: u32,
    #[arg(long = "Dmax")]
    pub d_max: Option<u32>,
    /// One or more correlation orders, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub numax: Vec<usize>,
    /// One or more heuristics, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "orig,gen")]
    pub alg: Vec<AlgArg>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Graph file written by `build`.
    #[arg(long)]
    pub graph: std::path::PathBuf,
    /// Particle configuration file.
    #[arg(long)]
    pub config: std::path::PathBuf,
    /// Coefficient file; without it every node value is printed.
    #[arg(long)]
    pub coeffs: Option<std::path::PathBuf>,
    /// Print only the real part of the model value.
    #[arg(long)]
    pub real_part: bool,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    TExactCount,
    Oracle,
    Classifier,
    Invariance,
    Identities,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value = "T")]
    pub group: Group,
    #[arg(long, default_value_t = 4)]
    pub numax: usize,
    #[arg(long = "D", default_value_t = 8)]
    pub d: u32,
    #[arg(long = "Dmax", default_value_t = 30)]
    pub d_max: u32,
    /// Random configurations per oracle / invariance run.
    #[arg(long, default_value_t = 100)]
    pub configs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
