//! `propb`: generate hypergraphs, run the coloring procedures, evaluate
//! bounds and run seeded Monte Carlo campaigns.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when an exact
//! enumeration is refused as too large, 1 on any other failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use propb_core::{AlphaParams, DomainError, GenerateError, HypergraphError, Procedure, TooLarge};

#[derive(Parser)]
#[command(name = "propb", version, about = "Random recoloring experiments on nonuniform hypergraphs")]
struct Cli {
    /// Worker threads for parallel commands (default: all cores). Never affects output.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random hypergraph in .hg format.
    Gen(GenArgs),
    /// Print n, m, edge size range, q and the per-size q_j profile.
    Stats { file: PathBuf },
    /// Run one procedure once.
    Color(ColorArgs),
    /// Monte Carlo success rate and event statistics, as one CSV row.
    Mc(McArgs),
    /// Per-sample bad-event statistics as CSV.
    Events(EventsArgs),
    /// Evaluate a closed-form bound, as CSV.
    Bound(BoundArgs),
    /// Exact success probability by exhaustive enumeration.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcedureArg {
    Twophase,
    Greedy,
}

impl From<ProcedureArg> for Procedure {
    fn from(p: ProcedureArg) -> Self {
        match p {
            ProcedureArg::Twophase => Procedure::TwoPhase,
            ProcedureArg::Greedy => Procedure::Greedy,
        }
    }
}

#[derive(Args, Clone, Copy)]
struct AlphaArgs {
    #[arg(long = "alphaA", default_value_t = 16.0)]
    alpha_a: f64,
    #[arg(long = "alphaB", default_value_t = 16.0)]
    alpha_b: f64,
    #[arg(long = "alphaC", default_value_t = 16.0)]
    alpha_c: f64,
    #[arg(long = "alphaD", default_value_t = 16.0)]
    alpha_d: f64,
}

impl AlphaArgs {
    fn params(&self) -> Result<AlphaParams, DomainError> {
        let alphas = AlphaParams { a: self.alpha_a, b: self.alpha_b, c: self.alpha_c, d: self.alpha_d };
        if alphas.is_valid() {
            Ok(alphas)
        } else {
            Err(DomainError("alpha parameters must be positive and finite".into()))
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Uniform,
    Mixture,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    kind: GenKind,
    #[arg(long)]
    n: usize,
    /// Edge size (uniform).
    #[arg(long)]
    k: Option<usize>,
    /// Edge count (uniform).
    #[arg(long)]
    m: Option<usize>,
    /// Size profile `j:count,...` (mixture).
    #[arg(long)]
    profile: Option<String>,
    /// Target q, split evenly over `--sizes` (mixture; alternative to --profile).
    #[arg(long)]
    q: Option<f64>,
    /// Edge sizes `j,j,...` for --q.
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ColorArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "twophase")]
    procedure: ProcedureArg,
    /// Write one JSON record per vertex.
    #[arg(long)]
    trace: bool,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "twophase")]
    procedure: ProcedureArg,
    #[command(flatten)]
    alphas: AlphaArgs,
    /// Focal edge for X and Y_e.
    #[arg(long)]
    edge: Option<usize>,
    /// Value of the experiment column (default: the input file stem).
    #[arg(long)]
    id: Option<String>,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EventsArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    alphas: AlphaArgs,
    /// Focal edge for X and Y_e (default: 0).
    #[arg(long)]
    edge: Option<usize>,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Simple,
    Improved,
    Greedy,
    Uniform,
    Envelope,
    Conditional,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    kind: BoundKind,
    /// Minimum edge size.
    #[arg(long)]
    k: Option<usize>,
    /// Maximum edge size (greedy).
    #[arg(long = "K")]
    big_k: Option<usize>,
    #[arg(long)]
    q: Option<f64>,
    /// Focal edge size (default: k).
    #[arg(long)]
    s: Option<usize>,
    /// Conditioning value of X (conditional).
    #[arg(long)]
    x: Option<f64>,
    /// Conditioning value of Y_e (conditional, with --q).
    #[arg(long)]
    y: Option<f64>,
    /// Number of series terms (conditional; default ceil(alphaA * q), or unbounded without q).
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    f0: Option<f64>,
    #[arg(long)]
    fm: Option<f64>,
    #[command(flatten)]
    alphas: AlphaArgs,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    #[arg(long)]
    edge: Option<usize>,
    #[arg(long, value_enum, default_value = "twophase")]
    procedure: ProcedureArg,
}

/// Invalid user input; mapped to exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<TooLarge>().is_some() {
        3
    } else if err.downcast_ref::<HypergraphError>().is_some()
        || err.downcast_ref::<GenerateError>().is_some()
        || err.downcast_ref::<DomainError>().is_some()
        || err.downcast_ref::<Usage>().is_some()
    {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global() {
            eprintln!("error: {err}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Stats { file } => commands::stats(&file),
        Command::Color(args) => commands::color(args),
        Command::Mc(args) => commands::mc(args),
        Command::Events(args) => commands::events(args),
        Command::Bound(args) => commands::bound(args),
        Command::Oracle(args) => commands::oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
