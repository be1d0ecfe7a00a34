//! `algmat`: algebraic matroids of parametrized cones from the command line.
//!
//! Exit status: 0 success (or a Terracini union), 1 golden mismatch,
//! 2 usage or input error, 3 not a Terracini union, 4 sampling anomaly,
//! 5 enumeration cap exceeded.

mod commands;
mod golden;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "algmat",
    version,
    about = "Algebraic matroids of cones, joins and secants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, base count, loops and coloops of M(X).
    Matroid(SpecArgs),
    /// Matroid and defect of the s-secant.
    Secant(SpecArgs),
    /// Matroid and defect of a join given as input.
    Join(SpecArgs),
    /// Decide whether the join's matroid is the union of the summand matroids.
    UnionCheck(SpecArgs),
    /// Rank of a subset and the defect of the projected join.
    Rank(SpecArgs),
    /// Dimension and defect of the join.
    Defect(SpecArgs),
    /// Partition a subset into summand-independent parts.
    Partition(SpecArgs),
    /// Scan a lattice point set for translates of a pattern.
    Scan(ScanArgs),
    /// Recompute worked examples and compare with the recorded values.
    Examples(ExampleArgs),
    /// List the builtin specifications.
    Builtins(OutputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    output: Format,
}

#[derive(Args, Debug, Clone)]
struct EngineArgs {
    /// Seed for generic sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling trials; ranks are the maximum over trials.
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Prime modulus for evaluation (below 2^63).
    #[arg(long)]
    prime: Option<u64>,
    /// Re-certify sampled dependencies by symbolic rank.
    #[arg(long)]
    verify_symbolic: bool,
    /// Sample at one-parameter subgroup points instead, one direction per
    /// summand, e.g. "2,1;1,1".
    #[arg(long)]
    subgroup: Option<String>,
    /// Base of the subgroup points.
    #[arg(long, default_value_t = 2, requires = "subgroup")]
    subgroup_base: i64,
    /// Largest ground set for base enumeration.
    #[arg(long, default_value_t = algmat::matroid::DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// JSON specification file.
    #[arg(conflicts_with = "builtin", required_unless_present = "builtin")]
    input: Option<PathBuf>,
    /// Builtin specification name.
    #[arg(long)]
    builtin: Option<String>,
    /// Builtin parameter, `key=value` (repeatable).
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Secant order applied to the input.
    #[arg(long, short = 's')]
    s: Option<usize>,
    /// Comma-separated coordinate labels.
    #[arg(long)]
    subset: Option<String>,
    /// List every basis.
    #[arg(long)]
    bases: bool,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args, Debug, Clone)]
struct ScanArgs {
    /// Polytope JSON file.
    #[arg(conflicts_with = "polytope", required_unless_present = "polytope")]
    input: Option<PathBuf>,
    /// Polytope document given inline.
    #[arg(long)]
    polytope: Option<String>,
    /// Pattern polytope document (default: the triangle with vertices
    /// (0,0), (2,0), (0,2)).
    #[arg(long)]
    pattern: Option<String>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args, Debug, Clone)]
struct ExampleArgs {
    /// Example name; all examples when omitted.
    name: Option<String>,
    #[command(flatten)]
    engine: EngineArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
