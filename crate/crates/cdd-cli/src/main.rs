//! `cdd` — solve, benchmark, cross-check and render common due-date
//! scheduling instances.
//!
//! Exit codes: 0 success, 1 oracle mismatch in `check`, 2 flag/parse errors,
//! 3 infeasible assignment.

mod bench;
mod check;
mod gantt;
mod report;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use cdd_core::instances::{parse_h, HFactor};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "cdd",
    version,
    about = "Earliness/tardiness scheduling against a common due date"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one benchmark entry, exactly for a given sequence or by
    /// annealing over sequences.
    Solve(SolveArgs),
    /// Sweep a benchmark file over restrictive factors and seeds into a CSV.
    Bench(BenchArgs),
    /// Cross-check the solvers against the brute-force oracles.
    Check(CheckArgs),
    /// Render a solve result as a Gantt chart.
    Gantt(GanttArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Benchmark file in OR-library format.
    #[arg(long)]
    instance: PathBuf,
    /// 1-based entry index within the file.
    #[arg(long, default_value_t = 1)]
    index: usize,
    /// Restrictive factor; the due date is floor(h * sum P / machines).
    /// Accepts decimals ("0.4") and fractions ("16/21").
    #[arg(long, value_parser = parse_h_arg)]
    h: HFactor,
    #[arg(long, default_value_t = 1)]
    machines: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override the annealing iteration budget per chain.
    #[arg(long)]
    iterations: Option<u64>,
    /// Override the annealing ensemble size.
    #[arg(long)]
    ensemble: Option<usize>,
    #[arg(long, value_enum, default_value_t = SolveMode::Anneal)]
    mode: SolveMode,
    /// Job ids in processing order, e.g. "1,2,3"; required by
    /// exact-sequence mode.
    #[arg(long, value_delimiter = ',')]
    sequence: Option<Vec<u32>>,
    /// Restrict jobs to machines: a text file with one row of 0/1 flags per
    /// job, one column per machine.
    #[arg(long)]
    feasibility: Option<PathBuf>,
    /// Write the full result (with the effective config) as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMode {
    /// Optimize the given sequence exactly.
    #[value(name = "exact-sequence")]
    ExactSequence,
    /// Search over sequences with simulated annealing.
    Anneal,
}

#[derive(Args)]
struct BenchArgs {
    /// Benchmark file in OR-library format.
    #[arg(long)]
    instances: PathBuf,
    /// Restrictive factors to sweep.
    #[arg(long = "h-list", value_delimiter = ',', value_parser = parse_h_arg,
          default_values_t = default_h_list())]
    h_list: Vec<HFactor>,
    #[arg(long, default_value_t = 1)]
    machines: usize,
    /// Seeds to run per (instance, h) cell.
    #[arg(long, value_delimiter = ',', required = true)]
    seeds: Vec<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    ensemble: Option<usize>,
    /// Record real wall-clock milliseconds; without it the column is zero
    /// so reruns are byte-identical.
    #[arg(long)]
    timing: bool,
    /// Also print a text grid (instances x factors) of the best totals.
    #[arg(long)]
    table: bool,
}

fn default_h_list() -> Vec<HFactor> {
    [(1, 5), (2, 5), (3, 5), (4, 5)]
        .iter()
        .map(|&(n, d)| HFactor::new(n, d))
        .collect()
}

#[derive(Args)]
struct CheckArgs {
    /// Randomized trials per suite.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Largest job count for generated instances.
    #[arg(long = "max-n", default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = CheckSuite::All)]
    suite: CheckSuite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckSuite {
    /// Per-sequence optimizers against shift enumeration.
    Shift,
    /// Best over all sequences against full enumeration.
    Global,
    /// Parallel assignment against the parallel oracle and the m=1 case.
    Parallel,
    /// Dynamic extension against fresh re-optimization.
    Dynamic,
    All,
}

#[derive(Args)]
struct GanttArgs {
    /// JSON result written by `cdd solve --out`.
    #[arg(long)]
    result: PathBuf,
    #[arg(long, value_enum, default_value_t = GanttFormat::Text)]
    format: GanttFormat,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GanttFormat {
    Text,
    Svg,
}

fn parse_h_arg(text: &str) -> Result<HFactor, String> {
    parse_h(text).map_err(|err| err.to_string())
}

/// Error carrying the process exit code.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    fn mismatch(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 1,
        }
    }
}

impl From<cdd_core::Error> for CliError {
    fn from(err: cdd_core::Error) -> CliError {
        let code = match err {
            cdd_core::Error::InfeasibleJob(_) | cdd_core::Error::NoFeasibleMachine => 3,
            _ => 2,
        };
        CliError {
            message: err.to_string(),
            code,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> CliError {
        CliError {
            message: err.to_string(),
            code: 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => solve::run(&args),
        Command::Bench(args) => bench::run(&args),
        Command::Check(args) => check::run(&args),
        Command::Gantt(args) => gantt::run(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
