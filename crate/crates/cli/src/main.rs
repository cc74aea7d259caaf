//! `osp`: lower bounds, heuristics and exact search for oven scheduling
//! instances.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "osp", version, about = "Oven scheduling: bounds, heuristics and exact search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the lower bounds of an instance.
    Bounds {
        instance: PathBuf,
        #[command(flatten)]
        results: ResultsArg,
    },
    /// Build a schedule with the earliest-due-date dispatching rule.
    Greedy {
        instance: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Improve the dispatching-rule schedule with simulated annealing.
    Anneal(AnnealArgs),
    /// Solve a small instance exactly.
    Oracle {
        instance: PathBuf,
        /// Disable lower-bound pruning.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = 9)]
        max_jobs: usize,
        #[arg(long, default_value_t = 50_000_000)]
        node_budget: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a solution against an instance and report its cost.
    Evaluate { instance: PathBuf, solution: PathBuf },
    /// Generate a random instance.
    Generate(GenerateArgs),
    /// Run bounds, greedy and annealing over every instance in a directory.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ResultsArg {
    /// Also write a results table to this file.
    #[arg(long, value_name = "PATH")]
    results: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the schedule to this file instead of standard output.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(flatten)]
    results: ResultsArg,
}

#[derive(Args)]
struct AnnealArgs {
    instance: PathBuf,
    /// Seed of the first replicate; replicate i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seconds per replicate.
    #[arg(long, default_value_t = 360.0)]
    time_limit: f64,
    /// Stop once the gap to the lower bound is at most this many percent.
    #[arg(long, value_name = "PERCENT")]
    lb_gap_stop: Option<f64>,
    #[arg(long, default_value_t = 10)]
    replicates: u64,
    /// Write the best-objective trace of every replicate to this file.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Trace sampling period in seconds.
    #[arg(long, default_value_t = 2.0)]
    trace_period: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator configuration file; the flags below override it.
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long, value_name = "PATH")]
    output: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 360.0)]
    time_limit: f64,
    #[arg(long, value_name = "PERCENT")]
    lb_gap_stop: Option<f64>,
    #[arg(long, default_value_t = 10)]
    replicates: u64,
    /// Write the table here instead of standard output.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
