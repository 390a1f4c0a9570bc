//! `beachcomb` command-line front end.
//!
//! Exit codes: 0 success or feasible, 1 infeasible or bound violated,
//! 2 usage error, 3 I/O or parse error.

mod commands;
mod io;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "beachcomb",
    version,
    about = "Two-speed robot segment search scheduling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal offline schedule for a known segment length.
    SolveOffline {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// LeapFrog schedule over an integer horizon plus its swarm plan.
    SolveOnline {
        #[arg(short, long)]
        input: PathBuf,
        /// Defaults to the instance length, which must then be an integer.
        #[arg(long)]
        horizon: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a schedule against an instance; exit 0 iff feasible.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        schedule: PathBuf,
        /// Also report the structural properties of optimal offline schedules.
        #[arg(long)]
        structure: bool,
    },
    /// Online versus offline finishing time on the unit segment.
    Ratio {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Worst ratio for totally uniform fleets, one CSV row per fleet size.
    WuniformTable {
        /// Fleet sizes: `2..10` (inclusive) or `2,3,4`.
        #[arg(long = "n")]
        sizes: String,
    },
    /// Large-fleet limit of the worst ratio for equal walk speeds.
    Asymptote,
    /// Generate an instance.
    Gen {
        #[command(flatten)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Competitive ratios of many seeded instances.
    Sweep {
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        max_n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Brute-force checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Best search order over all permutations (at most 9 robots).
    BestOrder {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Grid maximization of the equal-walk-speed ratio.
    GridMax {
        #[arg(long = "n")]
        n: u32,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Random,
    WUniform,
    TotallyUniform,
    Prop1,
}

#[derive(Debug, Args)]
struct Family {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// prop1 only; sampled per instance when absent.
    #[arg(long)]
    epsilon: Option<f64>,
    /// totally-uniform only; sampled per instance when absent.
    #[arg(long)]
    alpha: Option<f64>,
    /// Common walk speed for w-uniform and totally-uniform.
    #[arg(long, default_value_t = 1.0)]
    w: f64,
    #[arg(long, default_value_t = 1e-2)]
    w_min: f64,
    #[arg(long, default_value_t = 1e2)]
    w_max: f64,
}

fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
