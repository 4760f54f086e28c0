use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gcg_harness::{cmd_audit, cmd_bench, cmd_solve, Options};

#[derive(Parser)]
#[command(name = "gcg", version, about = "Run and audit generalized conditional gradient experiments")]
struct Cli {
    /// Directory for traces and reports.
    #[arg(long, global = true, env = "GCG_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    /// Overrides the config's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the solver iteration budget.
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Record wall-clock time per row (traces are then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config.
    Solve { config: PathBuf },
    /// Re-verify solver invariants on a trace file.
    Audit { trace: PathBuf, config: PathBuf },
    /// Run every config listed in a suite file.
    Bench { suite: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        out_dir: cli.out_dir,
        seed: cli.seed,
        max_iters: cli.max_iters,
        quiet: cli.quiet,
        timing: cli.timing,
    };
    let code = match &cli.command {
        Command::Solve { config } => cmd_solve(config, &opts),
        Command::Audit { trace, config } => cmd_audit(trace, config, &opts),
        Command::Bench { suite } => cmd_bench(suite, &opts),
    };
    ExitCode::from(code as u8)
}
