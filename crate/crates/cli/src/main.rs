mod bench;
mod params;
mod report;
mod solve;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ilp-ls",
    version,
    about = "Local search for integer linear programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one MPS instance.
    Solve(solve::SolveArgs),
    /// Run a matrix of instances and configurations and report metrics.
    Bench(bench::BenchArgs),
    /// Check the boundary-solution properties on random small instances.
    Verify(verify::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(a) => solve::run(a),
        Command::Bench(a) => bench::run(a),
        Command::Verify(a) => verify::run(a),
    }
}
