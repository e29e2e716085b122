use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Args;
use ilp_ls::engine::run as run_engine;
use ilp_ls::parser::{parse_mps, write_solution};

use crate::params::EngineArgs;
use crate::report::solve_report;

#[derive(Args)]
pub struct SolveArgs {
    /// MPS file.
    pub instance: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Solution file; defaults to the instance path with a `.sol` extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write run statistics and the incumbent trace as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Print progress details to standard error.
    #[arg(short, long)]
    pub verbose: bool,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn run(args: SolveArgs) -> ExitCode {
    let text = match fs::read_to_string(&args.instance) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", args.instance.display())),
    };
    let inst = match parse_mps(&text) {
        Ok(i) => i,
        Err(e) => return fail(format!("{}: {e}", args.instance.display())),
    };
    let name = instance_name(&args.instance);
    let params = args.engine.params(args.seed);
    if args.verbose {
        eprintln!(
            "{name}: {} variables, {} rows, params {:?}",
            inst.num_vars(),
            inst.num_cons(),
            params
        );
    }
    let result = run_engine(&inst, params.clone());
    let rep = solve_report(&name, &inst, &params, &result);

    if let Some(best) = &result.best {
        let out = args
            .out
            .clone()
            .unwrap_or_else(|| args.instance.with_extension("sol"));
        if let Err(e) = fs::write(&out, write_solution(&inst, best, result.best_obj)) {
            return fail(format!("{}: {e}", out.display()));
        }
    }
    if let Some(path) = &args.json {
        let body = serde_json::to_string_pretty(&rep).expect("report serializes");
        if let Err(e) = fs::write(path, body + "\n") {
            return fail(format!("{}: {e}", path.display()));
        }
    }
    if args.verbose {
        eprintln!(
            "{} restarts, {} mode transitions, {} weight updates",
            result.stats.restarts, result.stats.mode_transitions, result.stats.weight_updates
        );
    }
    match rep.best_obj {
        Some(obj) => {
            println!(
                "{name}: {} objective {obj} after {} steps",
                rep.status, rep.steps
            );
            ExitCode::SUCCESS
        }
        None => {
            println!("{name}: no feasible solution after {} steps", rep.steps);
            ExitCode::from(1)
        }
    }
}
