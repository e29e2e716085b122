use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, ValueEnum};
use ilp_ls::oracle::{
    fact12_suites, fact3_suite, fact4_suite, prop1_suite, prop2_suite, prop3_suite, prop4_suite,
    tm_off_by_one, SuiteConfig, SuiteReport,
};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Tight move that stops one unit short on satisfied rows.
    TmFloor,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Propositions to check (1-4). If neither this nor `--facts` is given,
    /// everything runs.
    #[arg(long, value_delimiter = ',')]
    pub props: Vec<u8>,
    /// Facts to check (1-4).
    #[arg(long, value_delimiter = ',')]
    pub facts: Vec<u8>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Instances checked for proposition 1.
    #[arg(long, default_value_t = 200)]
    pub prop1_instances: usize,
    /// Operator applications for propositions 2 and 3.
    #[arg(long, default_value_t = 1000)]
    pub draws: usize,
    /// Engine runs for proposition 4.
    #[arg(long, default_value_t = 50)]
    pub runs: usize,
    /// Step budget of each proposition 4 run.
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
    /// Draws per fact.
    #[arg(long, default_value_t = 500)]
    pub fact_draws: usize,
    /// Write all suite reports, counterexamples included, as JSON.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Serialize)]
struct Dump<'a> {
    schema: u32,
    seed: u64,
    suites: &'a [SuiteReport],
}

pub fn run(args: VerifyArgs) -> ExitCode {
    for &p in args.props.iter().chain(&args.facts) {
        if !(1..=4).contains(&p) {
            eprintln!("error: expected numbers between 1 and 4, found {p}");
            return ExitCode::from(2);
        }
    }
    let everything = args.props.is_empty() && args.facts.is_empty();
    let prop = |k: u8| everything || args.props.contains(&k);
    let fact = |k: u8| everything || args.facts.contains(&k);

    let mut cfg = SuiteConfig {
        seed: args.seed,
        prop1_instances: args.prop1_instances,
        prop2_draws: args.draws,
        prop3_draws: args.draws,
        prop4_runs: args.runs,
        prop4_steps: args.steps,
        fact_draws: args.fact_draws,
        ..SuiteConfig::default()
    };
    if args.inject_fault == Some(Fault::TmFloor) {
        cfg.tm = tm_off_by_one;
    }

    let start = Instant::now();
    let mut reports = Vec::new();
    if prop(1) {
        reports.push(prop1_suite(&cfg));
    }
    if prop(2) {
        reports.push(prop2_suite(&cfg));
    }
    if prop(3) {
        reports.push(prop3_suite(&cfg));
    }
    if prop(4) {
        reports.push(prop4_suite(&cfg));
    }
    if fact(1) || fact(2) {
        let (f1, f2) = fact12_suites(&cfg);
        if fact(1) {
            reports.push(f1);
        }
        if fact(2) {
            reports.push(f2);
        }
    }
    if fact(3) {
        reports.push(fact3_suite(&cfg));
    }
    if fact(4) {
        reports.push(fact4_suite(&cfg));
    }

    let mut all_pass = true;
    for r in &reports {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        println!(
            "{:<6} {verdict}  checked {:>7}  skipped {:>5}  failures {}",
            r.property, r.checked, r.skipped, r.failures
        );
        if !r.passed() {
            all_pass = false;
            if let Some(c) = r.counterexamples.first() {
                eprintln!(
                    "{} counterexample: {}",
                    r.property,
                    serde_json::to_string(c).expect("counterexample serializes")
                );
            }
        }
    }
    println!("{:.1}s", start.elapsed().as_secs_f64());

    if let Some(path) = &args.dump {
        let body = serde_json::to_string_pretty(&Dump {
            schema: crate::report::SCHEMA,
            seed: args.seed,
            suites: &reports,
        })
        .expect("reports serialize");
        if let Err(e) = fs::write(path, body + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
