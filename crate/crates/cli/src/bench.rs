use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Args;
use ilp_ls::engine::{run as run_engine, Params};
use ilp_ls::metrics::{aggregate, PrimalTrace, Report, RunRecord};
use ilp_ls::model::Instance;
use ilp_ls::parser::parse_mps;
use rayon::prelude::*;
use serde::Serialize;

use crate::params::{apply_override, EngineArgs};
use crate::report::{status, SCHEMA};
use crate::solve::instance_name;

#[derive(Args)]
pub struct BenchArgs {
    /// Directory holding `.mps` files.
    pub dir: PathBuf,
    /// Configuration preset, `NAME` or `NAME:key=value,key=value`. Keys are
    /// engine parameters (beta, sp, cv, ov, cs, os, or, restart_steps,
    /// unit_move, ...). May be repeated; defaults to one preset named
    /// `default`.
    #[arg(long = "config")]
    pub configs: Vec<String>,
    /// Comma-separated seeds; every (instance, config) pair runs once per seed.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub seeds: Vec<u64>,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Best-known objectives, one `name value` pair per line, in each
    /// model's own sense. Without it the best value in the matrix is used.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Output directory for `report.json`, `runs.csv` and `summary.csv`.
    #[arg(long, default_value = "bench-report")]
    pub out: PathBuf,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub threads: Option<usize>,
}

struct Preset {
    name: String,
    params: Params,
}

fn parse_preset(spec: &str, base: &Params) -> Result<Preset, String> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n, r),
        None => (spec, ""),
    };
    if name.is_empty() {
        return Err(format!("preset `{spec}` has no name"));
    }
    let mut params = base.clone();
    for kv in rest.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found `{kv}`"))?;
        apply_override(&mut params, k.trim(), v.trim())?;
    }
    Ok(Preset {
        name: name.to_string(),
        params,
    })
}

fn read_references(path: &Path) -> Result<BTreeMap<String, f64>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = BTreeMap::new();
    for (k, line) in text.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() || toks[0].starts_with('#') {
            continue;
        }
        let [name, value] = toks[..] else {
            return Err(format!(
                "{}:{}: expected `name value`",
                path.display(),
                k + 1
            ));
        };
        let v: f64 = value
            .parse()
            .map_err(|_| format!("{}:{}: bad value `{value}`", path.display(), k + 1))?;
        out.insert(name.to_string(), v);
    }
    Ok(out)
}

fn mps_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x.eq_ignore_ascii_case("mps")))
        .collect();
    files.sort();
    Ok(files)
}

/// Trace in the model's sense, negated for maximization so that smaller is
/// better. Gaps are invariant under that negation.
fn comparable_trace(inst: &Instance, trace: &PrimalTrace) -> PrimalTrace {
    let mut t = trace.clone();
    for e in &mut t.events {
        e.obj += inst.objective_offset();
    }
    t
}

#[derive(Serialize)]
struct RunRow {
    instance: String,
    file: String,
    config: String,
    seed: u64,
    status: String,
    best_obj: Option<f64>,
    steps: Option<u64>,
    restarts: Option<u64>,
    t_max: Option<f64>,
    error: Option<String>,
}

#[derive(Serialize)]
struct BenchReport<'a> {
    #[serde(flatten)]
    report: &'a Report,
    runs: &'a [RunRow],
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    config: &'a str,
    instances: usize,
    feas: usize,
    win: usize,
    mean_primal_integral: f64,
    mean_normalized_primal_integral: f64,
}

struct Job<'a> {
    key: String,
    file: &'a Path,
    instance: &'a Result<Instance, String>,
    preset: &'a Preset,
    seed: u64,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

pub fn run(args: BenchArgs) -> ExitCode {
    let base = args.engine.params(1);
    let specs = if args.configs.is_empty() {
        vec!["default".to_string()]
    } else {
        args.configs.clone()
    };
    let mut presets = Vec::new();
    for s in &specs {
        match parse_preset(s, &base) {
            Ok(p) => presets.push(p),
            Err(e) => return fail(e),
        }
    }
    let files = match mps_files(&args.dir) {
        Ok(f) if !f.is_empty() => f,
        Ok(_) => return fail(format!("no .mps files in {}", args.dir.display())),
        Err(e) => return fail(e),
    };
    let reported_refs = match &args.reference {
        Some(p) => match read_references(p) {
            Ok(r) => r,
            Err(e) => return fail(e),
        },
        None => BTreeMap::new(),
    };
    if args.seeds.is_empty() {
        return fail("no seeds given");
    }

    let instances: Vec<Result<Instance, String>> = files
        .iter()
        .map(|f| {
            fs::read_to_string(f)
                .map_err(|e| e.to_string())
                .and_then(|t| parse_mps(&t).map_err(|e| e.to_string()))
        })
        .collect();

    let multi_seed = args.seeds.len() > 1;
    let mut jobs = Vec::new();
    for (f, inst) in files.iter().zip(&instances) {
        let name = instance_name(f);
        for &seed in &args.seeds {
            let key = if multi_seed {
                format!("{name}#{seed}")
            } else {
                name.clone()
            };
            for preset in &presets {
                jobs.push(Job {
                    key: key.clone(),
                    file: f,
                    instance: inst,
                    preset,
                    seed,
                });
            }
        }
    }

    let run_job = |job: &Job| -> (RunRecord, RunRow) {
        let mut row = RunRow {
            instance: job.key.clone(),
            file: job.file.display().to_string(),
            config: job.preset.name.clone(),
            seed: job.seed,
            status: "error".into(),
            best_obj: None,
            steps: None,
            restarts: None,
            t_max: None,
            error: None,
        };
        let mut record = RunRecord {
            instance: job.key.clone(),
            config: job.preset.name.clone(),
            trace: None,
            error: None,
        };
        let inst = match job.instance {
            Ok(i) => i,
            Err(e) => {
                row.error = Some(e.clone());
                record.error = Some(e.clone());
                return (record, row);
            }
        };
        let mut params = job.preset.params.clone();
        params.seed = job.seed;
        match catch_unwind(AssertUnwindSafe(|| run_engine(inst, params))) {
            Ok(r) => {
                row.status = status(&r).into();
                row.best_obj = r.best.as_ref().map(|_| inst.reported_objective(r.best_obj));
                row.steps = Some(r.stats.steps);
                row.restarts = Some(r.stats.restarts);
                row.t_max = Some(r.trace.t_max);
                record.trace = Some(comparable_trace(inst, &r.trace));
            }
            Err(_) => {
                let msg = "solver panicked".to_string();
                row.error = Some(msg.clone());
                record.error = Some(msg);
            }
        }
        (record, row)
    };

    let results: Vec<(RunRecord, RunRow)> = match args.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| jobs.par_iter().map(run_job).collect()),
            Err(e) => return fail(e),
        },
        None => jobs.par_iter().map(run_job).collect(),
    };
    let (records, rows): (Vec<RunRecord>, Vec<RunRow>) = results.into_iter().unzip();

    // references are given in each model's sense; traces are minimization
    let mut references = BTreeMap::new();
    for (f, inst) in files.iter().zip(&instances) {
        let name = instance_name(f);
        let (Some(&v), Ok(inst)) = (reported_refs.get(&name), inst) else {
            continue;
        };
        let v = if inst.is_maximize() { -v } else { v };
        for &seed in &args.seeds {
            let key = if multi_seed {
                format!("{name}#{seed}")
            } else {
                name.clone()
            };
            references.insert(key, v);
        }
    }
    let report = match aggregate(&records, &references) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };

    if let Err(e) = write_outputs(&args.out, &report, &rows) {
        return fail(e);
    }
    for s in &report.summaries {
        println!(
            "{}: feas {}/{} win {} mean P(T) {:.4}",
            s.config, s.feas, s.instances, s.win, s.mean_primal_integral
        );
    }
    if !report.errored.is_empty() {
        println!("errored: {}", report.errored.join(", "));
    }
    ExitCode::SUCCESS
}

fn write_outputs(out: &Path, report: &Report, rows: &[RunRow]) -> Result<(), String> {
    fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
    debug_assert_eq!(report.schema, SCHEMA);
    let json = serde_json::to_string_pretty(&BenchReport { report, runs: rows })
        .map_err(|e| e.to_string())?;
    fs::write(out.join("report.json"), json + "\n").map_err(|e| e.to_string())?;

    let mut w = csv::Writer::from_path(out.join("runs.csv")).map_err(|e| e.to_string())?;
    for r in rows {
        w.serialize(r).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())?;

    let mut w = csv::Writer::from_path(out.join("summary.csv")).map_err(|e| e.to_string())?;
    for s in &report.summaries {
        w.serialize(SummaryRow {
            config: &s.config,
            instances: s.instances,
            feas: s.feas,
            win: s.win,
            mean_primal_integral: s.mean_primal_integral,
            mean_normalized_primal_integral: s.mean_normalized_primal_integral,
        })
        .map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}
