use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ilp-ls"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn copy_fixtures(dir: &Path, names: &[&str]) {
    for n in names {
        fs::copy(fixture(n), dir.join(n)).unwrap();
    }
}

#[test]
fn solve_writes_solution_file() {
    let tmp = TempDir::new().unwrap();
    let sol = tmp.path().join("k.sol");
    let out = run(bin()
        .arg("solve")
        .arg(fixture("knapsack.mps"))
        .args(["--time-limit", "10", "--seed", "7", "--out"])
        .arg(&sol));
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&sol).unwrap();
    assert_eq!(text, "=obj= 7\nx1 1\nx2 1\n");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(bin().args(["solve", "/nonexistent/instance.mps"]));
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn continuous_instance_is_an_input_error() {
    let tmp = TempDir::new().unwrap();
    let out = run(bin()
        .arg("solve")
        .arg(fixture("continuous.mps"))
        .arg("--out")
        .arg(tmp.path().join("c.sol")));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("continuous"));
}

#[test]
fn infeasible_instance_exits_one_with_empty_trace() {
    let tmp = TempDir::new().unwrap();
    let json = tmp.path().join("run.json");
    let sol = tmp.path().join("run.sol");
    let out = run(bin()
        .arg("solve")
        .arg(fixture("infeasible.mps"))
        .args(["--step-limit", "2000", "--json"])
        .arg(&json)
        .arg("--out")
        .arg(&sol));
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "no_solution");
    assert_eq!(v["trace"].as_array().unwrap().len(), 0);
    assert!(v["best_obj"].is_null());
    assert!(!sol.exists());
}

#[test]
fn step_limited_runs_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let json = tmp.path().join(format!("run{k}.json"));
        let sol = tmp.path().join(format!("run{k}.sol"));
        let out = run(bin()
            .arg("solve")
            .arg(fixture("equality.mps"))
            .args([
                "--step-limit",
                "5000",
                "--seed",
                "11",
                "--restart-steps",
                "300",
                "--json",
            ])
            .arg(&json)
            .arg("--out")
            .arg(&sol));
        assert_eq!(out.status.code(), Some(0));
        outputs.push((
            fs::read(&json).unwrap(),
            fs::read(&sol).unwrap(),
            out.stdout,
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
    let v: Value = serde_json::from_slice(&outputs[0].0).unwrap();
    assert_eq!(v["clock"]["unit"], "steps");
    assert!(v.get("wall_time").is_none());
}

#[test]
fn bench_matrix_rows_and_reports() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().join("instances");
    fs::create_dir(&dir).unwrap();
    copy_fixtures(&dir, &["knapsack.mps", "equality.mps", "infeasible.mps"]);
    let report = tmp.path().join("report");
    let out = run(bin()
        .arg("bench")
        .arg(&dir)
        .args(["--seeds", "1,2", "--step-limit", "3000", "--out"])
        .arg(&report));
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let mut rdr = csv::Reader::from_path(report.join("runs.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);

    let v: Value =
        serde_json::from_str(&fs::read_to_string(report.join("report.json")).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    let summary = &v["summaries"][0];
    assert_eq!(summary["config"], "default");
    assert_eq!(summary["feas"], 4);
    assert!(report.join("summary.csv").exists());
}

#[test]
fn bench_isolates_parse_failures() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().join("instances");
    fs::create_dir(&dir).unwrap();
    copy_fixtures(&dir, &["knapsack.mps", "continuous.mps"]);
    fs::write(
        dir.join("broken.mps"),
        "ROWS\n N obj\nCOLUMNS\n    x nowhere 1\n",
    )
    .unwrap();
    let report = tmp.path().join("report");
    let out = run(bin()
        .arg("bench")
        .arg(&dir)
        .args(["--step-limit", "1000", "--out"])
        .arg(&report));
    assert_eq!(out.status.code(), Some(0));
    let v: Value =
        serde_json::from_str(&fs::read_to_string(report.join("report.json")).unwrap()).unwrap();
    let runs = v["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 3);
    for r in runs {
        let ok = r["instance"] == "knapsack";
        assert_eq!(r["status"] == "error", !ok, "{r}");
    }
    let errored: Vec<&str> = v["errored"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap())
        .collect();
    assert_eq!(errored, vec!["broken", "continuous"]);
    assert_eq!(v["summaries"][0]["win"], 1);
}

#[test]
fn bench_applies_time_limit_to_every_run() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().join("instances");
    fs::create_dir(&dir).unwrap();
    copy_fixtures(&dir, &["knapsack.mps"]);
    fs::copy(fixture("knapsack.mps"), dir.join("knapsack2.mps")).unwrap();
    let report = tmp.path().join("report");
    let out = run(bin()
        .arg("bench")
        .arg(&dir)
        .args([
            "--time-limit",
            "10",
            "--seeds",
            "1,2",
            "--config",
            "default",
            "--config",
            "bound:unit_move=bound",
            "--out",
        ])
        .arg(&report));
    assert_eq!(out.status.code(), Some(0));
    let v: Value =
        serde_json::from_str(&fs::read_to_string(report.join("report.json")).unwrap()).unwrap();
    let runs = v["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 8);
    for r in runs {
        assert_eq!(r["t_max"], 10.0);
    }
}

#[test]
fn verify_true_properties_pass() {
    let out = run(bin().args(["verify", "--props", "1,2,3,4", "--facts", "1,2,4"]));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert_eq!(stdout.lines().filter(|l| l.contains(" pass ")).count(), 7);
}

/// Fact 3 does not hold in general, so the full default run reports it and
/// exits nonzero with a counterexample.
#[test]
fn verify_default_reports_fact3_counterexample() {
    let tmp = TempDir::new().unwrap();
    let dump = tmp.path().join("dump.json");
    let out = run(bin().arg("verify").arg("--dump").arg(&dump));
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let failing: Vec<&str> = stdout.lines().filter(|l| l.contains("FAIL")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("fact3"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fact3 counterexample"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(v["suites"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_filter_runs_one_suite() {
    let out = run(bin().args(["verify", "--props", "2"]));
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let suites: Vec<&str> = stdout
        .lines()
        .filter_map(|l| l.split_whitespace().next())
        .filter(|w| w.starts_with("prop") || w.starts_with("fact"))
        .collect();
    assert_eq!(suites, vec!["prop2"]);
}

#[test]
fn verify_catches_injected_tight_move_fault() {
    let out = run(bin().args(["verify", "--props", "2", "--inject-fault", "tm-floor"]));
    assert_ne!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("prop2 counterexample"));
}
