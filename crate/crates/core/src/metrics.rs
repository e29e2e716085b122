//! Primal gap, primal gap function and primal integral, plus `#feas` /
//! `#win` aggregation over a run matrix.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Objective comparisons for `#win` use this absolute tolerance.
pub const WIN_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub t: f64,
    pub obj: f64,
}

/// Improving incumbent objectives (minimization sense) over `[0, t_max]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimalTrace {
    pub events: Vec<TraceEvent>,
    pub t_max: f64,
    pub reference_obj: Option<f64>,
}

#[derive(Debug, Error, PartialEq)]
pub enum TraceError {
    #[error("event time {0} is outside [0, t_max]")]
    OutOfRange(f64),
    #[error("event times must be strictly increasing")]
    NotIncreasing,
    #[error("event objectives must be strictly improving")]
    NotImproving,
}

impl PrimalTrace {
    pub fn new(t_max: f64) -> Self {
        PrimalTrace {
            events: Vec::new(),
            t_max,
            reference_obj: None,
        }
    }

    /// Appends an incumbent. An event at the same time as the previous one
    /// replaces it, since only the best solution at a given instant counts.
    pub fn record(&mut self, t: f64, obj: f64) {
        if let Some(last) = self.events.last_mut() {
            if t <= last.t {
                last.obj = last.obj.min(obj);
                return;
            }
        }
        self.events.push(TraceEvent { t, obj });
    }

    pub fn validate(&self) -> Result<(), TraceError> {
        let mut prev: Option<TraceEvent> = None;
        for e in &self.events {
            if !(0.0..=self.t_max).contains(&e.t) {
                return Err(TraceError::OutOfRange(e.t));
            }
            if let Some(p) = prev {
                if e.t <= p.t {
                    return Err(TraceError::NotIncreasing);
                }
                if e.obj >= p.obj {
                    return Err(TraceError::NotImproving);
                }
            }
            prev = Some(*e);
        }
        Ok(())
    }

    pub fn best(&self) -> Option<f64> {
        self.events.last().map(|e| e.obj)
    }

    pub fn with_reference(mut self, reference: Option<f64>) -> Self {
        self.reference_obj = reference;
        self
    }
}

/// Primal gap of `found` against `reference`.
pub fn primal_gap(found: f64, reference: f64) -> f64 {
    if reference.abs() == 0.0 && found.abs() == 0.0 {
        0.0
    } else if reference * found < 0.0 {
        1.0
    } else {
        (reference - found).abs() / reference.abs().max(found.abs())
    }
}

/// `p(t)`: 1 before the first incumbent (or without a reference), else the
/// gap of the incumbent at `t`.
pub fn primal_gap_function(trace: &PrimalTrace, t: f64) -> f64 {
    let Some(reference) = trace.reference_obj else {
        return 1.0;
    };
    let idx = trace.events.partition_point(|e| e.t <= t);
    if idx == 0 {
        1.0
    } else {
        primal_gap(trace.events[idx - 1].obj, reference)
    }
}

/// `P(T) = Σ p(t_{i-1}) (t_i - t_{i-1})` with `t_0 = 0` and `t_I = t_max`.
pub fn primal_integral(trace: &PrimalTrace) -> f64 {
    let mut total = 0.0;
    let mut prev_t = 0.0;
    let mut gap = 1.0;
    for e in &trace.events {
        total += gap * (e.t - prev_t);
        prev_t = e.t;
        gap = match trace.reference_obj {
            Some(r) => primal_gap(e.obj, r),
            None => 1.0,
        };
    }
    total + gap * (trace.t_max - prev_t)
}

/// One cell of a run matrix. `trace` is `None` when the run errored.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub config: String,
    pub trace: Option<PrimalTrace>,
    pub error: Option<String>,
}

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("no run for instance {instance} under config {config}")]
    MissingRun { instance: String, config: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceSource {
    /// Supplied best-known or optimal value.
    Provided,
    /// Best objective found by any config in the matrix.
    Matrix,
    /// Nothing feasible anywhere; every gap is 1.
    None,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceRow {
    pub instance: String,
    pub config: String,
    pub best_obj: Option<f64>,
    pub feasible: bool,
    pub win: bool,
    pub primal_integral: f64,
    pub reference_obj: Option<f64>,
    pub reference_source: ReferenceSource,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub config: String,
    pub feas: usize,
    pub win: usize,
    pub mean_primal_integral: f64,
    pub mean_normalized_primal_integral: f64,
    pub instances: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub summaries: Vec<ConfigSummary>,
    pub rows: Vec<InstanceRow>,
    /// Instances left out because at least one of their runs errored.
    pub errored: Vec<String>,
    /// True when some reference value came from the matrix itself.
    pub matrix_references: bool,
}

/// Builds the `#feas` / `#win` / mean `P(T)` report. Every config must have
/// a record for every instance. Instances with an errored run are excluded
/// from the summaries and listed in `errored`.
pub fn aggregate(
    records: &[RunRecord],
    references: &BTreeMap<String, f64>,
) -> Result<Report, MetricsError> {
    let instances: BTreeSet<&str> = records.iter().map(|r| r.instance.as_str()).collect();
    let configs: BTreeSet<&str> = records.iter().map(|r| r.config.as_str()).collect();
    let cell: BTreeMap<(&str, &str), &RunRecord> = records
        .iter()
        .map(|r| ((r.instance.as_str(), r.config.as_str()), r))
        .collect();

    for &inst in &instances {
        for &cfg in &configs {
            if !cell.contains_key(&(inst, cfg)) {
                return Err(MetricsError::MissingRun {
                    instance: inst.to_string(),
                    config: cfg.to_string(),
                });
            }
        }
    }

    let mut rows = Vec::new();
    let mut errored = Vec::new();
    let mut matrix_references = false;
    for &inst in &instances {
        let runs: Vec<&RunRecord> = configs.iter().map(|&c| cell[&(inst, c)]).collect();
        if runs.iter().any(|r| r.trace.is_none()) {
            errored.push(inst.to_string());
            continue;
        }
        let best_found = runs
            .iter()
            .filter_map(|r| r.trace.as_ref().and_then(|t| t.best()))
            .fold(None, |acc: Option<f64>, v| {
                Some(acc.map_or(v, |a| a.min(v)))
            });
        let (reference, source) = match references.get(inst) {
            Some(&r) => (Some(r), ReferenceSource::Provided),
            None => match best_found {
                Some(b) => {
                    matrix_references = true;
                    (Some(b), ReferenceSource::Matrix)
                }
                None => (None, ReferenceSource::None),
            },
        };
        for r in runs {
            let trace = r.trace.clone().unwrap().with_reference(reference);
            let best = trace.best();
            let win = match (best, best_found) {
                (Some(b), Some(all)) => (b - all).abs() <= WIN_TOL,
                _ => false,
            };
            rows.push(InstanceRow {
                instance: inst.to_string(),
                config: r.config.clone(),
                best_obj: best,
                feasible: best.is_some(),
                win,
                primal_integral: primal_integral(&trace),
                reference_obj: reference,
                reference_source: source.clone(),
            });
        }
    }

    let mut summaries = Vec::new();
    for &cfg in &configs {
        let mine: Vec<&InstanceRow> = rows.iter().filter(|r| r.config == cfg).collect();
        let n = mine.len();
        let mean = |f: &dyn Fn(&InstanceRow) -> f64| {
            if n == 0 {
                0.0
            } else {
                mine.iter().map(|r| f(r)).sum::<f64>() / n as f64
            }
        };
        let t_max: BTreeMap<(&str, &str), f64> = records
            .iter()
            .filter_map(|r| {
                r.trace
                    .as_ref()
                    .map(|t| ((r.instance.as_str(), r.config.as_str()), t.t_max))
            })
            .collect();
        summaries.push(ConfigSummary {
            config: cfg.to_string(),
            feas: mine.iter().filter(|r| r.feasible).count(),
            win: mine.iter().filter(|r| r.win).count(),
            mean_primal_integral: mean(&|r| r.primal_integral),
            mean_normalized_primal_integral: mean(&|r| {
                let t = t_max[&(r.instance.as_str(), r.config.as_str())];
                if t > 0.0 {
                    r.primal_integral / t
                } else {
                    0.0
                }
            }),
            instances: n,
        });
    }

    Ok(Report {
        schema: 1,
        summaries,
        rows,
        errored,
        matrix_references,
    })
}
