use ilp_ls::engine::{Params, RunResult};
use ilp_ls::model::Instance;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct TracePoint {
    pub t: f64,
    pub obj: f64,
}

#[derive(Serialize)]
pub struct Clock {
    /// `"steps"` or `"seconds"`.
    pub unit: &'static str,
    pub t_max: f64,
}

/// JSON written by `solve --json`.
#[derive(Serialize)]
pub struct SolveReport<'a> {
    pub schema: u32,
    pub instance: &'a str,
    pub status: &'static str,
    /// Objective in the model's own sense.
    pub best_obj: Option<f64>,
    pub steps: u64,
    pub restarts: u64,
    pub mode_transitions: u64,
    pub weight_updates: u64,
    pub clock: Clock,
    pub trace: Vec<TracePoint>,
    /// Absent on the step clock so that reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
    pub params: &'a Params,
}

pub fn status(r: &RunResult) -> &'static str {
    match (&r.best, r.stats.proved_optimal) {
        (None, _) => "no_solution",
        (Some(_), true) => "optimal",
        (Some(_), false) => "feasible",
    }
}

pub fn solve_report<'a>(
    name: &'a str,
    inst: &Instance,
    params: &'a Params,
    r: &RunResult,
) -> SolveReport<'a> {
    let step_clock = params.uses_step_clock();
    SolveReport {
        schema: SCHEMA,
        instance: name,
        status: status(r),
        best_obj: r.best.as_ref().map(|_| inst.reported_objective(r.best_obj)),
        steps: r.stats.steps,
        restarts: r.stats.restarts,
        mode_transitions: r.stats.mode_transitions,
        weight_updates: r.stats.weight_updates,
        clock: Clock {
            unit: if step_clock { "steps" } else { "seconds" },
            t_max: r.trace.t_max,
        },
        trace: r
            .trace
            .events
            .iter()
            .map(|e| TracePoint {
                t: e.t,
                obj: inst.reported_objective(e.obj),
            })
            .collect(),
        wall_time: (!step_clock).then_some(r.elapsed.as_secs_f64()),
        params,
    }
}
