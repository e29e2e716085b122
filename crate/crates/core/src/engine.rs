//! Three-mode local search.
//!
//! Each iteration first records the current assignment as the incumbent if
//! it is feasible and better, then dispatches on the state:
//!
//! * **Search** (no incumbent yet): tight moves from violated rows, scored
//!   by violation reduction only.
//! * **Improve** (incumbent known, current feasible): lift moves; a unit
//!   step along the objective when none improves.
//! * **Restore** (incumbent known, current infeasible): tight moves from
//!   violated rows, then from satisfied rows, scored with the objective
//!   term live.
//!
//! Search and Restore fall back to a weight update plus the best move from
//! one random violated row when no positive move is sampled. The search
//! restarts from a crossover of the incumbent and random values after
//! `restart_steps` iterations without improvement.

use std::time::{Duration, Instant};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::lift_move::{lm_candidate_cached, score_lm};
use crate::metrics::PrimalTrace;
use crate::model::{Assignment, Instance, Tracker};
use crate::tight_move::{
    score_improve_delta, score_reduce_delta, tm_from_slack, Direction, ScoreMode, TmOperation,
    WeightState,
};

/// Perturbation used in Improve mode when no lift move improves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMove {
    /// `x_j ± 1`.
    Unit,
    /// Jump to the improving global bound.
    Bound,
    /// Random step in `[1, distance to the improving bound]`.
    Random,
}

/// Operator used by Search and Restore.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveOperator {
    Tight,
    /// Move by a fixed increment in the tightening direction, clamped to
    /// the global bounds. Ablation only.
    FixedIncrement(i64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Params {
    pub beta: f64,
    pub sp: f64,
    pub cv: usize,
    pub ov: usize,
    pub cs: usize,
    pub os: usize,
    pub or: usize,
    pub tabu_base: u64,
    pub tabu_rand: u64,
    pub restart_steps: u64,
    pub time_limit: Option<Duration>,
    pub step_limit: Option<u64>,
    pub seed: u64,
    pub unit_move: UnitMove,
    pub operator: MoveOperator,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            beta: 0.5,
            sp: 0.0003,
            cv: 3,
            ov: 2000,
            cs: 30,
            os: 350,
            or: 150,
            tabu_base: 3,
            tabu_rand: 10,
            restart_steps: 1_500_000,
            time_limit: Some(Duration::from_secs(10)),
            step_limit: None,
            seed: 1,
            unit_move: UnitMove::Unit,
            operator: MoveOperator::Tight,
        }
    }
}

impl Params {
    pub fn with_step_limit(steps: u64) -> Self {
        Params {
            time_limit: None,
            step_limit: Some(steps),
            ..Params::default()
        }
    }

    /// Trace timestamps count iterations whenever a step budget is set.
    pub fn uses_step_clock(&self) -> bool {
        self.step_limit.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Search,
    Improve,
    Restore,
}

/// How an applied move was generated. The first four are the only ways the
/// default configuration changes the assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// Tight move applied to an infeasible assignment.
    Tight,
    /// Lift move applied to a feasible assignment.
    Lift,
    /// `±1` step along the objective.
    UnitIncrement,
    /// Jump to a global bound.
    BoundJump,
    /// Random-size step (ablation).
    RandomStep,
    /// Fixed-increment replacement of the tight move (ablation).
    FixedIncrement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MoveEvent {
    pub step: u64,
    pub mode: Mode,
    pub kind: MoveKind,
    pub var: usize,
    pub old_value: i64,
    pub new_value: i64,
    /// Last step at which the reverse tight move stays forbidden.
    pub tabu_until: Option<u64>,
}

/// Hooks for instrumented runs. All methods default to no-ops.
pub trait Observer {
    fn on_dispatch(&mut self, _step: u64, _mode: Mode, _has_best: bool, _feasible: bool) {}
    fn on_move(&mut self, _event: &MoveEvent, _current: &Assignment, _feasible: bool) {}
    fn on_restart(&mut self, _step: u64, _current: &Assignment) {}
}

impl Observer for () {}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunStats {
    pub steps: u64,
    pub restarts: u64,
    pub mode_transitions: u64,
    pub weight_updates: u64,
    pub skipped_steps: u64,
    /// Improve mode found no bound-respecting unit move: the incumbent is
    /// optimal.
    pub proved_optimal: bool,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub best: Option<Assignment>,
    /// Internal (minimization) objective, `+inf` without a solution.
    pub best_obj: f64,
    pub trace: PrimalTrace,
    pub stats: RunStats,
    pub elapsed: Duration,
}

/// Outcome of one mode step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Moved,
    /// Nothing applicable; weights were updated and the step skipped.
    Skipped,
    /// The incumbent cannot be improved.
    Optimal,
}

/// Initial assignment: `x^l` if positive, `x^u` if negative, else 0.
pub fn initialize(inst: &Instance) -> Assignment {
    Assignment(
        (0..inst.num_vars())
            .map(|j| match (inst.lower(j), inst.upper(j)) {
                (Some(l), _) if l > 0 => l,
                (_, Some(u)) if u < 0 => u,
                _ => 0,
            })
            .collect(),
    )
}

const FALLBACK_RETRIES: usize = 10;
const RESTART_RADIUS: i64 = 1_000_000;
const CLOCK_CHECK_INTERVAL: u64 = 256;

#[derive(Clone, Copy, Debug)]
struct Candidate {
    var: usize,
    new_value: i64,
    kind: MoveKind,
}

pub struct Solver<'a> {
    inst: &'a Instance,
    params: Params,
    tracker: Tracker,
    weights: WeightState,
    best: Option<Assignment>,
    best_obj: f64,
    // last step at which increasing / decreasing x_j by a tight move is forbidden
    no_increase_until: Vec<Option<u64>>,
    no_decrease_until: Vec<Option<u64>>,
    last_moved: Vec<u64>,
    step: u64,
    last_improve_step: u64,
    last_mode: Option<Mode>,
    rng: ChaCha8Rng,
    trace: PrimalTrace,
    stats: RunStats,
    started: Instant,
    reservoir: Vec<Candidate>,
    row_sample: Vec<usize>,
}

impl<'a> Solver<'a> {
    pub fn new(inst: &'a Instance, params: Params) -> Self {
        Self::with_assignment(inst, params, initialize(inst))
    }

    pub fn with_assignment(inst: &'a Instance, params: Params, start: Assignment) -> Self {
        assert_eq!(start.len(), inst.num_vars());
        let n = inst.num_vars();
        let t_max = match (params.step_limit, params.time_limit) {
            (Some(s), _) => s as f64,
            (None, Some(t)) => t.as_secs_f64(),
            (None, None) => f64::INFINITY,
        };
        Solver {
            inst,
            tracker: Tracker::new(inst, start),
            weights: WeightState::new(inst.num_cons(), params.sp),
            best: None,
            best_obj: f64::INFINITY,
            no_increase_until: vec![None; n],
            no_decrease_until: vec![None; n],
            last_moved: vec![0; n],
            step: 0,
            last_improve_step: 0,
            last_mode: None,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            trace: PrimalTrace::new(t_max),
            stats: RunStats::default(),
            started: Instant::now(),
            reservoir: Vec::new(),
            row_sample: Vec::new(),
            params,
        }
    }

    pub fn current(&self) -> &Assignment {
        self.tracker.assignment()
    }

    pub fn is_feasible(&self) -> bool {
        self.tracker.is_feasible()
    }

    pub fn weights(&self) -> &WeightState {
        &self.weights
    }

    pub fn weights_mut(&mut self) -> &mut WeightState {
        &mut self.weights
    }

    pub fn best(&self) -> Option<&Assignment> {
        self.best.as_ref()
    }

    pub fn best_obj(&self) -> f64 {
        self.best_obj
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    /// Installs an incumbent directly (used to drive Restore in tests).
    pub fn set_best(&mut self, best: Assignment, obj: f64) {
        self.best = Some(best);
        self.best_obj = obj;
    }

    pub fn mode(&self) -> Mode {
        match (&self.best, self.tracker.is_feasible()) {
            (None, _) => Mode::Search,
            (Some(_), true) => Mode::Improve,
            (Some(_), false) => Mode::Restore,
        }
    }

    /// True when a tight move of `x_j` in direction `dir` is forbidden at
    /// the current step.
    pub fn is_tabu(&self, j: usize, dir: Direction) -> bool {
        let until = match dir {
            Direction::Increase => self.no_increase_until[j],
            Direction::Decrease => self.no_decrease_until[j],
        };
        until.is_some_and(|u| self.step <= u)
    }

    fn clock(&self) -> f64 {
        if self.params.uses_step_clock() {
            self.step as f64
        } else {
            self.started.elapsed().as_secs_f64()
        }
    }

    /// Records the current assignment as incumbent when feasible and better.
    fn update_best(&mut self) -> bool {
        if !self.tracker.is_feasible() {
            return false;
        }
        let obj = self.tracker.objective();
        let margin = 1e-9 * self.best_obj.abs().max(1.0);
        if self.best.is_none() || obj < self.best_obj - margin {
            self.best = Some(self.tracker.assignment().clone());
            self.best_obj = obj;
            self.last_improve_step = self.step;
            let t = self.clock().min(self.trace.t_max);
            self.trace.record(t, obj);
            true
        } else {
            false
        }
    }

    fn budget_exhausted(&self) -> bool {
        if let Some(limit) = self.params.step_limit {
            if self.step >= limit {
                return true;
            }
        }
        if let Some(limit) = self.params.time_limit {
            if self.step.is_multiple_of(CLOCK_CHECK_INTERVAL) && self.started.elapsed() >= limit {
                return true;
            }
        }
        false
    }

    pub fn run(self) -> RunResult {
        self.run_observed(&mut ())
    }

    pub fn run_observed<O: Observer + ?Sized>(mut self, obs: &mut O) -> RunResult {
        self.started = Instant::now();
        loop {
            if self.budget_exhausted() {
                break;
            }
            self.update_best();
            let mode = self.mode();
            if self.last_mode.is_some_and(|m| m != mode) {
                self.stats.mode_transitions += 1;
            }
            self.last_mode = Some(mode);
            obs.on_dispatch(
                self.step,
                mode,
                self.best.is_some(),
                self.tracker.is_feasible(),
            );
            let outcome = match mode {
                Mode::Search => self.search_step_observed(obs),
                Mode::Improve => self.improve_step_observed(obs),
                Mode::Restore => self.restore_step_observed(obs),
            };
            if outcome == StepOutcome::Optimal {
                self.stats.proved_optimal = true;
                break;
            }
            self.step += 1;
            if self.step - self.last_improve_step >= self.params.restart_steps {
                self.restart();
                obs.on_restart(self.step, self.tracker.assignment());
            }
        }
        // a move on the final step may have produced an improvement
        if !self.stats.proved_optimal {
            self.update_best();
        }
        self.stats.steps = self.step;
        RunResult {
            best: self.best,
            best_obj: self.best_obj,
            trace: self.trace,
            stats: self.stats,
            elapsed: self.started.elapsed(),
        }
    }

    pub fn search_step(&mut self) -> StepOutcome {
        self.search_step_observed(&mut ())
    }

    pub fn improve_step(&mut self) -> StepOutcome {
        self.improve_step_observed(&mut ())
    }

    pub fn restore_step(&mut self) -> StepOutcome {
        self.restore_step_observed(&mut ())
    }

    fn search_step_observed<O: Observer + ?Sized>(&mut self, obs: &mut O) -> StepOutcome {
        let (cv, ov) = (self.params.cv, self.params.ov);
        if let Some((c, score)) = self.best_from_violated(cv, ov, ScoreMode::Search) {
            if score > 0.0 {
                self.apply(c, Mode::Search, obs);
                return StepOutcome::Moved;
            }
        }
        self.update_weights();
        self.random_fallback(ScoreMode::Search, Mode::Search, obs)
    }

    fn restore_step_observed<O: Observer + ?Sized>(&mut self, obs: &mut O) -> StepOutcome {
        let p = &self.params;
        let (cv, ov, cs, os) = (p.cv, p.ov, p.cs, p.os);
        if let Some((c, score)) = self.best_from_violated(cv, ov, ScoreMode::Restore) {
            if score > 0.0 {
                self.apply(c, Mode::Restore, obs);
                return StepOutcome::Moved;
            }
        }
        if let Some((c, score)) = self.best_from_satisfied(cs, os) {
            if score > 0.0 {
                self.apply(c, Mode::Restore, obs);
                return StepOutcome::Moved;
            }
        }
        self.update_weights();
        self.random_fallback(ScoreMode::Restore, Mode::Restore, obs)
    }

    fn improve_step_observed<O: Observer + ?Sized>(&mut self, obs: &mut O) -> StepOutcome {
        let inst = self.inst;
        let mut best: Option<(Candidate, f64)> = None;
        let mut ties = 0u32;
        for &j in inst.objective_vars() {
            let Some(op) =
                lm_candidate_cached(inst, self.tracker.activities(), j, self.tracker.value(j))
            else {
                continue;
            };
            let score = score_lm(inst, &op);
            if score <= 0.0 {
                continue;
            }
            let cand = Candidate {
                var: j,
                new_value: op.new_value,
                kind: MoveKind::Lift,
            };
            self.consider(&mut best, &mut ties, cand, score);
        }
        if let Some((c, _)) = best {
            self.apply(c, Mode::Improve, obs);
            return StepOutcome::Moved;
        }
        match self.perturbation() {
            Some(c) => {
                self.apply(c, Mode::Improve, obs);
                StepOutcome::Moved
            }
            None => StepOutcome::Optimal,
        }
    }

    /// Unit incremental move (or its ablation variants) on a random
    /// objective variable that can still move in its improving direction.
    fn perturbation(&mut self) -> Option<Candidate> {
        let inst = self.inst;
        let mut pool: Vec<usize> = inst.objective_vars().to_vec();
        while !pool.is_empty() {
            let k = self.rng.gen_range(0..pool.len());
            let j = pool.swap_remove(k);
            let up = inst.obj_coef(j) < 0.0;
            let value = self.tracker.value(j);
            let bound = if up { inst.upper(j) } else { inst.lower(j) };
            let distance = match bound {
                Some(b) => (b as i128 - value as i128)
                    .unsigned_abs()
                    .min(i64::MAX as u128) as i64,
                None => i64::MAX,
            };
            if distance == 0 {
                continue;
            }
            let (step, kind) = match self.params.unit_move {
                UnitMove::Unit => (1, MoveKind::UnitIncrement),
                UnitMove::Bound => match bound {
                    Some(_) => (distance, MoveKind::BoundJump),
                    None => continue,
                },
                UnitMove::Random => {
                    let cap = distance.min(RESTART_RADIUS);
                    (self.rng.gen_range(1..=cap), MoveKind::RandomStep)
                }
            };
            let new_value = if up { value + step } else { value - step };
            return Some(Candidate {
                var: j,
                new_value,
                kind,
            });
        }
        None
    }

    fn update_weights(&mut self) {
        let best = self.best.as_ref().map(|_| self.best_obj);
        let tracker = &self.tracker;
        self.weights.update(
            tracker.violated(),
            |i| tracker.is_violated(i),
            tracker.objective(),
            best,
            &mut self.rng,
        );
        self.stats.weight_updates += 1;
    }

    /// Candidate move of `x_j` derived from row `i`, honouring tabu.
    fn row_candidate(&self, j: usize, i: usize, coef: f64) -> Option<Candidate> {
        let inst = self.inst;
        let value = self.tracker.value(j);
        let slack = self.tracker.slack(inst, i);
        let cand = match self.params.operator {
            MoveOperator::Tight => {
                let op: TmOperation = tm_from_slack(inst, j, i, coef, slack, value)?;
                Candidate {
                    var: j,
                    new_value: op.new_value,
                    kind: MoveKind::Tight,
                }
            }
            MoveOperator::FixedIncrement(inc) => {
                let violated = self.tracker.is_violated(i);
                // violated rows: lower the activity; satisfied rows: raise it
                let up = (coef < 0.0) == violated;
                let target = if up {
                    inst.upper(j).map_or(value.saturating_add(inc), |u| {
                        u.min(value.saturating_add(inc))
                    })
                } else {
                    inst.lower(j).map_or(value.saturating_sub(inc), |l| {
                        l.max(value.saturating_sub(inc))
                    })
                };
                if target == value || (!violated && !self.fixed_keeps_row(i, coef, target - value))
                {
                    return None;
                }
                Candidate {
                    var: j,
                    new_value: target,
                    kind: MoveKind::FixedIncrement,
                }
            }
        };
        if self.is_tabu(j, Direction::of(value, cand.new_value)) {
            None
        } else {
            Some(cand)
        }
    }

    fn fixed_keeps_row(&self, i: usize, coef: f64, delta: i64) -> bool {
        self.tracker.slack(self.inst, i) - coef * delta as f64 >= -crate::model::FEAS_TOL
    }

    fn score(&self, c: &Candidate, mode: ScoreMode) -> f64 {
        let old = self.tracker.value(c.var);
        let delta = c.new_value as f64 - old as f64;
        score_reduce_delta(
            self.inst,
            self.tracker.activities(),
            c.var,
            delta,
            &self.weights,
            self.params.beta,
        ) + score_improve_delta(
            self.inst,
            c.var,
            delta,
            self.tracker.objective(),
            self.best_obj,
            &self.weights,
            mode,
        )
    }

    /// Keeps the better of `best` and `cand`: higher score, then the
    /// variable modified least recently, then uniformly among equals.
    fn consider(
        &mut self,
        best: &mut Option<(Candidate, f64)>,
        ties: &mut u32,
        cand: Candidate,
        score: f64,
    ) {
        match best {
            None => {
                *best = Some((cand, score));
                *ties = 1;
            }
            Some((b, bs)) => {
                let (lc, lb) = (self.last_moved[cand.var], self.last_moved[b.var]);
                if score > *bs || (score == *bs && lc < lb) {
                    *best = Some((cand, score));
                    *ties = 1;
                } else if score == *bs && lc == lb {
                    *ties += 1;
                    if self.rng.gen_range(0..*ties) == 0 {
                        *best = Some((cand, score));
                    }
                }
            }
        }
    }

    /// Reservoir-samples up to `limit` candidates from the rows in
    /// `self.row_sample`, in row-major order.
    fn fill_reservoir(&mut self, limit: usize) {
        self.reservoir.clear();
        let mut seen = 0usize;
        let rows = std::mem::take(&mut self.row_sample);
        for &i in &rows {
            for &(j, coef) in &self.inst.row(i).terms {
                let Some(c) = self.row_candidate(j, i, coef) else {
                    continue;
                };
                seen += 1;
                if self.reservoir.len() < limit {
                    self.reservoir.push(c);
                } else {
                    let r = self.rng.gen_range(0..seen);
                    if r < limit {
                        self.reservoir[r] = c;
                    }
                }
            }
        }
        self.row_sample = rows;
    }

    fn best_in_reservoir(&mut self, mode: ScoreMode) -> Option<(Candidate, f64)> {
        let cands = std::mem::take(&mut self.reservoir);
        let mut best = None;
        let mut ties = 0;
        for c in &cands {
            let s = self.score(c, mode);
            self.consider(&mut best, &mut ties, *c, s);
        }
        self.reservoir = cands;
        best
    }

    fn best_from_violated(
        &mut self,
        rows: usize,
        ops: usize,
        mode: ScoreMode,
    ) -> Option<(Candidate, f64)> {
        let violated = self.tracker.violated();
        self.row_sample.clear();
        if violated.len() <= rows {
            self.row_sample.extend_from_slice(violated);
            // keep the enumeration order independent of the swap_remove history
            self.row_sample.sort_unstable();
        } else {
            let picks = index::sample(&mut self.rng, violated.len(), rows);
            self.row_sample.extend(picks.iter().map(|k| violated[k]));
        }
        self.fill_reservoir(ops);
        self.best_in_reservoir(mode)
    }

    fn best_from_satisfied(&mut self, rows: usize, ops: usize) -> Option<(Candidate, f64)> {
        let m = self.inst.num_cons();
        let satisfied = m - self.tracker.violated().len();
        self.row_sample.clear();
        if satisfied == 0 {
            return None;
        }
        if satisfied <= rows {
            self.row_sample
                .extend((0..m).filter(|&i| !self.tracker.is_violated(i)));
        } else {
            while self.row_sample.len() < rows {
                let i = self.rng.gen_range(0..m);
                if !self.tracker.is_violated(i) && !self.row_sample.contains(&i) {
                    self.row_sample.push(i);
                }
            }
        }
        self.fill_reservoir(ops);
        self.best_in_reservoir(ScoreMode::Restore)
    }

    fn random_fallback<O: Observer + ?Sized>(
        &mut self,
        score_mode: ScoreMode,
        mode: Mode,
        obs: &mut O,
    ) -> StepOutcome {
        for _ in 0..FALLBACK_RETRIES {
            let violated = self.tracker.violated();
            if violated.is_empty() {
                break;
            }
            let i = violated[self.rng.gen_range(0..violated.len())];
            self.row_sample.clear();
            self.row_sample.push(i);
            self.fill_reservoir(self.params.or);
            if let Some((c, _)) = self.best_in_reservoir(score_mode) {
                self.apply(c, mode, obs);
                return StepOutcome::Moved;
            }
        }
        self.update_weights();
        self.stats.skipped_steps += 1;
        StepOutcome::Skipped
    }

    fn apply<O: Observer + ?Sized>(&mut self, c: Candidate, mode: Mode, obs: &mut O) {
        let j = c.var;
        let old = self.tracker.value(j);
        debug_assert!(self.inst.within_bounds(j, c.new_value));
        self.tracker.set(self.inst, j, c.new_value);
        self.last_moved[j] = self.step;
        let tabu_until = match c.kind {
            MoveKind::Tight | MoveKind::FixedIncrement => {
                let tt =
                    self.params.tabu_base + self.rng.gen_range(0..self.params.tabu_rand.max(1));
                let until = self.step + tt;
                match Direction::of(old, c.new_value) {
                    Direction::Increase => self.no_decrease_until[j] = Some(until),
                    Direction::Decrease => self.no_increase_until[j] = Some(until),
                }
                Some(until)
            }
            _ => None,
        };
        let event = MoveEvent {
            step: self.step,
            mode,
            kind: c.kind,
            var: j,
            old_value: old,
            new_value: c.new_value,
            tabu_until,
        };
        obs.on_move(
            &event,
            self.tracker.assignment(),
            self.tracker.is_feasible(),
        );
    }

    /// Crossover of the incumbent and uniform random values within bounds;
    /// weights back to 1, tabu cleared.
    pub fn restart(&mut self) {
        let inst = self.inst;
        let mut next = Vec::with_capacity(inst.num_vars());
        for j in 0..inst.num_vars() {
            let reference = self.best.as_ref().map_or(self.tracker.value(j), |b| b[j]);
            if self.best.is_some() && self.rng.gen_bool(0.5) {
                next.push(reference);
                continue;
            }
            let lo = inst
                .lower(j)
                .unwrap_or_else(|| reference.saturating_sub(RESTART_RADIUS));
            let hi = inst
                .upper(j)
                .unwrap_or_else(|| reference.saturating_add(RESTART_RADIUS));
            next.push(self.rng.gen_range(lo..=hi));
        }
        self.tracker.reset(inst, Assignment(next));
        self.weights.reset();
        self.no_increase_until.iter_mut().for_each(|t| *t = None);
        self.no_decrease_until.iter_mut().for_each(|t| *t = None);
        self.last_improve_step = self.step;
        self.stats.restarts += 1;
    }
}

/// Runs the solver with the given parameters.
pub fn run(inst: &Instance, params: Params) -> RunResult {
    Solver::new(inst, params).run()
}

pub fn run_observed<O: Observer + ?Sized>(
    inst: &Instance,
    params: Params,
    obs: &mut O,
) -> RunResult {
    Solver::new(inst, params).run_observed(obs)
}
