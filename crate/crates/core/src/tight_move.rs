//! Tight moves: set one variable so that one chosen row becomes as tight
//! as the variable's global bounds allow. Scored against per-row weights
//! that follow a probabilistic additive (PAWS-style) scheme.

use rand::Rng;
use serde::Serialize;

use crate::model::{saturate_i64, slack, snap_ceil, snap_floor, Assignment, Instance, FEAS_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increase,
    Decrease,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Increase => Direction::Decrease,
            Direction::Decrease => Direction::Increase,
        }
    }

    pub fn of(old: i64, new: i64) -> Self {
        if new > old {
            Direction::Increase
        } else {
            Direction::Decrease
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TmOperation {
    pub var: usize,
    pub row: usize,
    pub old_value: i64,
    pub new_value: i64,
}

impl TmOperation {
    pub fn direction(&self) -> Direction {
        Direction::of(self.old_value, self.new_value)
    }

    pub fn delta(&self) -> f64 {
        self.new_value as f64 - self.old_value as f64
    }
}

/// Room to move `x_j` up from `value`, `None` when unbounded.
fn room_up(inst: &Instance, j: usize, value: i64) -> Option<i64> {
    inst.upper(j).map(|u| u.saturating_sub(value).max(0))
}

fn room_down(inst: &Instance, j: usize, value: i64) -> Option<i64> {
    inst.lower(j).map(|l| value.saturating_sub(l).max(0))
}

fn capped(step: i64, room: Option<i64>) -> i64 {
    room.map_or(step, |r| step.min(r))
}

/// Tight move of `x_j` (coefficient `coef`) against a row with the given
/// slack. Shared by [`tm_candidate`] and the engine's cached path.
pub fn tm_from_slack(
    inst: &Instance,
    j: usize,
    row: usize,
    coef: f64,
    slack: f64,
    value: i64,
) -> Option<TmOperation> {
    debug_assert!(coef != 0.0);
    let (dir, step) = if slack < -FEAS_TOL {
        let ratio = slack / coef;
        if coef < 0.0 {
            let s = saturate_i64(snap_ceil(ratio));
            (Direction::Increase, capped(s, room_up(inst, j, value)))
        } else {
            let s = saturate_i64(snap_floor(ratio)).saturating_abs();
            (Direction::Decrease, capped(s, room_down(inst, j, value)))
        }
    } else {
        let ratio = slack.max(0.0) / coef;
        if coef < 0.0 {
            let s = saturate_i64(snap_ceil(ratio)).saturating_abs();
            (Direction::Decrease, capped(s, room_down(inst, j, value)))
        } else {
            let s = saturate_i64(snap_floor(ratio));
            (Direction::Increase, capped(s, room_up(inst, j, value)))
        }
    };
    if step <= 0 {
        return None;
    }
    let new_value = match dir {
        Direction::Increase => value.checked_add(step)?,
        Direction::Decrease => value.checked_sub(step)?,
    };
    Some(TmOperation {
        var: j,
        row,
        old_value: value,
        new_value,
    })
}

/// `tm(x_j, con_i, α)`; `None` for a zero step or when `x_j` is not in row `i`.
pub fn tm_candidate(inst: &Instance, j: usize, i: usize, a: &Assignment) -> Option<TmOperation> {
    let coef = inst.row(i).coef(j)?;
    tm_from_slack(inst, j, i, coef, slack(inst, i, a), a[j])
}

/// Constraint and objective weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightState {
    con: Vec<u32>,
    obj: u32,
    ul_con: u32,
    ul_obj: u32,
    sp: f64,
}

impl WeightState {
    pub fn new(num_cons: usize, sp: f64) -> Self {
        let ul_con = (num_cons as u64).max(1000).min(u32::MAX as u64) as u32;
        WeightState {
            con: vec![1; num_cons],
            obj: 1,
            ul_con,
            ul_obj: (ul_con / 10).max(1),
            sp,
        }
    }

    pub fn con(&self, i: usize) -> u32 {
        self.con[i]
    }

    pub fn con_weights(&self) -> &[u32] {
        &self.con
    }

    pub fn obj(&self) -> u32 {
        self.obj
    }

    pub fn ul_con(&self) -> u32 {
        self.ul_con
    }

    pub fn ul_obj(&self) -> u32 {
        self.ul_obj
    }

    pub fn sp(&self) -> f64 {
        self.sp
    }

    pub fn set_con(&mut self, i: usize, w: u32) {
        self.con[i] = w.clamp(1, self.ul_con);
    }

    pub fn set_obj(&mut self, w: u32) {
        self.obj = w.clamp(1, self.ul_obj);
    }

    pub fn reset(&mut self) {
        self.con.iter_mut().for_each(|w| *w = 1);
        self.obj = 1;
    }

    /// One weighting event. A single Bernoulli(`sp`) draw chooses between
    /// the increase branch (violated rows, objective when not improving)
    /// and the smoothing branch (satisfied rows, objective when improving).
    /// `best_obj` is `None` until a feasible solution has been found, and
    /// the objective weight is left alone until then.
    pub fn update<R: Rng + ?Sized>(
        &mut self,
        violated: &[usize],
        is_violated: impl Fn(usize) -> bool,
        current_obj: f64,
        best_obj: Option<f64>,
        rng: &mut R,
    ) {
        let smooth = rng.gen::<f64>() < self.sp;
        if !smooth {
            for &i in violated {
                if self.con[i] < self.ul_con {
                    self.con[i] += 1;
                }
            }
        } else {
            for (i, w) in self.con.iter_mut().enumerate() {
                if *w > 1 && !is_violated(i) {
                    *w -= 1;
                }
            }
        }
        if let Some(best) = best_obj {
            if !smooth {
                if current_obj >= best && self.obj < self.ul_obj {
                    self.obj += 1;
                }
            } else if current_obj < best && self.obj > 1 {
                self.obj -= 1;
            }
        }
    }
}

/// From-scratch form of [`WeightState::update`].
pub fn update_weights<R: Rng + ?Sized>(
    inst: &Instance,
    a: &Assignment,
    w: &mut WeightState,
    best_obj: Option<f64>,
    rng: &mut R,
) {
    let violated = crate::model::violated_rows(inst, a);
    let obj = crate::model::evaluate_objective(inst, a);
    w.update(
        &violated,
        |i| violated.binary_search(&i).is_ok(),
        obj,
        best_obj,
        rng,
    );
}

/// Violation-reduction score of changing `x_j` by `delta`, given current
/// row activities.
pub fn score_reduce_delta(
    inst: &Instance,
    activity: &[f64],
    j: usize,
    delta: f64,
    w: &WeightState,
    beta: f64,
) -> f64 {
    let mut score = 0.0;
    for &(i, a) in inst.col(j) {
        let rhs = inst.row(i).rhs;
        let before = activity[i];
        let after = before + a * delta;
        let was_violated = rhs - before < -FEAS_TOL;
        let now_violated = rhs - after < -FEAS_TOL;
        let wi = w.con(i) as f64;
        score += match (was_violated, now_violated) {
            (true, false) => wi,
            (false, true) => -wi,
            (true, true) if after < before => beta * wi,
            (true, true) if after > before => -beta * wi,
            _ => 0.0,
        };
    }
    score
}

pub fn score_reduce(
    inst: &Instance,
    a: &Assignment,
    op: &TmOperation,
    w: &WeightState,
    beta: f64,
) -> f64 {
    let activity: Vec<f64> = inst.rows().iter().map(|r| r.activity(a.values())).collect();
    score_reduce_delta(inst, &activity, op.var, op.delta(), w, beta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreMode {
    Search,
    Restore,
}

/// Objective part of the tight-move score. Constant 0 in search mode.
pub fn score_improve_delta(
    inst: &Instance,
    j: usize,
    delta: f64,
    current_obj: f64,
    best_obj: f64,
    w: &WeightState,
    mode: ScoreMode,
) -> f64 {
    match mode {
        ScoreMode::Search => 0.0,
        ScoreMode::Restore => {
            let after = current_obj + inst.obj_coef(j) * delta;
            if after < best_obj {
                w.obj() as f64
            } else {
                -(w.obj() as f64)
            }
        }
    }
}

pub fn score_improve(
    inst: &Instance,
    a: &Assignment,
    op: &TmOperation,
    w: &WeightState,
    best_obj: f64,
    mode: ScoreMode,
) -> f64 {
    let current = crate::model::evaluate_objective(inst, a);
    score_improve_delta(inst, op.var, op.delta(), current, best_obj, w, mode)
}

pub fn score_tm(
    inst: &Instance,
    a: &Assignment,
    op: &TmOperation,
    w: &WeightState,
    beta: f64,
    best_obj: f64,
    mode: ScoreMode,
) -> f64 {
    score_reduce(inst, a, op, w, beta) + score_improve(inst, a, op, w, best_obj, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InstanceBuilder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn knapsack_row(lo: i64, hi: i64) -> Instance {
        let mut b = InstanceBuilder::new();
        b.add_var("x1", Some(lo), Some(hi), 0.0);
        b.add_var("x2", Some(lo), Some(hi), 0.0);
        b.add_row("c", [(0, 2.0), (1, 3.0)], 6.0);
        b.build().unwrap()
    }

    #[test]
    fn violated_positive_coefficient_decreases() {
        let inst = knapsack_row(0, 10);
        let op = tm_candidate(&inst, 0, 0, &vec![3, 1].into()).unwrap();
        assert_eq!(op.new_value, 1);
        assert_eq!(op.direction(), Direction::Decrease);
    }

    #[test]
    fn satisfied_positive_coefficient_increases_to_tight() {
        let inst = knapsack_row(0, 10);
        let a: Assignment = vec![0, 0].into();
        let op = tm_candidate(&inst, 0, 0, &a).unwrap();
        assert_eq!(op.new_value, 3);
        assert_eq!(slack(&inst, 0, &vec![3, 0].into()), 0.0);
    }

    #[test]
    fn violated_negative_coefficient_is_bound_clamped() {
        let mut b = InstanceBuilder::new();
        b.add_var("x1", Some(0), Some(2), 0.0);
        b.add_row("c", [(0, -1.0)], -4.0);
        let inst = b.build().unwrap();
        let op = tm_candidate(&inst, 0, 0, &vec![1].into()).unwrap();
        assert_eq!(op.new_value, 2);
        assert!(slack(&inst, 0, &vec![2].into()) < 0.0);
    }

    #[test]
    fn satisfied_negative_coefficient_decreases() {
        // -x1 <= 0 with x1 = 4: slack 4, may drop to 0
        let mut b = InstanceBuilder::new();
        b.add_var("x1", Some(-10), Some(10), 0.0);
        b.add_row("c", [(0, -1.0)], 0.0);
        let inst = b.build().unwrap();
        let op = tm_candidate(&inst, 0, 0, &vec![4].into()).unwrap();
        assert_eq!(op.new_value, 0);
        assert_eq!(op.direction(), Direction::Decrease);
    }

    #[test]
    fn zero_steps_are_absent() {
        let inst = knapsack_row(0, 10);
        // slack 1 and coefficient 2 or 3: |Δ/A| < 1
        assert!(tm_candidate(&inst, 0, 0, &vec![1, 1].into()).is_none());
        // already at the lower bound while violated
        let inst = knapsack_row(0, 10);
        assert!(tm_candidate(&inst, 0, 0, &vec![0, 3].into()).is_none());
    }

    #[test]
    fn unbounded_side_uses_ratio() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", None, None, 0.0);
        b.add_row("c", [(0, 4.0)], 10.0);
        let inst = b.build().unwrap();
        assert_eq!(
            tm_candidate(&inst, 0, 0, &vec![0].into())
                .unwrap()
                .new_value,
            2
        );
        assert_eq!(
            tm_candidate(&inst, 0, 0, &vec![7].into())
                .unwrap()
                .new_value,
            2
        );
    }

    fn weights(m: usize, ws: &[u32]) -> WeightState {
        let mut w = WeightState::new(m, 0.0003);
        for (i, &x) in ws.iter().enumerate() {
            w.set_con(i, x);
        }
        w
    }

    #[test]
    fn reduce_rewards_satisfying_a_row() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(0), Some(10), 0.0);
        b.add_row("c", [(0, 1.0)], 2.0);
        let inst = b.build().unwrap();
        let a: Assignment = vec![5].into();
        let op = tm_candidate(&inst, 0, 0, &a).unwrap();
        assert_eq!(score_reduce(&inst, &a, &op, &weights(1, &[5]), 0.5), 5.0);
    }

    #[test]
    fn reduce_partial_progress_uses_beta() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(3), Some(10), 0.0);
        b.add_row("c", [(0, 1.0)], 0.0);
        let inst = b.build().unwrap();
        let a: Assignment = vec![6].into();
        let op = tm_candidate(&inst, 0, 0, &a).unwrap();
        assert_eq!(op.new_value, 3);
        assert_eq!(score_reduce(&inst, &a, &op, &weights(1, &[4]), 0.5), 2.0);
    }

    #[test]
    fn reduce_break_and_fix_cancel() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(0), Some(10), 0.0);
        b.add_row("lo", [(0, -1.0)], -2.0);
        b.add_row("hi", [(0, 1.0)], 0.0);
        let inst = b.build().unwrap();
        // x = 2: "lo" satisfied, "hi" violated; moving to 0 swaps them
        let a: Assignment = vec![2].into();
        let op = tm_candidate(&inst, 0, 1, &a).unwrap();
        assert_eq!(op.new_value, 0);
        assert_eq!(score_reduce(&inst, &a, &op, &weights(2, &[3, 3]), 0.5), 0.0);
    }

    #[test]
    fn improve_scores() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(0), Some(10), 1.0);
        b.add_row("c", [(0, 1.0)], 5.0);
        let inst = b.build().unwrap();
        let mut w = WeightState::new(1, 0.0003);
        w.set_obj(2);
        let a: Assignment = vec![10].into();
        let to9 = TmOperation {
            var: 0,
            row: 0,
            old_value: 10,
            new_value: 9,
        };
        let to10 = TmOperation {
            var: 0,
            row: 0,
            old_value: 10,
            new_value: 10,
        };
        assert_eq!(
            score_improve(&inst, &a, &to9, &w, 10.0, ScoreMode::Search),
            0.0
        );
        assert_eq!(
            score_improve(&inst, &a, &to9, &w, 10.0, ScoreMode::Restore),
            2.0
        );
        assert_eq!(
            score_improve(&inst, &a, &to10, &w, 10.0, ScoreMode::Restore),
            -2.0
        );
    }

    #[test]
    fn tm_score_is_sum() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(0), Some(10), 1.0);
        b.add_row("c", [(0, 1.0)], 2.0);
        let inst = b.build().unwrap();
        let a: Assignment = vec![5].into();
        let op = tm_candidate(&inst, 0, 0, &a).unwrap();
        let mut w = weights(1, &[5]);
        w.set_obj(2);
        // reduce +5, improve: obj 2 < best 3 -> +2
        assert_eq!(
            score_tm(&inst, &a, &op, &w, 0.5, 3.0, ScoreMode::Restore),
            7.0
        );
        assert_eq!(
            score_tm(&inst, &a, &op, &w, 0.5, 3.0, ScoreMode::Search),
            5.0
        );
    }

    #[test]
    fn weight_limits() {
        assert_eq!(WeightState::new(10, 0.0).ul_con(), 1000);
        assert_eq!(WeightState::new(10, 0.0).ul_obj(), 100);
        assert_eq!(WeightState::new(5000, 0.0).ul_con(), 5000);
        assert_eq!(WeightState::new(5000, 0.0).ul_obj(), 500);
    }

    #[test]
    fn increase_branch_bumps_violated_rows() {
        let mut w = WeightState::new(3, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        w.update(&[0, 2], |i| i != 1, 0.0, None, &mut rng);
        assert_eq!(w.con_weights(), &[2, 1, 2]);
        assert_eq!(w.obj(), 1);
    }

    #[test]
    fn capped_weights_stay_put() {
        let mut w = WeightState::new(2, 0.0);
        w.set_con(0, 1000);
        w.set_con(1, 1000);
        w.set_obj(100);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        w.update(&[0, 1], |_| true, 5.0, Some(1.0), &mut rng);
        assert_eq!(w.con_weights(), &[1000, 1000]);
        assert_eq!(w.obj(), 100);
    }

    #[test]
    fn smoothing_branch_decays_satisfied_rows() {
        let mut w = WeightState::new(3, 1.0);
        w.set_con(0, 5);
        w.set_con(1, 5);
        w.set_obj(4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        w.update(&[1], |i| i == 1, 0.0, Some(1.0), &mut rng);
        assert_eq!(w.con_weights(), &[4, 5, 1]);
        assert_eq!(w.obj(), 3);
    }

    #[test]
    fn objective_weight_frozen_until_feasible() {
        let mut w = WeightState::new(1, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            w.update(&[0], |_| true, 5.0, None, &mut rng);
        }
        assert_eq!(w.obj(), 1);
        assert_eq!(w.con(0), 11);
    }
}
