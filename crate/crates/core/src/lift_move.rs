//! Local domain reduction and lift moves.
//!
//! For a feasible assignment, `lfd(x_j)` is the integer interval over which
//! `x_j` can move alone without violating any row or its global bounds. A
//! lift move sends `x_j` to the end of that interval that improves the
//! objective the most.

use serde::Serialize;

use crate::model::{saturate_i64, slack, snap_ceil, snap_floor, Assignment, Instance};

/// Integer interval; `None` ends are infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerInterval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl IntegerInterval {
    pub const FULL: IntegerInterval = IntegerInterval { lo: None, hi: None };

    pub fn new(lo: Option<i64>, hi: Option<i64>) -> Self {
        IntegerInterval { lo, hi }
    }

    pub fn intersect(self, other: IntegerInterval) -> IntegerInterval {
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        IntegerInterval { lo, hi }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo.is_none_or(|l| l <= v) && self.hi.is_none_or(|h| v <= h)
    }
}

/// Interval of `x_j` that keeps one row satisfied, from its slack. A slack
/// inside the feasibility tolerance counts as tight, so the interval always
/// contains `value`.
pub fn ldc_from_slack(coef: f64, slack: f64, value: i64) -> IntegerInterval {
    let ratio = slack.max(0.0) / coef;
    if coef < 0.0 {
        let lo = value.saturating_add(saturate_i64(snap_ceil(ratio)));
        IntegerInterval::new(Some(lo), None)
    } else {
        let hi = value.saturating_add(saturate_i64(snap_floor(ratio)));
        IntegerInterval::new(None, Some(hi))
    }
}

pub fn ldc(inst: &Instance, j: usize, i: usize, a: &Assignment) -> IntegerInterval {
    let coef = inst
        .row(i)
        .coef(j)
        .expect("ldc requires x_j to appear in row i");
    ldc_from_slack(coef, slack(inst, i, a), a[j])
}

/// `lfd` using cached row activities.
pub fn lfd_cached(inst: &Instance, activity: &[f64], j: usize, value: i64) -> IntegerInterval {
    inst.col(j).iter().fold(
        IntegerInterval::new(inst.lower(j), inst.upper(j)),
        |acc, &(i, a)| acc.intersect(ldc_from_slack(a, inst.row(i).rhs - activity[i], value)),
    )
}

pub fn lfd(inst: &Instance, j: usize, a: &Assignment) -> IntegerInterval {
    inst.col(j).iter().fold(
        IntegerInterval::new(inst.lower(j), inst.upper(j)),
        |acc, &(i, coef)| acc.intersect(ldc_from_slack(coef, slack(inst, i, a), a[j])),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LmOperation {
    pub var: usize,
    pub old_value: i64,
    pub new_value: i64,
}

fn lm_target(
    inst: &Instance,
    j: usize,
    domain: IntegerInterval,
    value: i64,
) -> Option<LmOperation> {
    let c = inst.obj_coef(j);
    let target = if c < 0.0 {
        domain.hi?
    } else if c > 0.0 {
        domain.lo?
    } else {
        return None;
    };
    (target != value).then_some(LmOperation {
        var: j,
        old_value: value,
        new_value: target,
    })
}

pub fn lm_candidate_cached(
    inst: &Instance,
    activity: &[f64],
    j: usize,
    value: i64,
) -> Option<LmOperation> {
    if inst.obj_coef(j) == 0.0 {
        return None;
    }
    lm_target(inst, j, lfd_cached(inst, activity, j, value), value)
}

/// `lm(x_j, α)`. Absent for `c_j = 0`, an infinite target, or a zero step.
pub fn lm_candidate(inst: &Instance, j: usize, a: &Assignment) -> Option<LmOperation> {
    if inst.obj_coef(j) == 0.0 {
        return None;
    }
    lm_target(inst, j, lfd(inst, j, a), a[j])
}

/// `obj(α) - obj(α')`.
pub fn score_lm(inst: &Instance, op: &LmOperation) -> f64 {
    inst.obj_coef(op.var) * (op.old_value as f64 - op.new_value as f64)
}
