//! Integer linear programs in the normalized form
//!
//! ```text
//! minimize   c·x
//! subject to A x <= b
//!            l <= x <= u,  x integer
//! ```
//!
//! Coefficients are `f64`, variable values are `i64`. An infinite bound is
//! `None`, so it can never be mistaken for a finite integer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance on the slack of a row. A row is satisfied iff
/// `b_i - A_i·x >= -FEAS_TOL`.
pub const FEAS_TOL: f64 = 1e-6;

/// Ratios within this distance of an integer are snapped before
/// `floor`/`ceil`.
pub const SNAP_TOL: f64 = 1e-9;

pub fn snap_floor(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP_TOL {
        r
    } else {
        x.floor()
    }
}

pub fn snap_ceil(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP_TOL {
        r
    } else {
        x.ceil()
    }
}

/// Saturating float to integer conversion for step lengths.
pub(crate) fn saturate_i64(x: f64) -> i64 {
    if x.is_nan() {
        0
    } else if x >= i64::MAX as f64 {
        i64::MAX
    } else if x <= i64::MIN as f64 {
        i64::MIN
    } else {
        x as i64
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("variable {0} has lower bound above upper bound")]
    BoundsInverted(String),
    #[error("row {0} has no nonzero coefficients")]
    EmptyRow(String),
    #[error("row {row} references variable index {var} out of range")]
    UnknownVariable { row: String, var: usize },
    #[error("non-finite coefficient in {0}")]
    NonFinite(String),
}

/// One row `Σ a_j x_j <= rhs`, terms sorted by variable index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, values: &[i64]) -> f64 {
        self.terms.iter().map(|&(j, a)| a * values[j] as f64).sum()
    }

    pub fn coef(&self, var: usize) -> Option<f64> {
        self.terms
            .binary_search_by_key(&var, |&(j, _)| j)
            .ok()
            .map(|k| self.terms[k].1)
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    num_vars: usize,
    objective: Vec<f64>,
    rows: Vec<Constraint>,
    lower: Vec<Option<i64>>,
    upper: Vec<Option<i64>>,
    var_names: Vec<String>,
    con_names: Vec<String>,
    cols: Vec<Vec<(usize, f64)>>,
    objective_vars: Vec<usize>,
    maximize: bool,
    objective_offset: f64,
}

impl Instance {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_cons(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn obj_coef(&self, j: usize) -> f64 {
        self.objective[j]
    }

    /// Variables with a nonzero objective coefficient, ascending.
    pub fn objective_vars(&self) -> &[usize] {
        &self.objective_vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Constraint {
        &self.rows[i]
    }

    /// Rows containing `x_j`, as `(row, A_ij)`.
    pub fn col(&self, j: usize) -> &[(usize, f64)] {
        &self.cols[j]
    }

    pub fn lower(&self, j: usize) -> Option<i64> {
        self.lower[j]
    }

    pub fn upper(&self, j: usize) -> Option<i64> {
        self.upper[j]
    }

    pub fn within_bounds(&self, j: usize, v: i64) -> bool {
        self.lower[j].is_none_or(|l| v >= l) && self.upper[j].is_none_or(|u| v <= u)
    }

    pub fn var_name(&self, j: usize) -> &str {
        &self.var_names[j]
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn con_name(&self, i: usize) -> &str {
        &self.con_names[i]
    }

    /// True when the source model maximized; `c` has then been negated.
    pub fn is_maximize(&self) -> bool {
        self.maximize
    }

    pub fn objective_offset(&self) -> f64 {
        self.objective_offset
    }

    /// Maps an internal (minimization) objective value back to the sense
    /// and offset of the source model.
    pub fn reported_objective(&self, internal: f64) -> f64 {
        let v = internal + self.objective_offset;
        // `+ 0.0` turns a negative zero into zero
        (if self.maximize { -v } else { v }) + 0.0
    }
}

/// Builds an [`Instance`], sorting and merging row terms and checking the
/// structural invariants.
#[derive(Clone, Debug, Default)]
pub struct InstanceBuilder {
    objective: Vec<f64>,
    lower: Vec<Option<i64>>,
    upper: Vec<Option<i64>>,
    var_names: Vec<String>,
    rows: Vec<(String, Vec<(usize, f64)>, f64)>,
    maximize: bool,
    objective_offset: f64,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(
        &mut self,
        name: impl Into<String>,
        lower: Option<i64>,
        upper: Option<i64>,
        obj: f64,
    ) -> usize {
        self.objective.push(obj);
        self.lower.push(lower);
        self.upper.push(upper);
        self.var_names.push(name.into());
        self.objective.len() - 1
    }

    pub fn add_row(
        &mut self,
        name: impl Into<String>,
        terms: impl IntoIterator<Item = (usize, f64)>,
        rhs: f64,
    ) -> &mut Self {
        self.rows
            .push((name.into(), terms.into_iter().collect(), rhs));
        self
    }

    pub fn maximize(&mut self, yes: bool) -> &mut Self {
        self.maximize = yes;
        self
    }

    pub fn objective_offset(&mut self, offset: f64) -> &mut Self {
        self.objective_offset = offset;
        self
    }

    pub fn build(self) -> Result<Instance, ModelError> {
        let n = self.objective.len();
        for j in 0..n {
            if let (Some(l), Some(u)) = (self.lower[j], self.upper[j]) {
                if l > u {
                    return Err(ModelError::BoundsInverted(self.var_names[j].clone()));
                }
            }
            if !self.objective[j].is_finite() {
                return Err(ModelError::NonFinite(self.var_names[j].clone()));
            }
        }

        let mut rows = Vec::with_capacity(self.rows.len());
        let mut con_names = Vec::with_capacity(self.rows.len());
        for (name, mut terms, rhs) in self.rows {
            if !rhs.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
            for &(j, a) in &terms {
                if j >= n {
                    return Err(ModelError::UnknownVariable { row: name, var: j });
                }
                if !a.is_finite() {
                    return Err(ModelError::NonFinite(name));
                }
            }
            terms.sort_by_key(|&(j, _)| j);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(terms.len());
            for (j, a) in terms {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += a,
                    _ => merged.push((j, a)),
                }
            }
            merged.retain(|&(_, a)| a != 0.0);
            if merged.is_empty() {
                return Err(ModelError::EmptyRow(name));
            }
            rows.push(Constraint { terms: merged, rhs });
            con_names.push(name);
        }

        let mut cols = vec![Vec::new(); n];
        for (i, row) in rows.iter().enumerate() {
            for &(j, a) in &row.terms {
                cols[j].push((i, a));
            }
        }
        let objective_vars = (0..n).filter(|&j| self.objective[j] != 0.0).collect();

        Ok(Instance {
            num_vars: n,
            objective: self.objective,
            rows,
            lower: self.lower,
            upper: self.upper,
            var_names: self.var_names,
            con_names,
            cols,
            objective_vars,
            maximize: self.maximize,
            objective_offset: self.objective_offset,
        })
    }
}

/// Integer value per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(pub Vec<i64>);

impl Assignment {
    pub fn zeros(n: usize) -> Self {
        Assignment(vec![0; n])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for Assignment {
    type Output = i64;
    fn index(&self, j: usize) -> &i64 {
        &self.0[j]
    }
}

impl From<Vec<i64>> for Assignment {
    fn from(v: Vec<i64>) -> Self {
        Assignment(v)
    }
}

pub fn evaluate_objective(inst: &Instance, a: &Assignment) -> f64 {
    inst.objective_vars()
        .iter()
        .map(|&j| inst.obj_coef(j) * a[j] as f64)
        .sum()
}

/// `b_i - A_i·α`; negative means the row is violated.
pub fn slack(inst: &Instance, i: usize, a: &Assignment) -> f64 {
    let row = inst.row(i);
    row.rhs - row.activity(a.values())
}

pub fn is_feasible(inst: &Instance, a: &Assignment) -> bool {
    (0..inst.num_vars()).all(|j| inst.within_bounds(j, a[j]))
        && (0..inst.num_cons()).all(|i| slack(inst, i, a) >= -FEAS_TOL)
}

pub fn violated_rows(inst: &Instance, a: &Assignment) -> Vec<usize> {
    (0..inst.num_cons())
        .filter(|&i| slack(inst, i, a) < -FEAS_TOL)
        .collect()
}

const REFRESH_INTERVAL: u64 = 1_000_000;

/// Incrementally maintained row activities, violated-row set and objective
/// value for one assignment.
#[derive(Clone, Debug)]
pub struct Tracker {
    values: Assignment,
    activity: Vec<f64>,
    violated: Vec<usize>,
    // position of a row inside `violated`, usize::MAX when satisfied
    pos: Vec<usize>,
    objective: f64,
    moves_since_refresh: u64,
}

impl Tracker {
    pub fn new(inst: &Instance, a: Assignment) -> Self {
        let m = inst.num_cons();
        let mut t = Tracker {
            values: a,
            activity: vec![0.0; m],
            violated: Vec::new(),
            pos: vec![usize::MAX; m],
            objective: 0.0,
            moves_since_refresh: 0,
        };
        t.refresh(inst);
        t
    }

    /// Recomputes every cache from scratch.
    pub fn refresh(&mut self, inst: &Instance) {
        self.violated.clear();
        for i in 0..inst.num_cons() {
            let row = inst.row(i);
            self.activity[i] = row.activity(self.values.values());
            if row.rhs - self.activity[i] < -FEAS_TOL {
                self.pos[i] = self.violated.len();
                self.violated.push(i);
            } else {
                self.pos[i] = usize::MAX;
            }
        }
        self.objective = evaluate_objective(inst, &self.values);
        self.moves_since_refresh = 0;
    }

    pub fn assignment(&self) -> &Assignment {
        &self.values
    }

    pub fn value(&self, j: usize) -> i64 {
        self.values[j]
    }

    pub fn activity(&self, i: usize) -> f64 {
        self.activity[i]
    }

    pub fn activities(&self) -> &[f64] {
        &self.activity
    }

    pub fn slack(&self, inst: &Instance, i: usize) -> f64 {
        inst.row(i).rhs - self.activity[i]
    }

    pub fn is_violated(&self, i: usize) -> bool {
        self.pos[i] != usize::MAX
    }

    /// Violated rows in unspecified order.
    pub fn violated(&self) -> &[usize] {
        &self.violated
    }

    pub fn is_feasible(&self) -> bool {
        self.violated.is_empty()
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// Sets `x_j := value`, updating activities of the rows in `col(j)`.
    pub fn set(&mut self, inst: &Instance, j: usize, value: i64) {
        let old = self.values.0[j];
        if old == value {
            return;
        }
        let delta = (value as f64) - (old as f64);
        self.values.0[j] = value;
        self.objective += inst.obj_coef(j) * delta;
        for &(i, a) in inst.col(j) {
            self.activity[i] += a * delta;
            let violated = inst.row(i).rhs - self.activity[i] < -FEAS_TOL;
            match (violated, self.pos[i] != usize::MAX) {
                (true, false) => {
                    self.pos[i] = self.violated.len();
                    self.violated.push(i);
                }
                (false, true) => {
                    let p = self.pos[i];
                    let last = *self.violated.last().unwrap();
                    self.violated.swap_remove(p);
                    if last != i {
                        self.pos[last] = p;
                    }
                    self.pos[i] = usize::MAX;
                }
                _ => {}
            }
        }
        self.moves_since_refresh += 1;
        if self.moves_since_refresh >= REFRESH_INTERVAL {
            self.refresh(inst);
        }
    }

    /// Replaces the whole assignment.
    pub fn reset(&mut self, inst: &Instance, a: Assignment) {
        self.values = a;
        self.refresh(inst);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_var(rows: &[(&[f64], f64)], lo: i64, hi: i64, c: &[f64]) -> Instance {
        let mut b = InstanceBuilder::new();
        for (j, &cj) in c.iter().enumerate() {
            b.add_var(format!("x{}", j + 1), Some(lo), Some(hi), cj);
        }
        for (k, (coefs, rhs)) in rows.iter().enumerate() {
            b.add_row(
                format!("r{k}"),
                coefs.iter().copied().enumerate().filter(|&(_, a)| a != 0.0),
                *rhs,
            );
        }
        b.build().unwrap()
    }

    #[test]
    fn objective_examples() {
        let inst = two_var(&[], -10, 10, &[1.0, -2.0]);
        assert_eq!(evaluate_objective(&inst, &vec![3, 1].into()), 1.0);
        let zero = two_var(&[], -10, 10, &[0.0, 0.0]);
        assert_eq!(evaluate_objective(&zero, &vec![7, -4].into()), 0.0);
        let single = two_var(&[], 0, 1000, &[-1.0]);
        assert_eq!(evaluate_objective(&single, &vec![197].into()), -197.0);
    }

    #[test]
    fn slack_examples() {
        let inst = two_var(&[(&[2.0, 3.0], 6.0)], 0, 10, &[0.0, 0.0]);
        assert_eq!(slack(&inst, 0, &vec![3, 1].into()), -3.0);
        let tight = two_var(&[(&[1.0], 5.0)], 0, 10, &[0.0]);
        assert_eq!(slack(&tight, 0, &vec![5].into()), 0.0);
        let neg = two_var(&[(&[-1.0], 0.0)], 0, 10, &[0.0]);
        assert_eq!(slack(&neg, 0, &vec![4].into()), 4.0);
    }

    #[test]
    fn feasibility_examples() {
        let empty = two_var(&[], 0, 3, &[1.0, 1.0]);
        assert!(is_feasible(&empty, &vec![1, 2].into()));
        assert!(!is_feasible(&empty, &vec![1, 4].into()));
        let knap = two_var(&[(&[2.0, 3.0], 6.0)], 0, 10, &[0.0, 0.0]);
        assert!(!is_feasible(&knap, &vec![3, 1].into()));
        let pair = two_var(&[(&[1.0, 1.0], 2.0)], 0, 1, &[0.0, 0.0]);
        assert!(is_feasible(&pair, &vec![1, 1].into()));
    }

    #[test]
    fn violated_row_examples() {
        let inst = two_var(
            &[(&[1.0, 0.0], 1.0), (&[0.0, 1.0], 1.0), (&[1.0, 1.0], 3.0)],
            0,
            10,
            &[0.0, 0.0],
        );
        assert!(violated_rows(&inst, &vec![0, 0].into()).is_empty());
        assert_eq!(violated_rows(&inst, &vec![0, 2].into()), vec![1]);
        assert_eq!(violated_rows(&inst, &vec![5, 5].into()), vec![0, 1, 2]);
    }

    #[test]
    fn builder_merges_and_drops_zeros() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(0), None, 0.0);
        b.add_var("y", Some(0), None, 0.0);
        b.add_row("r", [(1, 1.0), (0, 2.0), (1, -1.0), (0, 1.0)], 4.0);
        let inst = b.build().unwrap();
        assert_eq!(inst.row(0).terms, vec![(0, 3.0)]);
        assert_eq!(inst.col(0), &[(0, 3.0)]);
        assert!(inst.col(1).is_empty());
    }

    #[test]
    fn builder_rejects_bad_input() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(3), Some(2), 0.0);
        assert_eq!(
            b.build().unwrap_err(),
            ModelError::BoundsInverted("x".into())
        );

        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(0), Some(2), 0.0);
        b.add_row("r", [(0, 1.0), (0, -1.0)], 1.0);
        assert_eq!(b.build().unwrap_err(), ModelError::EmptyRow("r".into()));
    }

    #[test]
    fn reported_objective_undoes_negation() {
        let mut b = InstanceBuilder::new();
        b.add_var("x", Some(0), Some(1), -3.0);
        b.maximize(true);
        let inst = b.build().unwrap();
        assert_eq!(inst.reported_objective(-3.0), 3.0);
        assert!(inst.reported_objective(0.0).is_sign_positive());
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_floor(2.9999999999), 3.0);
        assert_eq!(snap_floor(2.5), 2.0);
        assert_eq!(snap_ceil(3.0000000001), 3.0);
        assert_eq!(snap_ceil(-1.5), -1.0);
    }

    #[test]
    fn tracker_follows_moves() {
        let inst = two_var(
            &[(&[2.0, 3.0], 6.0), (&[-1.0, 1.0], 0.0)],
            -5,
            5,
            &[1.0, 1.0],
        );
        let mut t = Tracker::new(&inst, vec![0, 0].into());
        assert!(t.is_feasible());
        t.set(&inst, 1, 3);
        assert_eq!(t.violated().len(), 2);
        t.set(&inst, 0, 3);
        assert_eq!(t.violated(), &[0]);
        assert_eq!(t.objective(), 6.0);
        assert_eq!(t.activity(0), 15.0);
    }
}
