//! Brute-force checks of the boundary-solution properties on small
//! instances.
//!
//! A point is a boundary point when it is feasible and at least one of its
//! `2n` unit neighbors is not. Global bounds count as rows here, so a
//! variable sitting on its bound already qualifies.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{MoveEvent, Observer, Params, Solver};
use crate::lift_move::lm_candidate;
use crate::model::{Assignment, Constraint, Instance, InstanceBuilder, FEAS_TOL};
use crate::tight_move::{tm_candidate, TmOperation};

/// Enumeration guard: largest number of points a box may contain.
pub const BOX_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("box holds {0} points, over the budget of {BOX_BUDGET}")]
    Budget(u128),
    #[error("variable {0} has a bound outside the box")]
    BoundsOutsideBox(usize),
    #[error("box dimension {got} does not match {expected} variables")]
    Dimension { expected: usize, got: usize },
}

/// Finite integer window `[lo_j, hi_j]` per variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl SearchBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self, OracleError> {
        assert_eq!(lo.len(), hi.len());
        let mut size: u128 = 1;
        for (l, h) in lo.iter().zip(&hi) {
            let w = if h < l {
                0
            } else {
                (*h as i128 - *l as i128 + 1) as u128
            };
            size = size.saturating_mul(w);
        }
        if size > BOX_BUDGET {
            return Err(OracleError::Budget(size));
        }
        Ok(SearchBox { lo, hi })
    }

    /// The box spanned by the instance's bounds; every bound must be finite.
    pub fn from_bounds(inst: &Instance) -> Result<Self, OracleError> {
        let mut lo = Vec::with_capacity(inst.num_vars());
        let mut hi = Vec::with_capacity(inst.num_vars());
        for j in 0..inst.num_vars() {
            match (inst.lower(j), inst.upper(j)) {
                (Some(l), Some(u)) => {
                    lo.push(l);
                    hi.push(u);
                }
                _ => return Err(OracleError::BoundsOutsideBox(j)),
            }
        }
        SearchBox::new(lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .enumerate()
                .all(|(j, &v)| self.lo[j] <= v && v <= self.hi[j])
    }

    /// Calls `f` on every integer point of the box in lexicographic order.
    pub fn for_each_point(&self, mut f: impl FnMut(&[i64])) {
        if self.lo.iter().zip(&self.hi).any(|(l, h)| h < l) {
            return;
        }
        let mut x = self.lo.clone();
        loop {
            f(&x);
            let mut k = x.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                if x[k] < self.hi[k] {
                    x[k] += 1;
                    break;
                }
                x[k] = self.lo[k];
            }
        }
    }
}

/// Membership in `P`: all rows and all global bounds.
pub fn in_polyhedron(inst: &Instance, x: &[i64]) -> bool {
    x.len() == inst.num_vars()
        && (0..inst.num_vars()).all(|j| inst.within_bounds(j, x[j]))
        && inst
            .rows()
            .iter()
            .all(|r| r.rhs - r.activity(x) >= -FEAS_TOL)
}

/// Membership of a real point in `P`.
pub fn in_polyhedron_real(inst: &Instance, x: &[f64]) -> bool {
    let bounds_ok = (0..inst.num_vars()).all(|j| {
        inst.lower(j).is_none_or(|l| x[j] >= l as f64 - FEAS_TOL)
            && inst.upper(j).is_none_or(|u| x[j] <= u as f64 + FEAS_TOL)
    });
    bounds_ok
        && inst.rows().iter().all(|r| {
            let act: f64 = r.terms.iter().map(|&(j, a)| a * x[j]).sum();
            r.rhs - act >= -FEAS_TOL
        })
}

/// The `2n` unit directions `+e_1, -e_1, ..., +e_n, -e_n`.
pub fn unit_directions(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        for s in [1, -1] {
            let mut d = vec![0; n];
            d[j] = s;
            out.push(d);
        }
    }
    out
}

pub fn neighbors(x: &[i64]) -> Vec<Vec<i64>> {
    unit_directions(x.len())
        .into_iter()
        .map(|d| x.iter().zip(&d).map(|(a, b)| a + b).collect())
        .collect()
}

/// Unit directions `d` with `x + d` outside `P`.
pub fn infeasible_directions(inst: &Instance, x: &[i64]) -> Vec<Vec<i64>> {
    unit_directions(x.len())
        .into_iter()
        .filter(|d| {
            let y: Vec<i64> = x.iter().zip(d).map(|(a, b)| a + b).collect();
            !in_polyhedron(inst, &y)
        })
        .collect()
}

pub fn is_boundary(inst: &Instance, x: &[i64]) -> bool {
    in_polyhedron(inst, x) && neighbors(x).iter().any(|y| !in_polyhedron(inst, y))
}

pub fn enumerate_feasible(inst: &Instance, bx: &SearchBox) -> Result<Vec<Vec<i64>>, OracleError> {
    if bx.dim() != inst.num_vars() {
        return Err(OracleError::Dimension {
            expected: inst.num_vars(),
            got: bx.dim(),
        });
    }
    for j in 0..inst.num_vars() {
        let lo_ok = inst.lower(j).is_some_and(|l| l >= bx.lo[j]);
        let hi_ok = inst.upper(j).is_some_and(|u| u <= bx.hi[j]);
        if !lo_ok || !hi_ok {
            return Err(OracleError::BoundsOutsideBox(j));
        }
    }
    let mut out = Vec::new();
    bx.for_each_point(|x| {
        if in_polyhedron(inst, x) {
            out.push(x.to_vec());
        }
    });
    Ok(out)
}

fn objective_at(inst: &Instance, x: &[i64]) -> f64 {
    inst.objective()
        .iter()
        .zip(x)
        .map(|(c, &v)| c * v as f64)
        .sum()
}

/// Self-contained copy of an instance for counterexample dumps.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceDump {
    pub objective: Vec<f64>,
    pub lower: Vec<Option<i64>>,
    pub upper: Vec<Option<i64>>,
    pub rows: Vec<Constraint>,
}

impl InstanceDump {
    pub fn of(inst: &Instance) -> Self {
        InstanceDump {
            objective: inst.objective().to_vec(),
            lower: (0..inst.num_vars()).map(|j| inst.lower(j)).collect(),
            upper: (0..inst.num_vars()).map(|j| inst.upper(j)).collect(),
            rows: inst.rows().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub property: String,
    pub instance: InstanceDump,
    pub point: Vec<i64>,
    pub detail: String,
}

impl Counterexample {
    fn new(property: &str, inst: &Instance, point: &[i64], detail: impl Into<String>) -> Self {
        Counterexample {
            property: property.to_string(),
            instance: InstanceDump::of(inst),
            point: point.to_vec(),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    Skipped(String),
    Fail(Box<Counterexample>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    fn fail(c: Counterexample) -> Self {
        Verdict::Fail(Box::new(c))
    }
}

/// Every minimizer of the objective over the feasible set is a boundary
/// point, and the minimum over boundary points equals the overall minimum.
pub fn check_prop1(inst: &Instance, bx: &SearchBox) -> Result<Verdict, OracleError> {
    let feasible = enumerate_feasible(inst, bx)?;
    if feasible.is_empty() {
        return Ok(Verdict::Skipped("empty feasible set".into()));
    }
    let objs: Vec<f64> = feasible.iter().map(|x| objective_at(inst, x)).collect();
    let min = objs.iter().copied().fold(f64::INFINITY, f64::min);
    let max = objs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max - min <= 1e-9 {
        return Ok(Verdict::Skipped(
            "objective constant on the feasible set".into(),
        ));
    }
    let mut boundary_min = f64::INFINITY;
    for (x, &o) in feasible.iter().zip(&objs) {
        let boundary = is_boundary(inst, x);
        if boundary {
            boundary_min = boundary_min.min(o);
        }
        if o - min <= 1e-9 && !boundary {
            return Ok(Verdict::fail(Counterexample::new(
                "prop1",
                inst,
                x,
                format!("optimal point (objective {o}) is not a boundary point"),
            )));
        }
    }
    if (boundary_min - min).abs() > 1e-9 {
        return Ok(Verdict::fail(Counterexample::new(
            "prop1",
            inst,
            &[],
            format!("minimum over boundary points {boundary_min} differs from optimum {min}"),
        )));
    }
    Ok(Verdict::Pass)
}

/// Signature of a tight-move implementation, so faulty variants can be
/// plugged into the Prop. 2 suite.
pub type TmFn = fn(&Instance, usize, usize, &Assignment) -> Option<TmOperation>;

/// A tight move that stops one unit short on satisfied rows. Used to check
/// that the suites catch a broken operator.
pub fn tm_off_by_one(inst: &Instance, j: usize, i: usize, a: &Assignment) -> Option<TmOperation> {
    let mut op = tm_candidate(inst, j, i, a)?;
    if crate::model::slack(inst, i, a) >= -FEAS_TOL {
        op.new_value -= (op.new_value - op.old_value).signum();
        if op.new_value == op.old_value {
            return None;
        }
    }
    Some(op)
}

/// Applies `tm` to `(x, j, i)` and checks that a feasible result is a
/// boundary point. Absent or infeasible results are skipped.
pub fn check_prop2(inst: &Instance, x: &[i64], j: usize, i: usize, tm: TmFn) -> Verdict {
    let a = Assignment(x.to_vec());
    let Some(op) = tm(inst, j, i, &a) else {
        return Verdict::Skipped("no tight move".into());
    };
    let mut y = x.to_vec();
    y[j] = op.new_value;
    if !in_polyhedron(inst, &y) {
        return Verdict::Skipped("result infeasible".into());
    }
    if is_boundary(inst, &y) {
        Verdict::Pass
    } else {
        Verdict::fail(Counterexample::new(
            "prop2",
            inst,
            &y,
            format!("tm(x{j}, row {i}) from {x:?} gives an interior point"),
        ))
    }
}

/// Applies the lift move of `x_j` at the feasible point `x` and checks that
/// the result is a feasible boundary point.
pub fn check_prop3(inst: &Instance, x: &[i64], j: usize) -> Verdict {
    if !in_polyhedron(inst, x) {
        return Verdict::Skipped("start infeasible".into());
    }
    let Some(op) = lm_candidate(inst, j, &Assignment(x.to_vec())) else {
        return Verdict::Skipped("no lift move".into());
    };
    let mut y = x.to_vec();
    y[j] = op.new_value;
    if is_boundary(inst, &y) {
        Verdict::Pass
    } else {
        let what = if in_polyhedron(inst, &y) {
            "an interior point"
        } else {
            "an infeasible point"
        };
        Verdict::fail(Counterexample::new(
            "prop3",
            inst,
            &y,
            format!("lm(x{j}) from {x:?} gives {what}"),
        ))
    }
}

/// Observer that checks every feasible assignment produced by a move.
struct Prop4Observer<'a> {
    inst: &'a Instance,
    checked: usize,
    failure: Option<(Vec<i64>, MoveEvent)>,
}

impl Observer for Prop4Observer<'_> {
    fn on_move(&mut self, event: &MoveEvent, current: &Assignment, feasible: bool) {
        if !feasible || self.failure.is_some() {
            return;
        }
        self.checked += 1;
        if !is_boundary(self.inst, current.values()) {
            self.failure = Some((current.0.clone(), *event));
        }
    }
}

/// Runs the engine and checks that every feasible assignment reached by a
/// move is a boundary point. The starting assignment and restart outcomes
/// are not moves and are not checked. Returns the verdict and the number of
/// feasible assignments checked.
pub fn check_prop4(inst: &Instance, params: Params) -> (Verdict, usize) {
    let mut obs = Prop4Observer {
        inst,
        checked: 0,
        failure: None,
    };
    Solver::new(inst, params).run_observed(&mut obs);
    let verdict = match obs.failure {
        None => Verdict::Pass,
        Some((x, ev)) => Verdict::fail(Counterexample::new(
            "prop4",
            inst,
            &x,
            format!(
                "{:?} move at step {} on x{} ({} -> {}) reached an interior point",
                ev.kind, ev.step, ev.var, ev.old_value, ev.new_value
            ),
        )),
    };
    (verdict, obs.checked)
}

fn lattice_segment(x1: &[i64], x2: &[i64]) -> Vec<Vec<i64>> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let d: Vec<i64> = x1.iter().zip(x2).map(|(a, b)| b - a).collect();
    let g = d.iter().fold(0, |acc, &v| gcd(acc, v));
    if g == 0 {
        return vec![x1.to_vec()];
    }
    (0..=g)
        .map(|k| x1.iter().zip(&d).map(|(a, di)| a + di / g * k).collect())
        .collect()
}

const SEGMENT_SAMPLES: u32 = 8;

/// Feasible `x1`, `x2`: every point between them is in `P`, checked at the
/// lattice points of the segment and at evenly spaced real points.
pub fn check_fact1(inst: &Instance, x1: &[i64], x2: &[i64]) -> Verdict {
    if !in_polyhedron(inst, x1) || !in_polyhedron(inst, x2) {
        return Verdict::Skipped("endpoint infeasible".into());
    }
    for y in lattice_segment(x1, x2) {
        if !in_polyhedron(inst, &y) {
            return Verdict::fail(Counterexample::new(
                "fact1",
                inst,
                &y,
                format!("lattice point between {x1:?} and {x2:?} is infeasible"),
            ));
        }
    }
    for k in 1..SEGMENT_SAMPLES {
        let t = k as f64 / SEGMENT_SAMPLES as f64;
        let y: Vec<f64> = x1
            .iter()
            .zip(x2)
            .map(|(&a, &b)| a as f64 + t * (b - a) as f64)
            .collect();
        if !in_polyhedron_real(inst, &y) {
            return Verdict::fail(Counterexample::new(
                "fact1",
                inst,
                x1,
                format!("point at t={t} towards {x2:?} is outside P"),
            ));
        }
    }
    Verdict::Pass
}

/// Objective values along the segment stay between the endpoint values.
pub fn check_fact2(inst: &Instance, x1: &[i64], x2: &[i64]) -> Verdict {
    let (o1, o2) = (objective_at(inst, x1), objective_at(inst, x2));
    let (lo, hi) = (o1.min(o2), o1.max(o2));
    for y in lattice_segment(x1, x2) {
        let o = objective_at(inst, &y);
        if o < lo - 1e-9 || o > hi + 1e-9 {
            return Verdict::fail(Counterexample::new(
                "fact2",
                inst,
                &y,
                format!("objective {o} outside [{lo}, {hi}] between {x1:?} and {x2:?}"),
            ));
        }
    }
    Verdict::Pass
}

/// For a boundary point `x` with `x + d` outside `P`, the objective
/// `-d·y` (push further along `d`) should have `x` as a minimizer over
/// `feasible`.
pub fn check_fact3(inst: &Instance, feasible: &[Vec<i64>], x: &[i64], d: &[i64]) -> Verdict {
    if !is_boundary(inst, x) {
        return Verdict::Skipped("not a boundary point".into());
    }
    let f = |y: &[i64]| -> i64 { -y.iter().zip(d).map(|(a, b)| a * b).sum::<i64>() };
    let fx = f(x);
    match feasible.iter().find(|y| f(y) < fx) {
        None => Verdict::Pass,
        Some(y) => Verdict::fail(Counterexample::new(
            "fact3",
            inst,
            x,
            format!("objective -{d:?}·y is lower at feasible {y:?}"),
        )),
    }
}

/// On a 0-1 instance every feasible point is a boundary point.
pub fn check_fact4(inst: &Instance, bx: &SearchBox) -> Result<Verdict, OracleError> {
    for j in 0..inst.num_vars() {
        if inst.lower(j) != Some(0) || inst.upper(j) != Some(1) {
            return Ok(Verdict::Skipped("not a 0-1 instance".into()));
        }
    }
    for x in enumerate_feasible(inst, bx)? {
        if !is_boundary(inst, &x) {
            return Ok(Verdict::fail(Counterexample::new(
                "fact4",
                inst,
                &x,
                "feasible 0-1 point is not a boundary point",
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// Shape of the random instance families.
#[derive(Clone, Copy, Debug)]
pub struct Family {
    pub max_vars: usize,
    pub max_rows: usize,
    /// Bounds are drawn inside `[-radius, radius]`.
    pub radius: i64,
    pub max_coef: i64,
    pub binary: bool,
}

impl Family {
    pub const fn general(max_vars: usize, max_rows: usize) -> Self {
        Family {
            max_vars,
            max_rows,
            radius: 5,
            max_coef: 5,
            binary: false,
        }
    }

    pub const fn binary(max_vars: usize, max_rows: usize) -> Self {
        Family {
            max_vars,
            max_rows,
            radius: 1,
            max_coef: 5,
            binary: true,
        }
    }
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R, k: i64) -> i64 {
    let v = rng.gen_range(1..=k);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A random instance with finite bounds, feasible by construction (every
/// row holds at a hidden anchor point) and a nonzero objective.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, fam: &Family) -> Instance {
    let n = rng.gen_range(1..=fam.max_vars);
    let m = rng.gen_range(1..=fam.max_rows.max(1));
    let mut b = InstanceBuilder::new();
    let mut anchor = Vec::with_capacity(n);
    let mut obj: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(-fam.max_coef..=fam.max_coef) as f64)
        .collect();
    if obj.iter().all(|&c| c == 0.0) {
        let j = rng.gen_range(0..n);
        obj[j] = nonzero(rng, fam.max_coef) as f64;
    }
    for (j, &c) in obj.iter().enumerate() {
        let (lo, hi) = if fam.binary {
            (0, 1)
        } else {
            let a = rng.gen_range(-fam.radius..=fam.radius);
            let z = rng.gen_range(-fam.radius..=fam.radius);
            (a.min(z), a.max(z))
        };
        anchor.push(rng.gen_range(lo..=hi));
        b.add_var(format!("x{}", j + 1), Some(lo), Some(hi), c);
    }
    for i in 0..m {
        let k = rng.gen_range(1..=n);
        let mut vars: Vec<usize> = (0..n).collect();
        vars.shuffle(rng);
        vars.truncate(k);
        let terms: Vec<(usize, f64)> = vars
            .iter()
            .map(|&j| (j, nonzero(rng, fam.max_coef) as f64))
            .collect();
        let act: f64 = terms.iter().map(|&(j, a)| a * anchor[j] as f64).sum();
        let rhs = act + rng.gen_range(0..=3) as f64;
        b.add_row(format!("c{}", i + 1), terms, rhs);
    }
    b.build().expect("generated instance is well formed")
}

/// Tally of one property suite.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub property: String,
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    /// The first few counterexamples.
    pub counterexamples: Vec<Counterexample>,
}

const KEPT_COUNTEREXAMPLES: usize = 5;

impl SuiteReport {
    fn new(property: &str) -> Self {
        SuiteReport {
            property: property.to_string(),
            ..Default::default()
        }
    }

    fn record(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.checked += 1,
            Verdict::Skipped(_) => self.skipped += 1,
            Verdict::Fail(c) => {
                self.checked += 1;
                self.failures += 1;
                if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                    self.counterexamples.push(*c);
                }
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

/// Sizes of the property suites.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub prop1_instances: usize,
    pub prop2_draws: usize,
    pub prop3_draws: usize,
    pub prop4_runs: usize,
    pub prop4_steps: u64,
    pub fact_draws: usize,
    pub tm: TmFn,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            prop1_instances: 200,
            prop2_draws: 1000,
            prop3_draws: 1000,
            prop4_runs: 50,
            prop4_steps: 10_000,
            fact_draws: 500,
            tm: tm_candidate,
        }
    }
}

fn suite_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
}

fn feasible_instance(rng: &mut ChaCha8Rng, fam: &Family) -> (Instance, Vec<Vec<i64>>) {
    let inst = random_instance(rng, fam);
    let bx = SearchBox::from_bounds(&inst).expect("generated bounds fit the budget");
    let feasible = enumerate_feasible(&inst, &bx).expect("box covers the bounds");
    (inst, feasible)
}

/// Prop. 1 until `prop1_instances` instances have been checked. Draws with
/// an objective that is constant on the feasible set are skipped.
pub fn prop1_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed, 1);
    let mut rep = SuiteReport::new("prop1");
    let fam = Family::general(6, 8);
    while rep.checked < cfg.prop1_instances {
        let inst = random_instance(&mut rng, &fam);
        let bx = SearchBox::from_bounds(&inst).expect("generated bounds fit the budget");
        rep.record(check_prop1(&inst, &bx).expect("box covers the bounds"));
    }
    rep
}

/// Prop. 2 until `prop2_draws` tight moves have produced a feasible point.
/// Half of the start points are feasible points with one coordinate
/// redrawn, the rest are uniform in the bounds.
pub fn prop2_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed, 2);
    let mut rep = SuiteReport::new("prop2");
    let fam = Family::general(4, 4);
    while rep.checked < cfg.prop2_draws {
        let (inst, feasible) = feasible_instance(&mut rng, &fam);
        let n = inst.num_vars();
        for _ in 0..10 {
            let mut x: Vec<i64> = if rng.gen_bool(0.5) && !feasible.is_empty() {
                feasible.choose(&mut rng).unwrap().clone()
            } else {
                (0..n)
                    .map(|j| rng.gen_range(inst.lower(j).unwrap()..=inst.upper(j).unwrap()))
                    .collect()
            };
            let p = rng.gen_range(0..n);
            x[p] = rng.gen_range(inst.lower(p).unwrap()..=inst.upper(p).unwrap());
            let i = rng.gen_range(0..inst.num_cons());
            let &(j, _) = inst.row(i).terms.choose(&mut rng).unwrap();
            rep.record(check_prop2(&inst, &x, j, i, cfg.tm));
            if rep.checked == cfg.prop2_draws {
                break;
            }
        }
    }
    rep
}

/// Prop. 3 over `prop3_draws` lift moves from random feasible points.
pub fn prop3_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed, 3);
    let mut rep = SuiteReport::new("prop3");
    let fam = Family::general(4, 4);
    let mut applied = 0;
    while applied < cfg.prop3_draws {
        let (inst, feasible) = feasible_instance(&mut rng, &fam);
        if feasible.is_empty() {
            continue;
        }
        for _ in 0..10 {
            let x = feasible.choose(&mut rng).unwrap();
            let j = rng.gen_range(0..inst.num_vars());
            if lm_candidate(&inst, j, &Assignment(x.clone())).is_none() {
                continue;
            }
            applied += 1;
            rep.record(check_prop3(&inst, x, j));
            if applied == cfg.prop3_draws {
                break;
            }
        }
    }
    rep
}

/// Prop. 4 over `prop4_runs` instrumented engine runs. Every other run uses
/// a short restart period so restarts are exercised too. `checked` counts
/// feasible assignments, not runs.
pub fn prop4_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed, 4);
    let mut rep = SuiteReport::new("prop4");
    let fam = Family::general(5, 6);
    for run in 0..cfg.prop4_runs {
        let inst = random_instance(&mut rng, &fam);
        let mut params = Params::with_step_limit(cfg.prop4_steps);
        params.seed = rng.gen();
        if run % 2 == 1 {
            params.restart_steps = 500;
        }
        let (v, checked) = check_prop4(&inst, params);
        match v {
            Verdict::Pass => {
                rep.checked += checked;
                if checked == 0 {
                    rep.skipped += 1;
                }
            }
            other => rep.record(other),
        }
    }
    rep
}

/// Facts 1 and 2 on random pairs of feasible points.
pub fn fact12_suites(cfg: &SuiteConfig) -> (SuiteReport, SuiteReport) {
    let mut rng = suite_rng(cfg.seed, 5);
    let mut r1 = SuiteReport::new("fact1");
    let mut r2 = SuiteReport::new("fact2");
    let fam = Family::general(4, 4);
    let mut draws = 0;
    while draws < cfg.fact_draws {
        let (inst, feasible) = feasible_instance(&mut rng, &fam);
        if feasible.len() < 2 {
            continue;
        }
        let pair: Vec<&Vec<i64>> = feasible.choose_multiple(&mut rng, 2).collect();
        r1.record(check_fact1(&inst, pair[0], pair[1]));
        r2.record(check_fact2(&inst, pair[0], pair[1]));
        draws += 1;
    }
    (r1, r2)
}

/// Fact 3 on random boundary points and one of their infeasible directions.
pub fn fact3_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed, 6);
    let mut rep = SuiteReport::new("fact3");
    let fam = Family::general(3, 4);
    let mut draws = 0;
    while draws < cfg.fact_draws {
        let (inst, feasible) = feasible_instance(&mut rng, &fam);
        let Some(x) = feasible.choose(&mut rng) else {
            continue;
        };
        let dirs = infeasible_directions(&inst, x);
        let Some(d) = dirs.choose(&mut rng) else {
            continue;
        };
        rep.record(check_fact3(&inst, &feasible, x, d));
        draws += 1;
    }
    rep
}

/// Fact 4 on random 0-1 instances.
pub fn fact4_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed, 7);
    let mut rep = SuiteReport::new("fact4");
    let fam = Family::binary(6, 6);
    for _ in 0..cfg.fact_draws {
        let inst = random_instance(&mut rng, &fam);
        let bx = SearchBox::from_bounds(&inst).expect("0-1 box fits the budget");
        rep.record(check_fact4(&inst, &bx).expect("box covers the bounds"));
    }
    rep
}
