use std::fmt::Write;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ilp_ls::lift_move::lm_candidate;
use ilp_ls::metrics::{primal_gap, primal_gap_function, primal_integral, PrimalTrace};
use ilp_ls::model::{
    evaluate_objective, is_feasible, slack, violated_rows, Assignment, Instance, Tracker, FEAS_TOL,
};
use ilp_ls::oracle::{
    enumerate_feasible, in_polyhedron, is_boundary, random_instance, Family, SearchBox,
};
use ilp_ls::parser::parse_mps;
use ilp_ls::tight_move::{tm_candidate, WeightState};

fn instance_from(seed: u64) -> Instance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), &Family::general(5, 6))
}

fn point_in_bounds(inst: &Instance, rng: &mut ChaCha8Rng, slack_out: i64) -> Vec<i64> {
    (0..inst.num_vars())
        .map(|j| {
            let (l, u) = (inst.lower(j).unwrap(), inst.upper(j).unwrap());
            rng.gen_range(l - slack_out..=u + slack_out)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tracker_matches_fresh_evaluation(seed in any::<u64>(), moves in prop::collection::vec((0usize..5, -5i64..=5), 1..40)) {
        let inst = instance_from(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let start = point_in_bounds(&inst, &mut rng, 0);
        let mut t = Tracker::new(&inst, Assignment(start));
        for (j, v) in moves {
            let j = j % inst.num_vars();
            t.set(&inst, j, v);
            let a = t.assignment().clone();
            for i in 0..inst.num_cons() {
                prop_assert!((t.activity(i) - inst.row(i).activity(a.values())).abs() < 1e-9);
            }
            let mut tracked = t.violated().to_vec();
            tracked.sort_unstable();
            prop_assert_eq!(tracked, violated_rows(&inst, &a));
            prop_assert!((t.objective() - evaluate_objective(&inst, &a)).abs() < 1e-9);
        }
    }

    #[test]
    fn violated_rows_are_the_negative_slack_rows(seed in any::<u64>()) {
        let inst = instance_from(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let a = Assignment(point_in_bounds(&inst, &mut rng, 0));
        let expected: Vec<usize> = (0..inst.num_cons()).filter(|&i| slack(&inst, i, &a) < -FEAS_TOL).collect();
        prop_assert_eq!(violated_rows(&inst, &a), expected.clone());
        prop_assert_eq!(is_feasible(&inst, &a), expected.is_empty());
    }

    #[test]
    fn objective_is_linear(seed in any::<u64>(), j in 0usize..5, delta in -7i64..=7) {
        let inst = instance_from(seed);
        let j = j % inst.num_vars();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let a = Assignment(point_in_bounds(&inst, &mut rng, 0));
        let mut b = a.clone();
        b.0[j] += delta;
        let diff = evaluate_objective(&inst, &b) - evaluate_objective(&inst, &a);
        prop_assert!((diff - inst.obj_coef(j) * delta as f64).abs() < 1e-9);
    }

    /// A tight move stays within bounds and leaves its row either as tight as
    /// an integer step allows or pinned at a bound.
    #[test]
    fn tight_move_is_bound_safe_and_tightest(seed in any::<u64>(), pick in any::<(usize, usize)>()) {
        let inst = instance_from(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        let a = Assignment(point_in_bounds(&inst, &mut rng, 0));
        let i = pick.0 % inst.num_cons();
        let (j, coef) = inst.row(i).terms[pick.1 % inst.row(i).terms.len()];
        let before = slack(&inst, i, &a);
        let Some(op) = tm_candidate(&inst, j, i, &a) else { return Ok(()); };
        prop_assert!(inst.within_bounds(j, op.new_value));
        let mut b = a.clone();
        b.0[j] = op.new_value;
        let after = slack(&inst, i, &b);
        let at_bound = Some(op.new_value) == inst.lower(j) || Some(op.new_value) == inst.upper(j);
        if before >= -FEAS_TOL {
            prop_assert!(after >= -FEAS_TOL);
        }
        if !at_bound {
            prop_assert!(after >= -FEAS_TOL);
            prop_assert!(after < coef.abs() - FEAS_TOL);
        }
    }

    #[test]
    fn lift_move_keeps_feasibility_and_improves(seed in any::<u64>(), pick in any::<usize>()) {
        let inst = instance_from(seed);
        let bx = SearchBox::from_bounds(&inst).unwrap();
        let feasible = enumerate_feasible(&inst, &bx).unwrap();
        let x = &feasible[pick % feasible.len()];
        let a = Assignment(x.clone());
        for j in 0..inst.num_vars() {
            if let Some(op) = lm_candidate(&inst, j, &a) {
                let mut b = a.clone();
                b.0[j] = op.new_value;
                prop_assert!(is_feasible(&inst, &b));
                prop_assert!(evaluate_objective(&inst, &b) < evaluate_objective(&inst, &a));
            }
        }
    }

    #[test]
    fn weights_stay_within_limits(m in 1usize..60, sp in 0.0f64..1.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w = WeightState::new(m, sp);
        for _ in 0..2000 {
            let violated: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
            let best = rng.gen_bool(0.5).then(|| rng.gen_range(-3.0..3.0));
            w.update(&violated, |i| violated.binary_search(&i).is_ok(), rng.gen_range(-3.0..3.0), best, &mut rng);
        }
        prop_assert!(w.con_weights().iter().all(|&c| (1..=w.ul_con()).contains(&c)));
        prop_assert!((1..=w.ul_obj()).contains(&w.obj()));
        prop_assert_eq!(w.ul_con(), (m as u32).max(1000));
        prop_assert_eq!(w.ul_obj(), w.ul_con() / 10);
    }

    #[test]
    fn primal_gap_symmetric_and_bounded(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        let g = primal_gap(a, b);
        prop_assert!((0.0..=1.0).contains(&g));
        prop_assert_eq!(g, primal_gap(b, a));
    }

    #[test]
    fn primal_integral_matches_quadrature(
        times in prop::collection::btree_set(1u32..1000, 0..8),
        drops in prop::collection::vec(0.1f64..5.0, 8),
        reference in -5.0f64..5.0,
        extra in 0.1f64..3.0,
    ) {
        let t_max = 1000.0;
        let mut trace = PrimalTrace::new(t_max).with_reference(Some(reference));
        let mut obj = reference + drops.iter().sum::<f64>() + 1.0;
        for (k, &t) in times.iter().enumerate() {
            obj -= drops[k];
            trace.record(t as f64, obj);
        }
        prop_assert!(trace.validate().is_ok());
        let p = primal_integral(&trace);
        prop_assert!((0.0..=t_max).contains(&p));

        let mut cuts: Vec<f64> = vec![0.0];
        cuts.extend(times.iter().map(|&t| t as f64));
        cuts.push(t_max);
        let quad: f64 = cuts
            .windows(2)
            .map(|w| primal_gap_function(&trace, 0.5 * (w[0] + w[1])) * (w[1] - w[0]))
            .sum();
        prop_assert!((p - quad).abs() <= 1e-9);

        // one more improving event never increases P(T)
        let mut better = trace.clone();
        better.record(t_max, obj - extra);
        prop_assert!(primal_integral(&better) <= p + 1e-12);
    }

    /// Second, independent neighbor check written against the raw rows.
    #[test]
    fn boundary_check_agrees_with_direct_neighbor_scan(seed in any::<u64>()) {
        let inst = instance_from(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 5);
        let x = point_in_bounds(&inst, &mut rng, 1);
        let inside = |y: &[i64]| -> bool {
            for j in 0..y.len() {
                if y[j] < inst.lower(j).unwrap() || y[j] > inst.upper(j).unwrap() {
                    return false;
                }
            }
            inst.rows().iter().all(|r| {
                let mut s = r.rhs;
                for &(j, a) in &r.terms {
                    s -= a * y[j] as f64;
                }
                s >= -FEAS_TOL
            })
        };
        let mut expected = false;
        if inside(&x) {
            'scan: for j in 0..x.len() {
                for step in [-1, 1] {
                    let mut y = x.clone();
                    y[j] += step;
                    if !inside(&y) {
                        expected = true;
                        break 'scan;
                    }
                }
            }
        }
        prop_assert_eq!(is_boundary(&inst, &x), expected);
        prop_assert_eq!(in_polyhedron(&inst, &x), inside(&x));
    }
}

/// Rejection sampling estimate of `|P ∩ Z^n| / |box|` agrees with the
/// enumerated count.
#[test]
fn enumeration_count_matches_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for seed in 0..20u64 {
        let inst = instance_from(seed);
        let bx = SearchBox::from_bounds(&inst).unwrap();
        let count = enumerate_feasible(&inst, &bx).unwrap().len() as f64;
        let size: f64 = (0..inst.num_vars())
            .map(|j| (inst.upper(j).unwrap() - inst.lower(j).unwrap() + 1) as f64)
            .product();
        let p = count / size;
        let n = 20_000;
        let hits = (0..n)
            .filter(|_| in_polyhedron(&inst, &point_in_bounds(&inst, &mut rng, 0)))
            .count() as f64;
        let sd = (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (hits / n as f64 - p).abs() <= 5.0 * sd + 1e-3,
            "seed {seed}: p={p} est={}",
            hits / n as f64
        );
    }
}

#[derive(Clone, Copy, Debug)]
enum Sense {
    L,
    G,
    E,
}

#[derive(Clone, Debug)]
struct RawRow {
    sense: Sense,
    coefs: Vec<i64>,
    rhs: i64,
    range: Option<i64>,
}

fn raw_rows(n: usize) -> impl Strategy<Value = Vec<RawRow>> {
    let row = (
        prop_oneof![Just(Sense::L), Just(Sense::G), Just(Sense::E)],
        prop::collection::vec(-3i64..=3, n),
        -6i64..=6,
        prop::option::of(-4i64..=4),
    )
        .prop_map(|(sense, coefs, rhs, range)| RawRow {
            sense,
            coefs,
            rhs,
            range,
        });
    prop::collection::vec(row, 1..5)
}

fn mps_text(rows: &[RawRow], obj: &[i64], maximize: bool, constant: i64) -> String {
    let n = obj.len();
    let mut s = String::new();
    if maximize {
        s.push_str("OBJSENSE\n    MAX\n");
    }
    s.push_str("ROWS\n N obj\n");
    for (i, r) in rows.iter().enumerate() {
        let tag = match r.sense {
            Sense::L => "L",
            Sense::G => "G",
            Sense::E => "E",
        };
        writeln!(s, " {tag} r{i}").unwrap();
    }
    s.push_str("COLUMNS\n    M 'MARKER' 'INTORG'\n");
    for j in 0..n {
        writeln!(s, "    x{j} obj {}", obj[j]).unwrap();
        for (i, r) in rows.iter().enumerate() {
            writeln!(s, "    x{j} r{i} {}", r.coefs[j]).unwrap();
        }
    }
    s.push_str("    M 'MARKER' 'INTEND'\nRHS\n");
    writeln!(s, "    RHS obj {}", -constant).unwrap();
    for (i, r) in rows.iter().enumerate() {
        writeln!(s, "    RHS r{i} {}", r.rhs).unwrap();
    }
    s.push_str("RANGES\n");
    for (i, r) in rows.iter().enumerate() {
        if let Some(v) = r.range {
            writeln!(s, "    RNG r{i} {v}").unwrap();
        }
    }
    s.push_str("BOUNDS\n");
    for j in 0..n {
        writeln!(s, " LO BND x{j} -3\n UP BND x{j} 3").unwrap();
    }
    s.push_str("ENDATA\n");
    s
}

/// Row semantics straight from the MPS conventions.
fn satisfies(r: &RawRow, x: &[i64]) -> bool {
    let act: i64 = r.coefs.iter().zip(x).map(|(a, v)| a * v).sum();
    let b = r.rhs;
    match (r.sense, r.range) {
        (Sense::L, None) => act <= b,
        (Sense::L, Some(q)) => b - q.abs() <= act && act <= b,
        (Sense::G, None) => act >= b,
        (Sense::G, Some(q)) => b <= act && act <= b + q.abs(),
        (Sense::E, None) => act == b,
        (Sense::E, Some(q)) if q >= 0 => b <= act && act <= b + q,
        (Sense::E, Some(q)) => b + q <= act && act <= b,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalization_is_sound(
        (obj, rows, points) in (1usize..4).prop_flat_map(|n| (
            prop::collection::vec(-4i64..=4, n),
            raw_rows(n),
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), 20),
        )),
        maximize in any::<bool>(),
        constant in -5i64..=5,
    ) {
        let text = mps_text(&rows, &obj, maximize, constant);
        let inst = match parse_mps(&text) {
            Ok(i) => i,
            // an all-zero row that no point can satisfy is rejected at parse time
            Err(_) => {
                prop_assert!(rows.iter().any(|r| r.coefs.iter().all(|&a| a == 0) && !satisfies(r, &vec![0; obj.len()])));
                return Ok(());
            }
        };
        for x in points {
            let direct = rows.iter().all(|r| satisfies(r, &x));
            let a = Assignment(x.clone());
            prop_assert_eq!(is_feasible(&inst, &a), direct, "point {:?}", x);
            let original: i64 = obj.iter().zip(&x).map(|(c, v)| c * v).sum::<i64>() + constant;
            let reported = inst.reported_objective(evaluate_objective(&inst, &a));
            prop_assert!((reported - original as f64).abs() < 1e-9);
        }
    }
}
