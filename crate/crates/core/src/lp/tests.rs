use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(objective: Vec<f64>) -> LpProblem<f64> {
    LpProblem::new(objective)
}

#[test]
fn single_active_bound() {
    // min x subject to x ≥ 3
    let mut lp = p(vec![1.0]);
    lp.constrain(vec![1.0], Relation::Ge, 3.0);
    for mode in [Mode::Float, Mode::Rational] {
        let sol = solve(&lp, mode).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.point()[0] - 3.0).abs() < 1e-9);
        assert!((sol.objective_value() - 3.0).abs() < 1e-9);
    }
}

#[test]
fn empty_feasible_set() {
    // min 0 subject to x ≤ −1, x ≥ 1
    let mut lp = p(vec![0.0]);
    lp.constrain(vec![1.0], Relation::Le, -1.0);
    lp.constrain(vec![1.0], Relation::Ge, 1.0);
    for mode in [Mode::Float, Mode::Rational] {
        let sol = solve(&lp, mode).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        assert!(sol.point.is_none());
    }
}

#[test]
fn unbounded_direction() {
    let mut lp = p(vec![-1.0]);
    lp.set_lower(0, 0.0);
    lp.constrain(vec![0.0], Relation::Le, 1.0);
    for mode in [Mode::Float, Mode::Rational] {
        let sol = solve(&lp, mode).unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
    }
}

#[test]
fn dimension_mismatch_is_rejected() {
    let mut lp = p(vec![1.0, 2.0]);
    lp.constrain(vec![1.0], Relation::Le, 1.0);
    assert!(matches!(
        solve(&lp, Mode::Float),
        Err(LpError::MalformedProblem(_))
    ));
}

#[test]
fn non_finite_rhs_is_rejected() {
    let mut lp = p(vec![1.0]);
    lp.constrain(vec![1.0], Relation::Le, f64::INFINITY);
    assert!(matches!(
        solve(&lp, Mode::Float),
        Err(LpError::MalformedProblem(_))
    ));
}

#[test]
fn textbook_optimum_with_duals() {
    // max x + 2y  s.t.  x + y ≤ 6, x + 3y ≤ 12, 2x + y ≤ 10, x,y ≥ 0
    // as a minimization of −x − 2y; optimum 9 at (3, 3).
    let mut lp = p(vec![-1.0, -2.0]);
    lp.set_lower(0, 0.0).set_lower(1, 0.0);
    lp.constrain(vec![1.0, 1.0], Relation::Le, 6.0);
    lp.constrain(vec![1.0, 3.0], Relation::Le, 12.0);
    lp.constrain(vec![2.0, 1.0], Relation::Le, 10.0);
    let sol = solve(&lp, Mode::Float).unwrap();
    assert_eq!(sol.status, LpStatus::Optimal);
    assert!((sol.objective_value() + 9.0).abs() < 1e-9);
    let x = sol.point();
    assert!((x[0] - 3.0).abs() < 1e-9 && (x[1] - 3.0).abs() < 1e-9);

    // Duals: rows 1 and 2 active. λ solves λ1 + λ2·1 = ... analytic: from
    // Aᵀλ = c over the two active rows: λ1 + λ2 = −1, λ1 + 3λ2 = −2, so
    // λ = (−1/2, −1/2, 0); both ≤ 0 as required for ≤-rows in a min problem.
    let duals = sol.duals.as_ref().unwrap();
    assert!((duals[0] + 0.5).abs() < 1e-9, "{duals:?}");
    assert!((duals[1] + 0.5).abs() < 1e-9);
    assert!(duals[2].abs() < 1e-9);
    let gap = (sol.dual_objective.unwrap() - sol.objective.unwrap()).abs();
    assert!(gap < 1e-9, "duality gap {gap}");
}

#[test]
fn equality_constraints_and_free_variables() {
    // min x + y s.t. x + y = 2, x − y = 0 with both variables free.
    let mut lp = p(vec![1.0, 1.0]);
    lp.constrain(vec![1.0, 1.0], Relation::Eq, 2.0);
    lp.constrain(vec![1.0, -1.0], Relation::Eq, 0.0);
    let sol = solve(&lp, Mode::Float).unwrap();
    assert_eq!(sol.status, LpStatus::Optimal);
    let x = sol.point();
    assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
}

#[test]
fn beale_cycling_instance_terminates() {
    // The classic degenerate instance that cycles under naive Dantzig
    // pricing. The Bland rescue has to kick in; optimum is −1/20.
    let mut lp = p(vec![-0.75, 150.0, -0.02, 6.0]);
    for j in 0..4 {
        lp.set_lower(j, 0.0);
    }
    lp.constrain(vec![0.25, -60.0, -1.0 / 25.0, 9.0], Relation::Le, 0.0);
    lp.constrain(vec![0.5, -90.0, -1.0 / 50.0, 3.0], Relation::Le, 0.0);
    lp.constrain(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
    for mode in [Mode::Float, Mode::Rational] {
        let sol = solve(&lp, mode).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!(
            (sol.objective_value() + 0.05).abs() < 1e-9,
            "objective {} in {mode:?}",
            sol.objective_value()
        );
    }
}

#[test]
fn upper_bounds_become_rows() {
    // min −x − y, 0 ≤ x ≤ 2, 1 ≤ y ≤ 4, x + y ≤ 5 → optimum −6 at (2, 3)
    // or (1, 4); the objective is what matters.
    let mut lp = p(vec![-1.0, -1.0]);
    lp.set_lower(0, 0.0).set_upper(0, 2.0);
    lp.set_lower(1, 1.0).set_upper(1, 4.0);
    lp.constrain(vec![1.0, 1.0], Relation::Le, 5.0);
    let sol = solve(&lp, Mode::Float).unwrap();
    assert!((sol.objective_value() + 5.0).abs() < 1e-9);
    assert!(primal_violation(&lp, sol.point()) < 1e-9);
}

#[test]
fn solver_is_deterministic() {
    let mut lp = p(vec![-2.0, -3.0, 1.0]);
    for j in 0..3 {
        lp.set_lower(j, 0.0);
    }
    lp.constrain(vec![1.0, 1.0, 1.0], Relation::Le, 10.0);
    lp.constrain(vec![2.0, 1.0, -1.0], Relation::Ge, 1.0);
    lp.constrain(vec![1.0, -1.0, 3.0], Relation::Eq, 2.0);
    let a = solve(&lp, Mode::Float).unwrap();
    let b = solve(&lp, Mode::Float).unwrap();
    assert_eq!(a.point(), b.point());
    assert_eq!(a.objective, b.objective);
    assert_eq!(a.iterations, b.iterations);
}

// ---------------------------------------------------------------------------
// Brute-force oracle: enumerate candidate vertices of small LPs by making
// every n-subset of constraints/bounds tight, keep the feasible ones, and
// take the best objective. Independent of the simplex path.
// ---------------------------------------------------------------------------

fn oracle_minimum(lp: &LpProblem<f64>) -> Option<f64> {
    let n = lp.num_vars();
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for c in &lp.constraints {
        rows.push((c.coeffs.clone(), c.rhs));
    }
    for (j, (lo, up)) in lp.bounds.iter().enumerate() {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        if let Some(l) = lo {
            rows.push((e.clone(), *l));
        }
        if let Some(u) = up {
            rows.push((e, *u));
        }
    }
    let k = rows.len();
    let mut best: Option<f64> = None;
    let mut subset = vec![0usize; n];
    fn recurse(
        start: usize,
        depth: usize,
        n: usize,
        k: usize,
        subset: &mut Vec<usize>,
        rows: &[(Vec<f64>, f64)],
        lp: &LpProblem<f64>,
        best: &mut Option<f64>,
    ) {
        if depth == n {
            let a: Vec<Vec<f64>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<f64> = subset.iter().map(|&i| rows[i].1).collect();
            if let Some(x) = crate::linalg::solve_linear(&a, &b) {
                if primal_violation(lp, &x) < 1e-7 {
                    let obj = crate::linalg::dot(&lp.objective, &x);
                    *best = Some(best.map_or(obj, |b: f64| b.min(obj)));
                }
            }
            return;
        }
        for i in start..k {
            subset[depth] = i;
            recurse(i + 1, depth + 1, n, k, subset, rows, lp, best);
        }
    }
    recurse(0, 0, n, k, &mut subset, &rows, lp, &mut best);
    best
}

#[test]
fn random_lps_match_brute_force_and_exact_mode() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut optimal_seen = 0;
    let mut infeasible_seen = 0;
    for case in 0..200 {
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(2..=5);
        let mut lp = p((0..n).map(|_| rng.gen_range(-3..=3) as f64).collect());
        for j in 0..n {
            lp.set_lower(j, -5.0);
            lp.set_upper(j, 5.0);
        }
        for _ in 0..m {
            let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-3..=3) as f64).collect();
            let rel = match rng.gen_range(0..3) {
                0 => Relation::Le,
                1 => Relation::Ge,
                _ => Relation::Eq,
            };
            lp.constrain(coeffs, rel, rng.gen_range(-4..=4) as f64);
        }

        let float = solve(&lp, Mode::Float).unwrap();
        let exact = solve(&lp, Mode::Rational).unwrap();
        assert_eq!(float.status, exact.status, "case {case}: {lp:?}");
        match float.status {
            LpStatus::Optimal => {
                optimal_seen += 1;
                let d = (float.objective_value() - exact.objective_value()).abs();
                assert!(d <= 1e-7, "case {case}: float/rational gap {d}");
                let brute = oracle_minimum(&lp).expect("oracle found no vertex");
                assert!(
                    (float.objective_value() - brute).abs() < 1e-6,
                    "case {case}: simplex {} vs oracle {brute}",
                    float.objective_value()
                );
                assert!(primal_violation(&lp, float.point()) < 1e-8);
                let gap =
                    (float.dual_objective.unwrap() - float.objective.unwrap()).abs();
                assert!(gap < 1e-7, "case {case}: duality gap {gap}");
            }
            LpStatus::Infeasible => infeasible_seen += 1,
            LpStatus::Unbounded => unreachable!("boxed variables"),
        }
    }
    // The generator must exercise both outcomes.
    assert!(optimal_seen > 50, "only {optimal_seen} optimal cases");
    assert!(infeasible_seen > 10, "only {infeasible_seen} infeasible cases");
}

#[test]
fn exact_mode_returns_exact_rationals() {
    use num_rational::BigRational;
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    // min x + y s.t. 3x + y ≥ 1, x + 3y ≥ 1, x,y ≥ 0 → x = y = 1/4.
    let mut lp: LpProblem<BigRational> = LpProblem::new(vec![q(1, 1), q(1, 1)]);
    lp.set_lower(0, q(0, 1)).set_lower(1, q(0, 1));
    lp.constrain(vec![q(3, 1), q(1, 1)], Relation::Ge, q(1, 1));
    lp.constrain(vec![q(1, 1), q(3, 1)], Relation::Ge, q(1, 1));
    let sol = solve_exact(&lp).unwrap();
    assert_eq!(sol.status, LpStatus::Optimal);
    assert_eq!(sol.point()[0], q(1, 4));
    assert_eq!(sol.point()[1], q(1, 4));
    assert_eq!(sol.objective.unwrap(), q(1, 2));
}
