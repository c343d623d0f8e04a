//! A self-contained linear-program solver.
//!
//! Two-phase revised simplex with a dense explicit basis inverse, generic
//! over the scalar: [`Mode::Float`] runs in `f64` with the tolerances from
//! [`crate::tol`], [`Mode::Rational`] lifts every coefficient losslessly to
//! `BigRational` (finite floats are dyadic rationals) and pivots exactly,
//! which makes it a cross-check oracle for the float path.
//!
//! Pricing is Dantzig's rule; after a run of degenerate pivots the solver
//! switches to Bland's rule until the objective strictly improves again,
//! which rules out cycling. Solves are stateless and deterministic.

mod simplex;

use crate::linalg::Scalar;
use crate::tol;
use num_rational::BigRational;
use thiserror::Error;

/// Constraint relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// A single linear constraint `coeffs · x  (≤ | = | ≥)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

/// A linear program in minimization form.
///
/// `bounds[j] = (lower, upper)` with `None` meaning unbounded on that side.
/// Variables default to free; constraints carry their relation explicitly.
#[derive(Clone, Debug)]
pub struct LpProblem<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
    pub bounds: Vec<(Option<T>, Option<T>)>,
}

impl<T: Scalar> LpProblem<T> {
    /// New problem `min objective · x` with all variables free.
    pub fn new(objective: Vec<T>) -> Self {
        let n = objective.len();
        LpProblem {
            objective,
            constraints: Vec::new(),
            bounds: vec![(None, None); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> &mut Self {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn set_lower(&mut self, var: usize, lower: T) -> &mut Self {
        self.bounds[var].0 = Some(lower);
        self
    }

    pub fn set_upper(&mut self, var: usize, upper: T) -> &mut Self {
        self.bounds[var].1 = Some(upper);
        self
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(LpError::MalformedProblem(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::MalformedProblem(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
            if !c.rhs.to_f64().is_finite() {
                return Err(LpError::MalformedProblem(format!(
                    "constraint {i} has non-finite right-hand side"
                )));
            }
            if c.coeffs.iter().any(|v| !v.to_f64().is_finite()) {
                return Err(LpError::MalformedProblem(format!(
                    "constraint {i} has non-finite coefficients"
                )));
            }
        }
        if self.objective.iter().any(|v| !v.to_f64().is_finite()) {
            return Err(LpError::MalformedProblem("non-finite objective".into()));
        }
        Ok(())
    }
}

/// Termination status. `Optimal` carries a point, the other two do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve.
///
/// At optimality `duals` holds one multiplier per constraint with the
/// convention for minimization problems: `≥ 0` on `≥`-rows, `≤ 0` on
/// `≤`-rows, free on equalities; `dual_objective` is recomputed from the
/// multipliers and the original data, so comparing it against `objective`
/// is a genuine certificate check rather than a tautology.
#[derive(Clone, Debug)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub point: Option<Vec<T>>,
    pub objective: Option<T>,
    pub duals: Option<Vec<T>>,
    pub dual_objective: Option<T>,
    pub iterations: usize,
}

impl<T: Scalar> LpSolution<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Optimal point; panics when the status is not `Optimal`.
    pub fn point(&self) -> &[T] {
        self.point.as_deref().expect("LP not optimal")
    }

    pub fn objective_value(&self) -> f64 {
        self.objective.as_ref().map(|v| v.to_f64()).unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("malformed LP: {0}")]
    MalformedProblem(String),
    #[error("numerical failure in LP solve: {0}")]
    NumericalFailure(String),
}

/// Arithmetic mode for a solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Float,
    Rational,
}

/// Solves `problem` in the requested mode.
///
/// In `Rational` mode the float data is lifted exactly, solved with exact
/// pivots, and the solution is rounded back to `f64` at the very end.
pub fn solve(problem: &LpProblem<f64>, mode: Mode) -> Result<LpSolution<f64>, LpError> {
    match mode {
        Mode::Float => {
            problem.validate()?;
            simplex::solve(problem)
        }
        Mode::Rational => {
            let lifted = lift(problem);
            let sol = solve_exact(&lifted)?;
            Ok(round_solution(sol))
        }
    }
}

/// Exact solve of a rational LP. The result is exact over the given data.
pub fn solve_exact(problem: &LpProblem<BigRational>) -> Result<LpSolution<BigRational>, LpError> {
    problem.validate()?;
    simplex::solve(problem)
}

/// Lossless lift of a float LP into rational arithmetic.
pub fn lift(problem: &LpProblem<f64>) -> LpProblem<BigRational> {
    let conv = |x: &f64| BigRational::from_f64(*x);
    LpProblem {
        objective: problem.objective.iter().map(conv).collect(),
        constraints: problem
            .constraints
            .iter()
            .map(|c| Constraint {
                coeffs: c.coeffs.iter().map(conv).collect(),
                relation: c.relation,
                rhs: conv(&c.rhs),
            })
            .collect(),
        bounds: problem
            .bounds
            .iter()
            .map(|(l, u)| (l.as_ref().map(|v| conv(v)), u.as_ref().map(|v| conv(v))))
            .collect(),
    }
}

fn round_solution(sol: LpSolution<BigRational>) -> LpSolution<f64> {
    let to_f = |v: Vec<BigRational>| v.iter().map(|x| x.to_f64()).collect::<Vec<_>>();
    LpSolution {
        status: sol.status,
        point: sol.point.map(to_f),
        objective: sol.objective.map(|v| v.to_f64()),
        duals: sol.duals.map(to_f),
        dual_objective: sol.dual_objective.map(|v| v.to_f64()),
        iterations: sol.iterations,
    }
}

/// Maximum violation of the constraints and bounds at `point`.
pub fn primal_violation<T: Scalar>(problem: &LpProblem<T>, point: &[T]) -> f64 {
    let mut worst = 0.0f64;
    for c in &problem.constraints {
        let lhs: f64 = c
            .coeffs
            .iter()
            .zip(point)
            .map(|(a, x)| a.clone() * x.clone())
            .fold(T::zero(), |acc, v| acc + v)
            .to_f64();
        let rhs = c.rhs.to_f64();
        let v = match c.relation {
            Relation::Le => lhs - rhs,
            Relation::Ge => rhs - lhs,
            Relation::Eq => (lhs - rhs).abs(),
        };
        worst = worst.max(v);
    }
    for (j, (lo, up)) in problem.bounds.iter().enumerate() {
        let x = point[j].to_f64();
        if let Some(l) = lo {
            worst = worst.max(l.to_f64() - x);
        }
        if let Some(u) = up {
            worst = worst.max(x - u.to_f64());
        }
    }
    worst
}

/// Default feasibility tolerance used by callers that double-check results.
pub fn feas_tol() -> f64 {
    tol::LP_FEAS
}

#[cfg(test)]
mod tests;
