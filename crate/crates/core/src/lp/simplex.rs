//! Two-phase revised simplex over an abstract scalar.
//!
//! The standardization maps the user problem to `min c·x, A x = b, x ≥ 0`
//! (shift/flip/split for bounds, one slack per inequality, rows negated to
//! make `b ≥ 0`), keeps the bookkeeping needed to translate points and duals
//! back, and the engine below pivots on a dense explicit basis inverse.
//! The initial basis is always the identity (slacks where possible,
//! artificials elsewhere), so no factorization is needed up front.

use super::{LpError, LpProblem, LpSolution, LpStatus, Relation};
use crate::linalg::Scalar;
use crate::tol;

enum VarMap<T> {
    /// `x = offset + x[col]`, `x[col] ≥ 0`
    Shifted { col: usize, offset: T },
    /// `x = offset − x[col]`, `x[col] ≥ 0`
    Flipped { col: usize, offset: T },
    /// `x = x[pos] − x[neg]`
    Split { pos: usize, neg: usize },
}

struct Standardized<T> {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<T>>,
    rhs: Vec<T>,
    cost: Vec<T>,
    var_map: Vec<VarMap<T>>,
    /// Standardized row -> index of the originating constraint, `None` for
    /// rows that encode an upper bound.
    row_origin: Vec<Option<usize>>,
    /// `λ_orig = ŷ_row * dual_factor` (sign flips and row scaling).
    dual_factor: Vec<T>,
    first_artificial: usize,
    initial_basis: Vec<usize>,
}

pub(super) fn solve<T: Scalar>(problem: &LpProblem<T>) -> Result<LpSolution<T>, LpError> {
    let st = standardize(problem)?;
    let mut eng = Engine::new(&st);

    let mut iterations = 0;

    // Phase 1: drive the artificials to zero.
    if st.first_artificial < st.ncols {
        let mut cost1 = vec![T::zero(); st.ncols];
        for c in cost1.iter_mut().skip(st.first_artificial) {
            *c = T::one();
        }
        match eng.run(&cost1, &mut iterations)? {
            Outcome::Optimal => {}
            Outcome::Unbounded => {
                return Err(LpError::NumericalFailure(
                    "phase-1 objective reported unbounded".into(),
                ));
            }
        }
        let infeas = eng.objective(&cost1);
        let infeasible = if T::EXACT {
            infeas > T::zero()
        } else {
            infeas.to_f64() > tol::LP_FEAS
        };
        if infeasible {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                point: None,
                objective: None,
                duals: None,
                dual_objective: None,
                iterations,
            });
        }
        eng.expel_artificials(st.first_artificial);
        for j in st.first_artificial..st.ncols {
            eng.banned[j] = true;
        }
    }

    // Phase 2.
    match eng.run(&st.cost, &mut iterations)? {
        Outcome::Unbounded => Ok(LpSolution {
            status: LpStatus::Unbounded,
            point: None,
            objective: None,
            duals: None,
            dual_objective: None,
            iterations,
        }),
        Outcome::Optimal => {
            let xb = eng.basic_values();
            let mut xcols = vec![T::zero(); st.ncols];
            for (r, &j) in eng.basis.iter().enumerate() {
                xcols[j] = xb[r].clone();
            }
            let point: Vec<T> = st
                .var_map
                .iter()
                .map(|vm| match vm {
                    VarMap::Shifted { col, offset } => offset.clone() + xcols[*col].clone(),
                    VarMap::Flipped { col, offset } => offset.clone() - xcols[*col].clone(),
                    VarMap::Split { pos, neg } => xcols[*pos].clone() - xcols[*neg].clone(),
                })
                .collect();

            let objective = problem
                .objective
                .iter()
                .zip(&point)
                .map(|(c, x)| c.clone() * x.clone())
                .fold(T::zero(), |acc, v| acc + v);

            // Constraint multipliers from the simplex duals.
            let yhat = eng.duals(&st.cost);
            let mut duals = vec![T::zero(); problem.constraints.len()];
            for (r, origin) in st.row_origin.iter().enumerate() {
                if let Some(i) = origin {
                    duals[*i] = yhat[r].clone() * st.dual_factor[r].clone();
                }
            }
            let dual_objective = dual_bound(problem, &duals);

            Ok(LpSolution {
                status: LpStatus::Optimal,
                point: Some(point),
                objective: Some(objective),
                duals: Some(duals),
                dual_objective: Some(dual_objective),
                iterations,
            })
        }
    }
}

/// Lagrangian bound `λᵀb + Σ_j min_x μ_j x_j` recomputed from the original
/// data; `μ = c − Aᵀλ` are the implied bound multipliers.
fn dual_bound<T: Scalar>(problem: &LpProblem<T>, duals: &[T]) -> T {
    let n = problem.num_vars();
    let mut mu: Vec<T> = problem.objective.clone();
    let mut bound = T::zero();
    for (c, y) in problem.constraints.iter().zip(duals) {
        bound = bound + y.clone() * c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            mu[j] = mu[j].clone() - y.clone() * a.clone();
        }
    }
    let zero_tol = if T::EXACT { 0.0 } else { tol::LP_OPT };
    for j in 0..n {
        let m = mu[j].clone();
        if m.abs().to_f64() <= zero_tol {
            continue;
        }
        let (lo, up) = &problem.bounds[j];
        if m.to_f64() > 0.0 {
            if let Some(l) = lo {
                bound = bound + m * l.clone();
            }
            // infinite lower bound with positive multiplier: certificate is
            // numerically off; the gap check downstream will catch it.
        } else if let Some(u) = up {
            bound = bound + m * u.clone();
        }
    }
    bound
}

fn standardize<T: Scalar>(problem: &LpProblem<T>) -> Result<Standardized<T>, LpError> {
    let n = problem.num_vars();
    let mut var_map = Vec::with_capacity(n);
    let mut ncols = 0usize;
    // (column, upper-shifted bound) rows to append.
    let mut bound_rows: Vec<(usize, T)> = Vec::new();

    for j in 0..n {
        let (lo, up) = &problem.bounds[j];
        match (lo, up) {
            (Some(l), None) => {
                var_map.push(VarMap::Shifted { col: ncols, offset: l.clone() });
                ncols += 1;
            }
            (Some(l), Some(u)) => {
                if u < l {
                    return Err(LpError::MalformedProblem(format!(
                        "variable {j} has upper bound below lower bound"
                    )));
                }
                var_map.push(VarMap::Shifted { col: ncols, offset: l.clone() });
                bound_rows.push((ncols, u.clone() - l.clone()));
                ncols += 1;
            }
            (None, Some(u)) => {
                var_map.push(VarMap::Flipped { col: ncols, offset: u.clone() });
                ncols += 1;
            }
            (None, None) => {
                var_map.push(VarMap::Split { pos: ncols, neg: ncols + 1 });
                ncols += 2;
            }
        }
    }
    let nstructural = ncols;

    struct RawRow<T> {
        coeffs: Vec<(usize, T)>,
        rhs: T,
        relation: Relation,
        origin: Option<usize>,
    }

    let mut raw_rows: Vec<RawRow<T>> = Vec::new();
    for (i, c) in problem.constraints.iter().enumerate() {
        let mut coeffs: Vec<T> = vec![T::zero(); nstructural];
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match &var_map[j] {
                VarMap::Shifted { col, offset } => {
                    coeffs[*col] = coeffs[*col].clone() + a.clone();
                    rhs = rhs - a.clone() * offset.clone();
                }
                VarMap::Flipped { col, offset } => {
                    coeffs[*col] = coeffs[*col].clone() - a.clone();
                    rhs = rhs - a.clone() * offset.clone();
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*pos] = coeffs[*pos].clone() + a.clone();
                    coeffs[*neg] = coeffs[*neg].clone() - a.clone();
                }
            }
        }
        raw_rows.push(RawRow {
            coeffs: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            rhs,
            relation: c.relation,
            origin: Some(i),
        });
    }
    for (col, ub) in bound_rows {
        raw_rows.push(RawRow {
            coeffs: vec![(col, T::one())],
            rhs: ub,
            relation: Relation::Le,
            origin: None,
        });
    }

    let nrows = raw_rows.len();
    let nslack = raw_rows
        .iter()
        .filter(|r| r.relation != Relation::Eq)
        .count();

    // Column-major matrix: structural, slacks, then artificials on demand.
    let mut cols: Vec<Vec<T>> = vec![vec![T::zero(); nrows]; nstructural + nslack];
    let mut rhs = vec![T::zero(); nrows];
    let mut row_origin = vec![None; nrows];
    let mut dual_factor = vec![T::one(); nrows];
    let mut slack_basis: Vec<(usize, usize)> = Vec::with_capacity(nrows);
    let mut artificial_rows: Vec<usize> = Vec::new();

    let mut next_slack = nstructural;
    for (r, row) in raw_rows.into_iter().enumerate() {
        // Equilibrate float rows so the solver tolerances are scale-free.
        let nu = if T::EXACT {
            T::one()
        } else {
            let mx = row
                .coeffs
                .iter()
                .map(|(_, v)| v.abs().to_f64())
                .fold(0.0f64, f64::max);
            T::from_f64(if mx > 0.0 { mx } else { 1.0 })
        };
        let negate = if T::EXACT {
            row.rhs < T::zero()
        } else {
            row.rhs.to_f64() < 0.0
        };
        let sigma = if negate { -T::one() } else { T::one() };
        let factor = sigma.clone() / nu.clone();

        for (j, v) in row.coeffs {
            cols[j][r] = v * factor.clone();
        }
        rhs[r] = row.rhs * factor.clone();
        row_origin[r] = row.origin;
        dual_factor[r] = factor.clone();

        match row.relation {
            Relation::Eq => {
                artificial_rows.push(r);
            }
            Relation::Le | Relation::Ge => {
                let s = if row.relation == Relation::Le { T::one() } else { -T::one() };
                let coeff = s * sigma.clone();
                cols[next_slack][r] = coeff.clone();
                if coeff == T::one() {
                    slack_basis.push((r, next_slack));
                } else {
                    artificial_rows.push(r);
                }
                next_slack += 1;
            }
        }
    }

    let first_artificial = nstructural + nslack;
    let mut basis_by_row: Vec<Option<usize>> = vec![None; nrows];
    for (r, col) in slack_basis {
        basis_by_row[r] = Some(col);
    }
    for r in artificial_rows {
        let mut col = vec![T::zero(); nrows];
        col[r] = T::one();
        cols.push(col);
        basis_by_row[r] = Some(cols.len() - 1);
    }
    let ncols_total = cols.len();

    let mut cost = vec![T::zero(); ncols_total];
    for (j, c) in problem.objective.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match &var_map[j] {
            VarMap::Shifted { col, .. } => cost[*col] = cost[*col].clone() + c.clone(),
            VarMap::Flipped { col, .. } => cost[*col] = cost[*col].clone() - c.clone(),
            VarMap::Split { pos, neg } => {
                cost[*pos] = cost[*pos].clone() + c.clone();
                cost[*neg] = cost[*neg].clone() - c.clone();
            }
        }
    }

    Ok(Standardized {
        nrows,
        ncols: ncols_total,
        cols,
        rhs,
        cost,
        var_map,
        row_origin,
        dual_factor,
        first_artificial,
        initial_basis: basis_by_row.into_iter().map(|b| b.expect("basis row")).collect(),
    })
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Engine<'a, T> {
    m: usize,
    cols: &'a [Vec<T>],
    rhs: &'a [T],
    binv: Vec<Vec<T>>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    banned: Vec<bool>,
}

impl<'a, T: Scalar> Engine<'a, T> {
    fn new(st: &'a Standardized<T>) -> Self {
        let m = st.nrows;
        let mut binv = vec![vec![T::zero(); m]; m];
        for (r, row) in binv.iter_mut().enumerate() {
            row[r] = T::one();
        }
        let mut in_basis = vec![false; st.ncols];
        for &j in &st.initial_basis {
            in_basis[j] = true;
        }
        Engine {
            m,
            cols: &st.cols,
            rhs: &st.rhs,
            binv,
            basis: st.initial_basis.clone(),
            in_basis,
            banned: vec![false; st.ncols],
        }
    }

    fn basic_values(&self) -> Vec<T> {
        (0..self.m)
            .map(|r| {
                self.binv[r]
                    .iter()
                    .zip(self.rhs)
                    .map(|(a, b)| a.clone() * b.clone())
                    .fold(T::zero(), |acc, v| acc + v)
            })
            .collect()
    }

    fn duals(&self, cost: &[T]) -> Vec<T> {
        (0..self.m)
            .map(|r| {
                (0..self.m)
                    .map(|k| cost[self.basis[k]].clone() * self.binv[k][r].clone())
                    .fold(T::zero(), |acc, v| acc + v)
            })
            .collect()
    }

    fn objective(&self, cost: &[T]) -> T {
        self.basic_values()
            .iter()
            .zip(&self.basis)
            .map(|(x, &j)| cost[j].clone() * x.clone())
            .fold(T::zero(), |acc, v| acc + v)
    }

    fn tableau_column(&self, j: usize) -> Vec<T> {
        (0..self.m)
            .map(|r| {
                self.binv[r]
                    .iter()
                    .zip(&self.cols[j])
                    .map(|(a, b)| a.clone() * b.clone())
                    .fold(T::zero(), |acc, v| acc + v)
            })
            .collect()
    }

    fn pivot(&mut self, entering: usize, row: usize, w: &[T]) {
        let inv = T::one() / w[row].clone();
        for c in 0..self.m {
            self.binv[row][c] = self.binv[row][c].clone() * inv.clone();
        }
        for r in 0..self.m {
            if r == row || w[r].is_zero() {
                continue;
            }
            let f = w[r].clone();
            for c in 0..self.m {
                let upd = self.binv[row][c].clone() * f.clone();
                self.binv[r][c] = self.binv[r][c].clone() - upd;
            }
        }
        self.in_basis[self.basis[row]] = false;
        self.in_basis[entering] = true;
        self.basis[row] = entering;
    }

    /// Rebuilds the inverse from the basis columns (float-mode hygiene).
    fn refactorize(&mut self) {
        let m = self.m;
        let mut aug: Vec<Vec<T>> = (0..m)
            .map(|r| {
                let mut row: Vec<T> = (0..m).map(|k| self.cols[self.basis[k]][r].clone()).collect();
                let mut id = vec![T::zero(); m];
                id[r] = T::one();
                row.extend(id);
                row
            })
            .collect();
        // Gauss-Jordan with partial pivoting.
        for col in 0..m {
            let piv = (col..m)
                .max_by(|&i, &j| {
                    aug[i][col]
                        .abs()
                        .partial_cmp(&aug[j][col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            if aug[piv][col].is_zero() {
                return; // singular basis: keep the updated inverse as-is
            }
            aug.swap(col, piv);
            let inv = T::one() / aug[col][col].clone();
            for c in 0..2 * m {
                aug[col][c] = aug[col][c].clone() * inv.clone();
            }
            for r in 0..m {
                if r == col || aug[r][col].is_zero() {
                    continue;
                }
                let f = aug[r][col].clone();
                for c in 0..2 * m {
                    let upd = aug[col][c].clone() * f.clone();
                    aug[r][c] = aug[r][c].clone() - upd;
                }
            }
        }
        for r in 0..m {
            for c in 0..m {
                self.binv[r][c] = aug[r][m + c].clone();
            }
        }
    }

    /// After phase 1, pivots basic artificials out where possible. Rows where
    /// no pivot exists are linearly dependent; their artificial stays basic
    /// at zero and is banned from re-entering, which is harmless.
    fn expel_artificials(&mut self, first_artificial: usize) {
        for r in 0..self.m {
            if self.basis[r] < first_artificial {
                continue;
            }
            let mut done = false;
            for j in 0..first_artificial {
                if self.in_basis[j] || self.banned[j] || done {
                    continue;
                }
                let w = self.tableau_column(j);
                let usable = if T::EXACT {
                    !w[r].is_zero()
                } else {
                    w[r].abs().to_f64() > 1e-9
                };
                if usable {
                    self.pivot(j, r, &w);
                    done = true;
                }
            }
        }
    }

    fn run(&mut self, cost: &[T], iterations: &mut usize) -> Result<Outcome, LpError> {
        let n = self.cols.len();
        let enter_tol = if T::EXACT { 0.0 } else { tol::LP_OPT };
        let piv_tol = if T::EXACT { 0.0 } else { 1e-11 };
        let degen_tol = if T::EXACT { 0.0 } else { 1e-12 };
        let stall_limit = 40 + self.m;
        let max_iters = 50 * (n + self.m) + 5_000;

        let mut bland = false;
        let mut stall = 0usize;
        let mut local_iters = 0usize;

        loop {
            local_iters += 1;
            *iterations += 1;
            if local_iters > max_iters {
                return Err(LpError::NumericalFailure(format!(
                    "simplex exceeded {max_iters} iterations"
                )));
            }
            if !T::EXACT && local_iters % 128 == 0 {
                self.refactorize();
            }

            let y = self.duals(cost);
            let mut entering: Option<usize> = None;
            let mut best = T::from_f64(-enter_tol);
            for j in 0..n {
                if self.in_basis[j] || self.banned[j] {
                    continue;
                }
                let mut d = cost[j].clone();
                for (r, a) in self.cols[j].iter().enumerate() {
                    if !a.is_zero() {
                        d = d - y[r].clone() * a.clone();
                    }
                }
                let negative = if T::EXACT {
                    d < T::zero()
                } else {
                    d.to_f64() < -enter_tol
                };
                if !negative {
                    continue;
                }
                if bland {
                    entering = Some(j);
                    break;
                }
                if d < best {
                    best = d;
                    entering = Some(j);
                }
            }
            let Some(e) = entering else {
                return Ok(Outcome::Optimal);
            };

            let w = self.tableau_column(e);
            let xb = self.basic_values();
            let mut leave: Option<usize> = None;
            let mut best_ratio: Option<T> = None;
            for r in 0..self.m {
                let usable = if T::EXACT {
                    w[r] > T::zero()
                } else {
                    w[r].to_f64() > piv_tol
                };
                if !usable {
                    continue;
                }
                let ratio = {
                    let num = if xb[r] < T::zero() { T::zero() } else { xb[r].clone() };
                    num / w[r].clone()
                };
                let better = match &best_ratio {
                    None => true,
                    Some(b) => {
                        ratio < *b
                            || (ratio == *b
                                && self.basis[r] < self.basis[leave.unwrap()])
                    }
                };
                if better {
                    best_ratio = Some(ratio);
                    leave = Some(r);
                }
            }
            let Some(lr) = leave else {
                return Ok(Outcome::Unbounded);
            };

            let step = best_ratio.unwrap();
            let degenerate = if T::EXACT {
                step.is_zero()
            } else {
                step.to_f64() <= degen_tol
            };
            if degenerate {
                stall += 1;
                if stall > stall_limit {
                    bland = true;
                }
            } else {
                stall = 0;
                bland = false;
            }

            self.pivot(e, lr, &w);
        }
    }
}
