//! Optimal containment under homothety: the generalized radii
//! `R(K,C)`, `r(K,C)`, `R₁(K,C)`, `r₁(K,C)` for polytope pairs.
//!
//! The workhorse is the support formulation of `K ⊆ c + ρC`: with `C` as a
//! halfspace system `{x : gⱼ·x ≤ hⱼ}`, containment is equivalent to
//! `h(K, gⱼ) ≤ ρ hⱼ + gⱼ·c` for every row, giving an LP in `(ρ, c)` only.
//! That LP is solved through its dual (one variable per row of `C`, `d+1`
//! rows), whose basis stays tiny no matter how many facets the gauge has;
//! the optimal `(ρ, c)` is read off the dual multipliers and re-verified
//! vertex-wise.
//!
//! The two textbook formulations — vertex-in-vertex with barycentric
//! weights and row-in-row with column multipliers — are kept as
//! [`Formulation::VertexVertex`] and [`Formulation::RowRow`]; they are the
//! certificate forms the computability argument is based on, and tests pin
//! all three against each other.

use crate::linalg;
use crate::lp::{self, LpError, LpProblem, LpSolution, LpStatus, Mode, Relation};
use crate::poly::{difference_body, Body, HPolytope, PolyError, VPolytope};
use crate::tol;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ContainError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("gauge body is degenerate (lower-dimensional or unbounded)")]
    DegenerateGauge,
    #[error("inradius is undefined for a singleton gauge")]
    SingletonGauge,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("containment solve failed verification: {0}")]
    Verification(String),
}

/// Optimal dilatation `ρ` and a translation `c` with `K ⊆ c + ρC`.
#[derive(Clone, Debug)]
pub struct ContainmentResult {
    pub rho: f64,
    pub center: Vec<f64>,
    /// Indices of gauge rows active at the optimum (support route only).
    pub tight_witness: Option<Vec<usize>>,
    /// Exact optimum when solved in rational mode.
    pub rho_exact: Option<BigRational>,
}

/// Which LP encoding of the containment to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Formulation {
    /// Support formulation via its dual; converts presentations as needed.
    #[default]
    Auto,
    /// Barycentric-weight LP over the vertices of both bodies.
    VertexVertex,
    /// Column-multiplier LP over the halfspace systems of both bodies.
    RowRow,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ContainOptions {
    pub mode: Mode,
    pub formulation: Formulation,
}

impl ContainOptions {
    pub fn rational() -> Self {
        ContainOptions { mode: Mode::Rational, ..Default::default() }
    }
}

/// `R(K,C)`: least `ρ ≥ 0` such that a translate of `ρC` contains `K`.
pub fn circumradius(k: &Body, c: &Body) -> Result<ContainmentResult, ContainError> {
    circumradius_with(k, c, &ContainOptions::default())
}

pub fn circumradius_with(
    k: &Body,
    c: &Body,
    opts: &ContainOptions,
) -> Result<ContainmentResult, ContainError> {
    if k.dim() != c.dim() {
        return Err(ContainError::DimensionMismatch(k.dim(), c.dim()));
    }
    if let Some(point) = singleton_point(k)? {
        return Ok(ContainmentResult {
            rho: 0.0,
            center: point,
            tight_witness: None,
            rho_exact: opts.mode.is_rational().then(|| BigRational::from_float(0.0).unwrap()),
        });
    }
    match opts.formulation {
        Formulation::Auto => support_route(k, c, opts.mode),
        Formulation::VertexVertex => vertex_vertex_route(k, c, opts.mode),
        Formulation::RowRow => row_row_route(k, c, opts.mode),
    }
}

/// `r(K,C) = 1/R(C,K)`: greatest `ρ` with a translate of `ρC` inside `K`.
pub fn inradius(k: &Body, c: &Body) -> Result<ContainmentResult, ContainError> {
    inradius_with(k, c, &ContainOptions::default())
}

pub fn inradius_with(
    k: &Body,
    c: &Body,
    opts: &ContainOptions,
) -> Result<ContainmentResult, ContainError> {
    let rev = circumradius_with(c, k, opts)?;
    if rev.rho <= tol::GEOM {
        return Err(ContainError::SingletonGauge);
    }
    let r = 1.0 / rev.rho;
    // From C ⊆ c* + R·K: the copy c + rC with c = −c*/R sits inside K.
    let center = linalg::scale(&rev.center, -r);
    Ok(ContainmentResult {
        rho: r,
        center,
        tight_witness: rev.tight_witness,
        rho_exact: rev.rho_exact.map(|q| {
            let one = BigRational::from_float(1.0).unwrap();
            one / q
        }),
    })
}

/// `R₁(K,C)`: the `C`-radius of the longest segment in `K`, computed as
/// `R` on the difference bodies (they agree on symmetric pairs, and
/// symmetrization changes neither side). The `C`-diameter is `2R₁`.
pub fn core_radius_1(k: &Body, c: &Body) -> Result<f64, ContainError> {
    Ok(core_radius_1_with(k, c, &ContainOptions::default())?.rho)
}

pub fn core_radius_1_with(
    k: &Body,
    c: &Body,
    opts: &ContainOptions,
) -> Result<ContainmentResult, ContainError> {
    if k.dim() != c.dim() {
        return Err(ContainError::DimensionMismatch(k.dim(), c.dim()));
    }
    let dk = Body::from_v(difference_body(k)?);
    let dc = Body::from_v(difference_body(c)?);
    circumradius_with(&dk, &dc, opts)
}

/// `r₁(K,C) = 1/R₁(C,K)`: the smallest support ratio of the difference
/// bodies. The `C`-width is `2r₁`.
pub fn width_radius_1(k: &Body, c: &Body) -> Result<f64, ContainError> {
    width_radius_1_with(k, c, &ContainOptions::default())
}

pub fn width_radius_1_with(
    k: &Body,
    c: &Body,
    opts: &ContainOptions,
) -> Result<f64, ContainError> {
    let rev = core_radius_1_with(c, k, opts)?;
    if rev.rho <= tol::GEOM {
        return Err(ContainError::SingletonGauge);
    }
    Ok(1.0 / rev.rho)
}

fn singleton_point(k: &Body) -> Result<Option<Vec<f64>>, ContainError> {
    let v = k.v()?;
    let p0 = v.points.first().ok_or(PolyError::Empty)?;
    let scale = p0.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    let singleton = v
        .points
        .iter()
        .all(|p| linalg::dist(p, p0) <= tol::GEOM * scale);
    Ok(singleton.then(|| p0.clone()))
}

impl Mode {
    fn is_rational(self) -> bool {
        self == Mode::Rational
    }
}

// ---------------------------------------------------------------------------
// Support formulation (default route)
// ---------------------------------------------------------------------------

struct GaugeRows {
    normals: Vec<Vec<f64>>,
    offsets: Vec<f64>,
}

fn gauge_rows(c: &HPolytope, normalize: bool) -> GaugeRows {
    let mut normals = Vec::with_capacity(c.rows.len());
    let mut offsets = Vec::with_capacity(c.rows.len());
    for r in &c.rows {
        let len = if normalize { linalg::norm(&r.normal) } else { 1.0 };
        normals.push(linalg::scale(&r.normal, 1.0 / len));
        offsets.push(r.offset / len);
    }
    GaugeRows { normals, offsets }
}

fn support_route(k: &Body, c: &Body, mode: Mode) -> Result<ContainmentResult, ContainError> {
    let kv = k.v()?;
    let ch = c.h()?;
    match mode {
        Mode::Float => {
            let rows = gauge_rows(ch, true);
            let supports: Vec<f64> = rows
                .normals
                .iter()
                .map(|g| {
                    kv.points
                        .iter()
                        .map(|p| linalg::dot(g, p))
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .collect();
            let solved = match solve_support_dual_f64(&rows, &supports) {
                Ok(rc) => finish_support(&rows, &supports, rc.0, rc.1, None),
                Err(e) => Err(e),
            };
            match solved {
                Ok(out) => Ok(out),
                // Degenerate dual bases can happen; the direct primal is the
                // slow-but-sure fallback.
                Err(_) => {
                    let (rho, center) = solve_support_primal_f64(&rows, &supports)?;
                    finish_support(&rows, &supports, rho, center, None)
                }
            }
        }
        Mode::Rational => {
            let rows_q = exact_rows(ch);
            let points_q = exact_points(kv);
            let supports_q: Vec<BigRational> = rows_q
                .iter()
                .map(|(g, _)| {
                    points_q
                        .iter()
                        .map(|p| dot_q(g, p))
                        .max()
                        .expect("nonempty point list")
                })
                .collect();
            let (rho_q, center_q) = solve_support_dual_exact(&rows_q, &supports_q)?;
            let rows = gauge_rows(ch, false);
            let supports: Vec<f64> = supports_q.iter().map(|q| q.to_f64().unwrap()).collect();
            let rho = rho_q.to_f64().unwrap();
            let center: Vec<f64> = center_q.iter().map(|q| q.to_f64().unwrap()).collect();
            let mut out = finish_support(&rows, &supports, rho, center, None)?;
            out.rho_exact = Some(rho_q);
            Ok(out)
        }
    }
}

fn finish_support(
    rows: &GaugeRows,
    supports: &[f64],
    rho: f64,
    center: Vec<f64>,
    rho_exact: Option<BigRational>,
) -> Result<ContainmentResult, ContainError> {
    let scale = supports
        .iter()
        .fold(1.0f64, |acc, s| acc.max(s.abs()))
        .max(rho.abs());
    let mut witness = Vec::new();
    for (j, g) in rows.normals.iter().enumerate() {
        let lhs = supports[j];
        let rhs = rho * rows.offsets[j] + linalg::dot(g, &center);
        if lhs > rhs + tol::GEOM * scale {
            return Err(ContainError::Verification(format!(
                "row {j} violated by {}",
                lhs - rhs
            )));
        }
        if lhs >= rhs - tol::GEOM * scale {
            witness.push(j);
        }
    }
    if rho < -tol::GEOM {
        return Err(ContainError::Verification(format!("negative dilatation {rho}")));
    }
    Ok(ContainmentResult {
        rho: rho.max(0.0),
        center,
        tight_witness: Some(witness),
        rho_exact,
    })
}

/// Dual of the support LP: `min −s·y` subject to `Σ yⱼ gⱼ = 0`,
/// `Σ yⱼ hⱼ ≤ 1`, `y ≥ 0`. The optimal `(ρ, c)` of the primal are the
/// negated multipliers of these rows.
fn solve_support_dual_f64(
    rows: &GaugeRows,
    supports: &[f64],
) -> Result<(f64, Vec<f64>), ContainError> {
    let d = rows.normals.first().map(|g| g.len()).unwrap_or(0);
    let m = rows.normals.len();
    let mut lp = LpProblem::new(supports.iter().map(|s| -s).collect());
    for j in 0..m {
        lp.set_lower(j, 0.0);
    }
    for i in 0..d {
        let coeffs: Vec<f64> = rows.normals.iter().map(|g| g[i]).collect();
        lp.constrain(coeffs, Relation::Eq, 0.0);
    }
    lp.constrain(rows.offsets.clone(), Relation::Le, 1.0);
    let sol = lp::solve(&lp, Mode::Float)?;
    extract_support_optimum(&sol, d)
}

fn solve_support_dual_exact(
    rows_q: &[(Vec<BigRational>, BigRational)],
    supports: &[BigRational],
) -> Result<(BigRational, Vec<BigRational>), ContainError> {
    let d = rows_q.first().map(|(g, _)| g.len()).unwrap_or(0);
    let m = rows_q.len();
    let mut lp: LpProblem<BigRational> = LpProblem::new(supports.iter().map(|s| -s.clone()).collect());
    let zero = BigRational::from_float(0.0).unwrap();
    let one = BigRational::from_float(1.0).unwrap();
    for j in 0..m {
        lp.set_lower(j, zero.clone());
    }
    for i in 0..d {
        let coeffs: Vec<BigRational> = rows_q.iter().map(|(g, _)| g[i].clone()).collect();
        lp.constrain(coeffs, Relation::Eq, zero.clone());
    }
    lp.constrain(
        rows_q.iter().map(|(_, h)| h.clone()).collect(),
        Relation::Le,
        one,
    );
    let sol = lp::solve_exact(&lp)?;
    match sol.status {
        LpStatus::Optimal => {
            let duals = sol.duals.as_ref().expect("duals at optimum");
            let rho = -sol.objective.clone().unwrap();
            let center: Vec<BigRational> = duals[..d].iter().map(|l| -l.clone()).collect();
            Ok((rho, center))
        }
        LpStatus::Unbounded => Err(ContainError::DegenerateGauge),
        LpStatus::Infeasible => Err(ContainError::Verification(
            "support dual reported infeasible".into(),
        )),
    }
}

fn extract_support_optimum(
    sol: &LpSolution<f64>,
    d: usize,
) -> Result<(f64, Vec<f64>), ContainError> {
    match sol.status {
        LpStatus::Optimal => {
            let duals = sol
                .duals
                .as_ref()
                .ok_or_else(|| ContainError::Verification("missing duals".into()))?;
            let rho = -sol.objective.unwrap();
            let center: Vec<f64> = duals[..d].iter().map(|l| -l).collect();
            // The multiplier of the normalization row must agree with ρ.
            let rho_dual = -duals[d];
            if (rho - rho_dual).abs() > 1e-6 * (1.0 + rho.abs()) {
                return Err(ContainError::Verification(format!(
                    "dual multipliers inconsistent: {rho} vs {rho_dual}"
                )));
            }
            Ok((rho, center))
        }
        LpStatus::Unbounded => Err(ContainError::DegenerateGauge),
        LpStatus::Infeasible => Err(ContainError::Verification(
            "support dual reported infeasible".into(),
        )),
    }
}

/// Direct primal `min ρ s.t. ρhⱼ + gⱼ·c ≥ sⱼ, ρ ≥ 0`; one basis row per
/// gauge facet, used as a fallback and as a cross-check in tests.
fn solve_support_primal_f64(
    rows: &GaugeRows,
    supports: &[f64],
) -> Result<(f64, Vec<f64>), ContainError> {
    let d = rows.normals.first().map(|g| g.len()).unwrap_or(0);
    let mut obj = vec![0.0; d + 1];
    obj[0] = 1.0;
    let mut lp = LpProblem::new(obj);
    lp.set_lower(0, 0.0);
    for (j, g) in rows.normals.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(d + 1);
        coeffs.push(rows.offsets[j]);
        coeffs.extend_from_slice(g);
        lp.constrain(coeffs, Relation::Ge, supports[j]);
    }
    let sol = lp::solve(&lp, Mode::Float)?;
    match sol.status {
        LpStatus::Optimal => {
            let x = sol.point();
            Ok((x[0], x[1..=d].to_vec()))
        }
        LpStatus::Unbounded => Err(ContainError::DegenerateGauge),
        LpStatus::Infeasible => Err(ContainError::DegenerateGauge),
    }
}

fn exact_rows(h: &HPolytope) -> Vec<(Vec<BigRational>, BigRational)> {
    match &h.exact {
        Some(e) => e.clone(),
        None => h
            .rows
            .iter()
            .map(|r| {
                (
                    r.normal
                        .iter()
                        .map(|&x| BigRational::from_float(x).expect("finite normal"))
                        .collect(),
                    BigRational::from_float(r.offset).expect("finite offset"),
                )
            })
            .collect(),
    }
}

fn exact_points(v: &VPolytope) -> Vec<Vec<BigRational>> {
    match &v.exact {
        Some(e) => e.clone(),
        None => v
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&x| BigRational::from_float(x).expect("finite coordinate"))
                    .collect()
            })
            .collect(),
    }
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(BigRational::from_float(0.0).unwrap(), |acc, v| acc + v)
}

/// Solves in the requested mode, returning the rounded point plus the
/// exact objective when pivoting was exact.
fn solve_mode(
    lp: &LpProblem<f64>,
    mode: Mode,
) -> Result<(LpStatus, Option<Vec<f64>>, Option<BigRational>), LpError> {
    match mode {
        Mode::Float => {
            let sol = lp::solve(lp, Mode::Float)?;
            Ok((sol.status, sol.point, None))
        }
        Mode::Rational => {
            let sol = lp::solve_exact(&lp::lift(lp))?;
            let point = sol
                .point
                .as_ref()
                .map(|p| p.iter().map(|q| q.to_f64().unwrap()).collect());
            Ok((sol.status, point, sol.objective))
        }
    }
}

// ---------------------------------------------------------------------------
// Vertex-in-vertex formulation
// ---------------------------------------------------------------------------

/// Variables `c, ρ, μᵢⱼ ≥ 0` with `vᵢ − c = Σⱼ μᵢⱼ uⱼ` and `Σⱼ μᵢⱼ = ρ`
/// for every vertex `vᵢ` of `K` over the vertices `uⱼ` of `C`.
fn vertex_vertex_route(k: &Body, c: &Body, mode: Mode) -> Result<ContainmentResult, ContainError> {
    let kv = k.v()?.extreme();
    let cv = c.v()?.extreme();
    let d = kv.dim;
    let nk = kv.points.len();
    let nc = cv.points.len();

    // var layout: c (d, free) | ρ (1, ≥0) | μ row-major (nk·nc, ≥0)
    let nvars = d + 1 + nk * nc;
    let mut lp = LpProblem::new(vec![0.0; nvars]);
    lp.objective[d] = 1.0;
    lp.set_lower(d, 0.0);
    for v in 0..nk * nc {
        lp.set_lower(d + 1 + v, 0.0);
    }
    for (i, vi) in kv.points.iter().enumerate() {
        for r in 0..d {
            let mut coeffs = vec![0.0; nvars];
            coeffs[r] = 1.0;
            for (j, uj) in cv.points.iter().enumerate() {
                coeffs[d + 1 + i * nc + j] = uj[r];
            }
            lp.constrain(coeffs, Relation::Eq, vi[r]);
        }
        let mut coeffs = vec![0.0; nvars];
        coeffs[d] = -1.0;
        for j in 0..nc {
            coeffs[d + 1 + i * nc + j] = 1.0;
        }
        lp.constrain(coeffs, Relation::Eq, 0.0);
    }

    let (status, point, exact_obj) = solve_mode(&lp, mode)?;
    match status {
        LpStatus::Optimal => {
            let x = point.expect("point at optimum");
            Ok(ContainmentResult {
                rho: x[d],
                center: x[..d].to_vec(),
                tight_witness: None,
                rho_exact: exact_obj,
            })
        }
        _ => Err(ContainError::Verification(format!(
            "vertex-vertex LP status {status:?}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Row-in-row formulation
// ---------------------------------------------------------------------------

/// For each gauge row `(gⱼ, hⱼ)`: multipliers `yⱼ ≥ 0` over the rows
/// `A x ≤ b` of `K` with `Aᵀ yⱼ = gⱼ` and `b·yⱼ ≤ ρ hⱼ + gⱼ·c`.
fn row_row_route(k: &Body, c: &Body, mode: Mode) -> Result<ContainmentResult, ContainError> {
    let kh = k.h()?;
    let ch = c.h()?;
    let d = kh.dim;
    let krows = gauge_rows(kh, true);
    let crows = gauge_rows(ch, true);
    let nk = krows.normals.len();
    let nc = crows.normals.len();

    // var layout: c (d, free) | ρ (1, ≥0) | y per gauge row (nc·nk, ≥0)
    let nvars = d + 1 + nc * nk;
    let mut lp = LpProblem::new(vec![0.0; nvars]);
    lp.objective[d] = 1.0;
    lp.set_lower(d, 0.0);
    for v in 0..nc * nk {
        lp.set_lower(d + 1 + v, 0.0);
    }
    for j in 0..nc {
        let g = &crows.normals[j];
        for r in 0..d {
            let mut coeffs = vec![0.0; nvars];
            for i in 0..nk {
                coeffs[d + 1 + j * nk + i] = krows.normals[i][r];
            }
            lp.constrain(coeffs, Relation::Eq, g[r]);
        }
        let mut coeffs = vec![0.0; nvars];
        for i in 0..nk {
            coeffs[d + 1 + j * nk + i] = krows.offsets[i];
        }
        coeffs[d] = -crows.offsets[j];
        for r in 0..d {
            coeffs[r] = -g[r];
        }
        lp.constrain(coeffs, Relation::Le, 0.0);
    }

    let (status, point, exact_obj) = solve_mode(&lp, mode)?;
    match status {
        LpStatus::Optimal => {
            let x = point.expect("point at optimum");
            Ok(ContainmentResult {
                rho: x[d],
                center: x[..d].to_vec(),
                tight_witness: None,
                rho_exact: exact_obj,
            })
        }
        _ => Err(ContainError::Verification(format!(
            "row-row LP status {status:?}"
        ))),
    }
}
