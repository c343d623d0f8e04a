//! Polytope representations and the Minkowski/affine operations on them.
//!
//! A polytope enters the toolkit either as a vertex list ([`VPolytope`]) or
//! as a bounded halfspace intersection ([`HPolytope`]). [`Body`] bundles the
//! two and lazily computes whichever presentation an algorithm needs,
//! caching it for reuse; bodies are immutable apart from that cache.
//!
//! Point lists may contain redundant (non-extreme) points; operations that
//! care reduce them via [`VPolytope::extreme`]. All geometric predicates use
//! the [`crate::tol::GEOM`] tolerance. Coordinates parsed from exact `"p/q"`
//! input keep a rational mirror alongside the `f64` geometry so that the
//! exact LP mode can consume them losslessly; operations that cannot
//! preserve the mirror cheaply simply drop it.

mod convert;
pub mod format;

use crate::linalg;
use crate::lp::LpError;
use crate::tol;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use once_cell::sync::OnceCell;
use thiserror::Error;

pub use convert::{facets_of, vertices_of};

/// Exact rational coordinates mirroring the `f64` geometry.
pub type ExactPoint = Vec<BigRational>;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("negative scale factor {0}")]
    NegativeScale(f64),
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("halfspace with zero normal")]
    ZeroNormal,
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is empty")]
    Empty,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("conversion too large: {0}")]
    ConversionTooLarge(String),
    #[error(transparent)]
    Lp(#[from] LpError),
}

// ---------------------------------------------------------------------------
// V-presentation
// ---------------------------------------------------------------------------

/// Convex hull of a finite point list (redundant points allowed).
#[derive(Clone, Debug)]
pub struct VPolytope {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    /// Rational mirror of `points`, kept only while cheap to maintain.
    pub exact: Option<Vec<ExactPoint>>,
}

impl VPolytope {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Self {
        debug_assert!(points.iter().all(|p| p.len() == dim));
        VPolytope { dim, points, exact: None }
    }

    pub fn with_exact(dim: usize, exact: Vec<ExactPoint>) -> Self {
        let points = exact
            .iter()
            .map(|p| p.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect())
            .collect();
        VPolytope { dim, points, exact: Some(exact) }
    }

    pub fn negate(&self) -> Self {
        VPolytope {
            dim: self.dim,
            points: self.points.iter().map(|p| linalg::scale(p, -1.0)).collect(),
            exact: self
                .exact
                .as_ref()
                .map(|e| e.iter().map(|p| p.iter().map(|q| -q.clone()).collect()).collect()),
        }
    }

    /// `c + ρ·K`; the scale must be nonnegative.
    pub fn dilate_translate(&self, rho: f64, c: &[f64]) -> Result<Self, PolyError> {
        if rho < 0.0 {
            return Err(PolyError::NegativeScale(rho));
        }
        if c.len() != self.dim {
            return Err(PolyError::DimensionMismatch(self.dim, c.len()));
        }
        let points = self
            .points
            .iter()
            .map(|p| linalg::axpy(c, rho, p))
            .collect();
        let exact = self.exact.as_ref().map(|e| {
            let rho_q = BigRational::from_float(rho).expect("finite scale");
            let c_q: Vec<BigRational> = c
                .iter()
                .map(|x| BigRational::from_float(*x).expect("finite center"))
                .collect();
            e.iter()
                .map(|p| {
                    p.iter()
                        .zip(&c_q)
                        .map(|(x, t)| t + &rho_q * x)
                        .collect()
                })
                .collect()
        });
        Ok(VPolytope { dim: self.dim, points, exact })
    }

    /// `max_{x ∈ K} a·x`
    pub fn support(&self, a: &[f64]) -> Result<f64, PolyError> {
        if linalg::norm(a) <= tol::GEOM {
            return Err(PolyError::ZeroDirection);
        }
        self.points
            .iter()
            .map(|p| linalg::dot(a, p))
            .max_by(|x, y| x.partial_cmp(y).unwrap())
            .ok_or(PolyError::Empty)
    }

    /// Copy reduced to its extreme points (in 2-D: in hull order).
    pub fn extreme(&self) -> Self {
        let idx = convert::extreme_point_indices(&self.points, self.dim);
        VPolytope {
            dim: self.dim,
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            exact: self
                .exact
                .as_ref()
                .map(|e| idx.iter().map(|&i| e[i].clone()).collect()),
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        if self.points.is_empty() {
            return false;
        }
        let p0 = &self.points[0];
        let rows: Vec<Vec<f64>> = self.points[1..]
            .iter()
            .map(|p| linalg::sub(p, p0))
            .collect();
        linalg::rank(&rows, tol::GEOM) == self.dim
    }

    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for p in &self.points {
            for (ci, pi) in c.iter_mut().zip(p) {
                *ci += pi;
            }
        }
        let n = self.points.len().max(1) as f64;
        c.iter().map(|x| x / n).collect()
    }

    /// All points pairwise within `tol` of some point of `other` and vice
    /// versa would be too strict for redundant lists; instead this checks
    /// mutual hull membership through the other's facet description.
    pub fn same_set_as(&self, other: &VPolytope) -> bool {
        let fa = facets_of(self);
        let fb = facets_of(other);
        match (fa, fb) {
            (Ok(fa), Ok(fb)) => {
                self.points.iter().all(|p| fb.contains(p, tol::GEOM))
                    && other.points.iter().all(|p| fa.contains(p, tol::GEOM))
            }
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// H-presentation
// ---------------------------------------------------------------------------

/// One halfspace `normal · x ≤ offset`.
#[derive(Clone, Debug)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// Bounded intersection of halfspaces.
#[derive(Clone, Debug)]
pub struct HPolytope {
    pub dim: usize,
    pub rows: Vec<Halfspace>,
    /// Rational mirror of `rows` as `(normal, offset)` pairs.
    pub exact: Option<Vec<(ExactPoint, BigRational)>>,
}

impl HPolytope {
    pub fn new(dim: usize, rows: Vec<Halfspace>) -> Self {
        debug_assert!(rows.iter().all(|r| r.normal.len() == dim));
        HPolytope { dim, rows, exact: None }
    }

    pub fn from_rows(dim: usize, rows: Vec<(Vec<f64>, f64)>) -> Self {
        HPolytope::new(
            dim,
            rows.into_iter()
                .map(|(normal, offset)| Halfspace { normal, offset })
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<(), PolyError> {
        for r in &self.rows {
            if linalg::norm(&r.normal) <= tol::GEOM {
                return Err(PolyError::ZeroNormal);
            }
        }
        Ok(())
    }

    pub fn negate(&self) -> Self {
        HPolytope {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| Halfspace { normal: linalg::scale(&r.normal, -1.0), offset: r.offset })
                .collect(),
            exact: self.exact.as_ref().map(|e| {
                e.iter()
                    .map(|(n, b)| (n.iter().map(|q| -q.clone()).collect(), b.clone()))
                    .collect()
            }),
        }
    }

    /// `c + ρ·K`: offsets become `ρ·b_i + normal·c`.
    pub fn dilate_translate(&self, rho: f64, c: &[f64]) -> Result<Self, PolyError> {
        if rho < 0.0 {
            return Err(PolyError::NegativeScale(rho));
        }
        if c.len() != self.dim {
            return Err(PolyError::DimensionMismatch(self.dim, c.len()));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| Halfspace {
                normal: r.normal.clone(),
                offset: rho * r.offset + linalg::dot(&r.normal, c),
            })
            .collect();
        let exact = self.exact.as_ref().map(|e| {
            let rho_q = BigRational::from_float(rho).expect("finite scale");
            let c_q: Vec<BigRational> = c
                .iter()
                .map(|x| BigRational::from_float(*x).expect("finite center"))
                .collect();
            e.iter()
                .map(|(n, b)| {
                    let shift = n
                        .iter()
                        .zip(&c_q)
                        .map(|(ni, ci)| ni * ci)
                        .fold(BigRational::from_float(0.0).unwrap(), |acc, v| acc + v);
                    (n.clone(), &rho_q * b + shift)
                })
                .collect()
        });
        Ok(HPolytope { dim: self.dim, rows, exact })
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.rows.iter().all(|r| {
            let scale = linalg::norm(&r.normal).max(1.0);
            linalg::dot(&r.normal, x) <= r.offset + tol * scale
        })
    }

    /// Support value by LP over the halfspace system.
    pub fn support(&self, a: &[f64]) -> Result<f64, PolyError> {
        if linalg::norm(a) <= tol::GEOM {
            return Err(PolyError::ZeroDirection);
        }
        use crate::lp::{LpProblem, LpStatus, Mode, Relation};
        let mut lp = LpProblem::new(linalg::scale(a, -1.0));
        for r in &self.rows {
            lp.constrain(r.normal.clone(), Relation::Le, r.offset);
        }
        let sol = crate::lp::solve(&lp, Mode::Float)?;
        match sol.status {
            LpStatus::Optimal => Ok(-sol.objective.unwrap()),
            LpStatus::Unbounded => Err(PolyError::Unbounded),
            LpStatus::Infeasible => Err(PolyError::Empty),
        }
    }

    /// Strictly interior point (Chebyshev center), or an error describing
    /// why none exists.
    pub fn interior_point(&self) -> Result<Vec<f64>, PolyError> {
        convert::interior_point(self)
    }
}

// ---------------------------------------------------------------------------
// Body: both presentations with lazy conversion
// ---------------------------------------------------------------------------

/// A convex body carrying one or both polytope presentations.
///
/// The missing presentation is computed on first use and cached; the
/// computation is deterministic, so racing first accesses is harmless.
#[derive(Clone, Debug)]
pub struct Body {
    dim: usize,
    v: OnceCell<VPolytope>,
    h: OnceCell<HPolytope>,
}

impl Body {
    pub fn from_v(p: VPolytope) -> Self {
        let dim = p.dim;
        let v = OnceCell::new();
        v.set(p).ok();
        Body { dim, v, h: OnceCell::new() }
    }

    pub fn from_h(p: HPolytope) -> Self {
        let dim = p.dim;
        let h = OnceCell::new();
        h.set(p).ok();
        Body { dim, v: OnceCell::new(), h }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertex presentation, converting (and caching) if necessary.
    pub fn v(&self) -> Result<&VPolytope, PolyError> {
        self.v.get_or_try_init(|| {
            let h = self.h.get().ok_or(PolyError::Empty)?;
            vertices_of(h)
        })
    }

    /// Halfspace presentation, converting (and caching) if necessary.
    pub fn h(&self) -> Result<&HPolytope, PolyError> {
        self.h.get_or_try_init(|| {
            let v = self.v.get().ok_or(PolyError::Empty)?;
            facets_of(v)
        })
    }

    pub fn try_v(&self) -> Option<&VPolytope> {
        self.v.get()
    }

    pub fn try_h(&self) -> Option<&HPolytope> {
        self.h.get()
    }

    /// Support function `h(K, a)`, using whichever presentation is cheaper.
    pub fn support(&self, a: &[f64]) -> Result<f64, PolyError> {
        if let Some(v) = self.try_v() {
            v.support(a)
        } else {
            self.h.get().expect("body has a presentation").support(a)
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if let Some(h) = self.try_h() {
            return h.contains(x, tol);
        }
        match self.h() {
            Ok(h) => h.contains(x, tol),
            Err(_) => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Minkowski / affine operations on bodies
// ---------------------------------------------------------------------------

/// `−K`, preserving every presentation the body already carries.
pub fn negate(k: &Body) -> Body {
    let out = Body {
        dim: k.dim,
        v: OnceCell::new(),
        h: OnceCell::new(),
    };
    if let Some(v) = k.try_v() {
        out.v.set(v.negate()).ok();
    }
    if let Some(h) = k.try_h() {
        out.h.set(h.negate()).ok();
    }
    out
}

/// `c + ρK` for `ρ ≥ 0`.
pub fn dilate_translate(k: &Body, rho: f64, c: &[f64]) -> Result<Body, PolyError> {
    let out = Body {
        dim: k.dim,
        v: OnceCell::new(),
        h: OnceCell::new(),
    };
    if let Some(v) = k.try_v() {
        out.v.set(v.dilate_translate(rho, c)?).ok();
    }
    if let Some(h) = k.try_h() {
        out.h.set(h.dilate_translate(rho, c)?).ok();
    }
    if out.v.get().is_none() && out.h.get().is_none() {
        return Err(PolyError::Empty);
    }
    Ok(out)
}

/// Minkowski sum `{k + c : k ∈ K, c ∈ C}` as a (redundant) point list.
pub fn minkowski_sum(k: &VPolytope, c: &VPolytope) -> Result<VPolytope, PolyError> {
    if k.dim != c.dim {
        return Err(PolyError::DimensionMismatch(k.dim, c.dim));
    }
    let mut points = Vec::with_capacity(k.points.len() * c.points.len());
    for p in &k.points {
        for q in &c.points {
            points.push(linalg::add(p, q));
        }
    }
    let exact = match (&k.exact, &c.exact) {
        (Some(ek), Some(ec)) => {
            let mut out = Vec::with_capacity(ek.len() * ec.len());
            for p in ek {
                for q in ec {
                    out.push(p.iter().zip(q).map(|(a, b)| a + b).collect());
                }
            }
            Some(out)
        }
        _ => None,
    };
    Ok(VPolytope { dim: k.dim, points, exact })
}

/// Difference body `K − K`, reduced to its extreme points. Always
/// 0-symmetric.
pub fn difference_body(k: &Body) -> Result<VPolytope, PolyError> {
    let v = k.v()?.extreme();
    let sum = minkowski_sum(&v, &v.negate())?;
    Ok(sum.extreme())
}

/// Support function of a body (alias of [`Body::support`]).
pub fn support(k: &Body, a: &[f64]) -> Result<f64, PolyError> {
    k.support(a)
}

#[cfg(test)]
mod tests;
