//! Generalized radii and symmetry measures of convex polytopes.
//!
//! Given a convex body `K` and a *gauge body* `C` (any full-dimensional convex
//! body, not necessarily symmetric), this crate computes the four classical
//! containment radii by linear programming:
//!
//! * `R(K,C)` — the smallest `ρ` with `K ⊆ c + ρC` for some translation `c`,
//! * `r(K,C)` — the largest `ρ` with `c + ρC ⊆ K`, equal to `1/R(C,K)`,
//! * `R₁(K,C)` — the largest `C`-radius of a segment in `K` (half the
//!   `C`-diameter),
//! * `r₁(K,C)` — the smallest support ratio of the difference bodies (half the
//!   `C`-width),
//!
//! together with the computable asymmetry coefficients built on them: the
//! Minkowski asymmetry `s(K) = R(-K,K)` with a certifying center, and the
//! centered asymmetries around the John (maximum-volume inscribed) and Loewner
//! (minimum-volume enclosing) ellipsoid centers.
//!
//! On top of these quantities the [`audit`] module evaluates a family of
//! asymmetry-sharpened geometric inequalities (Bohnenblust, Leichtweiß, Jung,
//! Steinhagen, the in-/circumradius ratio, a chain of width/diameter bounds,
//! Alexander-type analogues, and a sharpened John containment) and reports
//! left side, right side, slack, and tightness for each.
//!
//! The crate is primarily a library; see the `examples/` directory for one
//! runnable program per capability and the thin `polygauge` binary for file
//! driven use.
//!
//! Everything is aimed at desk scale: dimensions up to about 6 and polytopes
//! with up to a few hundred (2-D: a few thousand) vertices or facets.

pub mod audit;
pub mod cli;
pub mod containment;
pub mod euclid;
pub mod fixtures;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod symmetry;
pub mod tol;

// pub use containment::{circumradius, core_radius_1, inradius, width_radius_1, ContainmentResult};
// pub use euclid::{BallResult, Ellipsoid};
// pub use poly::{Body, HPolytope, VPolytope};
// pub use symmetry::{minkowski_asymmetry, AsymmetryResult};
