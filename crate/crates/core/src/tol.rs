//! Central numeric tolerances.
//!
//! Three layers, one order of magnitude apart, so that noise from a lower
//! layer never flips a predicate in the layer above it:
//!
//! | layer      | constant                  | value  |
//! |------------|---------------------------|--------|
//! | LP solver  | [`LP_FEAS`], [`LP_OPT`]   | 1e-9   |
//! | geometry   | [`GEOM`]                  | 1e-8   |
//! | audits     | [`AUDIT`]                 | 1e-6   |

/// Primal feasibility tolerance of the floating-point simplex.
pub const LP_FEAS: f64 = 1e-9;

/// Optimality (reduced cost / duality gap) tolerance of the floating-point simplex.
pub const LP_OPT: f64 = 1e-9;

/// Geometric tolerance: vertex/facet deduplication, membership and
/// set-equality checks on polytopes.
pub const GEOM: f64 = 1e-8;

/// An inequality audit counts as satisfied when its normalized slack is
/// at least `-AUDIT`.
pub const AUDIT: f64 = 1e-6;

/// Tightness threshold for audits whose inputs are LP-exact polytopes.
pub const TIGHT_LP: f64 = 1e-4;

/// Tightness threshold for audits on fixtures that approximate the Euclidean
/// ball by a fine polygon (the approximation error gets amplified by the
/// fixture constructions).
pub const TIGHT_POLYGON: f64 = 1e-2;

/// Default accuracy for the iterative ellipsoid solvers.
pub const ELLIPSOID_EPS: f64 = 1e-6;
