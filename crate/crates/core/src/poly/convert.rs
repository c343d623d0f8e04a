//! Presentation conversions: extreme points, facet enumeration (V→H) and
//! vertex enumeration (H→V).
//!
//! Dimension 2 gets fast paths (monotone-chain hull, polar-dual vertex
//! enumeration) because the ball-approximation fixtures work with polygons
//! of several hundred edges. Higher dimensions use the brute-force d-subset
//! enumeration, which is fine at desk scale but has binomial cost; a hard
//! cap turns absurd inputs into [`PolyError::ConversionTooLarge`].

use super::{HPolytope, Halfspace, PolyError, VPolytope};
use crate::linalg;
use crate::lp::{LpProblem, LpStatus, Mode, Relation};
use crate::tol;

const SUBSET_CAP: u128 = 2_000_000;

fn coord_scale(points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0)
}

// ---------------------------------------------------------------------------
// Extreme points
// ---------------------------------------------------------------------------

/// Indices of the extreme points of `conv(points)`, duplicates removed.
/// In 2-D the indices come back in counterclockwise hull order.
pub(crate) fn extreme_point_indices(points: &[Vec<f64>], dim: usize) -> Vec<usize> {
    let distinct = dedup_indices(points);
    if distinct.len() <= 1 {
        return distinct;
    }
    match dim {
        1 => {
            let lo = *distinct
                .iter()
                .min_by(|&&i, &&j| points[i][0].partial_cmp(&points[j][0]).unwrap())
                .unwrap();
            let hi = *distinct
                .iter()
                .max_by(|&&i, &&j| points[i][0].partial_cmp(&points[j][0]).unwrap())
                .unwrap();
            if lo == hi {
                vec![lo]
            } else {
                vec![lo, hi]
            }
        }
        2 => hull2d_indices(points, &distinct),
        _ => lp_extreme_filter(points, &distinct),
    }
}

fn dedup_indices(points: &[Vec<f64>]) -> Vec<usize> {
    let scale = coord_scale(points);
    let tol = tol::GEOM * scale;
    let mut kept: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !kept.iter().any(|&k| linalg::dist(&points[k], p) <= tol) {
            kept.push(i);
        }
    }
    kept
}

/// Monotone chain over the subset `idx`; returns original indices in
/// counterclockwise order starting from the lexicographic minimum.
fn hull2d_indices(points: &[Vec<f64>], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by(|&a, &b| {
        points[a][0]
            .partial_cmp(&points[b][0])
            .unwrap()
            .then(points[a][1].partial_cmp(&points[b][1]).unwrap())
    });
    if order.len() <= 2 {
        return order;
    }
    let scale = coord_scale(points);
    let eps = 1e-12 * scale * scale;
    let cross = |o: usize, a: usize, b: usize| -> f64 {
        let (ox, oy) = (points[o][0], points[o][1]);
        (points[a][0] - ox) * (points[b][1] - oy) - (points[a][1] - oy) * (points[b][0] - ox)
    };

    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= eps {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= eps {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A point is extreme iff it is not a convex combination of the others;
/// one small feasibility LP per candidate.
fn lp_extreme_filter(points: &[Vec<f64>], idx: &[usize]) -> Vec<usize> {
    let dim = points[idx[0]].len();
    let mut extreme = Vec::new();
    for (pos, &i) in idx.iter().enumerate() {
        let others: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &j)| j)
            .collect();
        if others.is_empty() {
            extreme.push(i);
            continue;
        }
        let n = others.len();
        let mut lp = LpProblem::new(vec![0.0; n]);
        for j in 0..n {
            lp.set_lower(j, 0.0);
        }
        for r in 0..dim {
            let coeffs: Vec<f64> = others.iter().map(|&j| points[j][r]).collect();
            lp.constrain(coeffs, Relation::Eq, points[i][r]);
        }
        lp.constrain(vec![1.0; n], Relation::Eq, 1.0);
        match crate::lp::solve(&lp, Mode::Float) {
            Ok(sol) if sol.status == LpStatus::Optimal => {}
            _ => extreme.push(i),
        }
    }
    extreme
}

// ---------------------------------------------------------------------------
// V → H: facet enumeration
// ---------------------------------------------------------------------------

/// Facet description of `conv(points)` for a full-dimensional point set.
pub fn facets_of(v: &VPolytope) -> Result<HPolytope, PolyError> {
    if v.points.is_empty() {
        return Err(PolyError::Empty);
    }
    if !v.is_full_dimensional() {
        return Err(PolyError::NotFullDimensional);
    }
    let d = v.dim;
    let idx = extreme_point_indices(&v.points, d);
    let hull: Vec<&Vec<f64>> = idx.iter().map(|&i| &v.points[i]).collect();
    let scale = coord_scale(&v.points);
    let side_tol = tol::GEOM * scale;

    if d == 1 {
        let lo = hull.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        let hi = hull.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
        return Ok(HPolytope::from_rows(1, vec![(vec![1.0], hi), (vec![-1.0], -lo)]));
    }

    if d == 2 {
        // `idx` is already in ccw order; outward normal of edge p→q is
        // (qy−py, −(qx−px)) rotated to point away from the interior.
        let n = hull.len();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let p = hull[i];
            let q = hull[(i + 1) % n];
            let e = linalg::sub(q, p);
            let mut normal = vec![e[1], -e[0]];
            let len = linalg::norm(&normal);
            if len <= tol::GEOM * scale {
                continue;
            }
            normal = linalg::scale(&normal, 1.0 / len);
            let offset = linalg::dot(&normal, p);
            rows.push(Halfspace { normal, offset });
        }
        let h = HPolytope { dim: 2, rows, exact: None };
        return Ok(h);
    }

    let n = hull.len();
    check_subset_budget(n, d)?;

    let mut rows: Vec<Halfspace> = Vec::new();
    let add_facet = |normal: Vec<f64>, offset: f64, rows: &mut Vec<Halfspace>| {
        let dup = rows.iter().any(|r| {
            linalg::dist(&r.normal, &normal) <= 1e-7 && (r.offset - offset).abs() <= 1e-7 * scale
        });
        if !dup {
            rows.push(Halfspace { normal, offset });
        }
    };

    for_each_combination(n, d, &mut |subset| {
        let base = hull[subset[0]];
        let diffs: Vec<Vec<f64>> = subset[1..]
            .iter()
            .map(|&i| linalg::sub(hull[i], base))
            .collect();
        let Some(mut normal) = hyperplane_normal(&diffs, d, scale) else {
            return;
        };
        let len = linalg::norm(&normal);
        if len < 1e-12 {
            return;
        }
        normal = linalg::scale(&normal, 1.0 / len);
        let offset = linalg::dot(&normal, base);

        let mut mx = f64::NEG_INFINITY;
        let mut mn = f64::INFINITY;
        for p in &hull {
            let t = linalg::dot(&normal, p);
            mx = mx.max(t);
            mn = mn.min(t);
        }
        if mx <= offset + side_tol {
            add_facet(normal, mx, &mut rows);
        } else if mn >= offset - side_tol {
            add_facet(linalg::scale(&normal, -1.0), -mn, &mut rows);
        }
    });

    if rows.is_empty() {
        return Err(PolyError::NotFullDimensional);
    }
    Ok(HPolytope { dim: d, rows, exact: None })
}

/// Null vector of the `(d−1)×d` difference matrix, or `None` when the
/// subset is affinely degenerate.
fn hyperplane_normal(diffs: &[Vec<f64>], d: usize, scale: f64) -> Option<Vec<f64>> {
    let r = diffs.len();
    debug_assert_eq!(r, d - 1);
    let mut m: Vec<Vec<f64>> = diffs.to_vec();
    let tol = 1e-10 * scale;
    let mut pivot_col_of_row: Vec<usize> = Vec::with_capacity(r);
    let mut is_pivot_col = vec![false; d];
    let mut row = 0usize;
    for col in 0..d {
        if row == r {
            break;
        }
        let piv = (row..r).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[piv][col].abs() <= tol {
            continue;
        }
        m.swap(row, piv);
        for i in row + 1..r {
            let f = m[i][col] / m[row][col];
            for j in col..d {
                m[i][j] -= f * m[row][j];
            }
        }
        pivot_col_of_row.push(col);
        is_pivot_col[col] = true;
        row += 1;
    }
    if row < r {
        return None; // rank-deficient subset
    }
    let free = (0..d).find(|&c| !is_pivot_col[c])?;
    let mut x = vec![0.0; d];
    x[free] = 1.0;
    for i in (0..r).rev() {
        let pc = pivot_col_of_row[i];
        let mut acc = 0.0;
        for j in pc + 1..d {
            acc += m[i][j] * x[j];
        }
        x[pc] = -acc / m[i][pc];
    }
    Some(x)
}

fn check_subset_budget(n: usize, k: usize) -> Result<(), PolyError> {
    let mut total: u128 = 1;
    for i in 0..k {
        total = total.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if total > SUBSET_CAP {
            return Err(PolyError::ConversionTooLarge(format!(
                "C({n},{k}) subsets exceed the enumeration budget"
            )));
        }
    }
    Ok(())
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// H → V: vertex enumeration
// ---------------------------------------------------------------------------

/// Vertices of a bounded, full-dimensional halfspace intersection.
pub fn vertices_of(h: &HPolytope) -> Result<VPolytope, PolyError> {
    h.validate()?;
    let d = h.dim;
    // Normalize rows to unit normals so tolerances are scale-free.
    let rows: Vec<Halfspace> = h
        .rows
        .iter()
        .map(|r| {
            let len = linalg::norm(&r.normal);
            Halfspace { normal: linalg::scale(&r.normal, 1.0 / len), offset: r.offset / len }
        })
        .collect();

    if d == 1 {
        let mut hi = f64::INFINITY;
        let mut lo = f64::NEG_INFINITY;
        for r in &rows {
            if r.normal[0] > 0.0 {
                hi = hi.min(r.offset / r.normal[0]);
            } else {
                lo = lo.max(r.offset / r.normal[0]);
            }
        }
        if !hi.is_finite() || !lo.is_finite() {
            return Err(PolyError::Unbounded);
        }
        if lo > hi + tol::GEOM {
            return Err(PolyError::Empty);
        }
        return Ok(VPolytope::new(1, vec![vec![lo], vec![hi]]));
    }

    if d == 2 {
        return vertices_2d(&rows);
    }

    // Boundedness probe along the coordinate axes.
    for axis in 0..d {
        for sign in [1.0, -1.0] {
            let mut dir = vec![0.0; d];
            dir[axis] = sign;
            let probe = HPolytope { dim: d, rows: rows.clone(), exact: None };
            match probe.support(&dir) {
                Ok(_) => {}
                Err(PolyError::Unbounded) => return Err(PolyError::Unbounded),
                Err(e) => return Err(e),
            }
        }
    }

    let m = rows.len();
    check_subset_budget(m, d)?;
    let offset_scale = rows.iter().fold(1.0f64, |acc, r| acc.max(r.offset.abs()));
    let feas_tol = tol::GEOM * offset_scale;

    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for_each_combination(m, d, &mut |subset| {
        let a: Vec<Vec<f64>> = subset.iter().map(|&i| rows[i].normal.clone()).collect();
        let b: Vec<f64> = subset.iter().map(|&i| rows[i].offset).collect();
        let Some(x) = linalg::solve_linear(&a, &b) else {
            return;
        };
        let feasible = rows
            .iter()
            .all(|r| linalg::dot(&r.normal, &x) <= r.offset + feas_tol);
        if !feasible {
            return;
        }
        let dup = vertices
            .iter()
            .any(|v| linalg::dist(v, &x) <= tol::GEOM * offset_scale.max(1.0));
        if !dup {
            vertices.push(x);
        }
    });

    if vertices.is_empty() {
        return Err(PolyError::Empty);
    }
    let v = VPolytope::new(d, vertices);
    if !v.is_full_dimensional() {
        return Err(PolyError::NotFullDimensional);
    }
    Ok(v)
}

/// Polar-dual vertex enumeration for polygons: shift an interior point to
/// the origin, take the dual points `gᵢ/bᵢ`, hull them, and intersect
/// adjacent halfspace pairs. Runs in `O(m log m)`, which matters for the
/// 720-gon fixtures.
fn vertices_2d(rows: &[Halfspace]) -> Result<VPolytope, PolyError> {
    let probe = HPolytope { dim: 2, rows: rows.to_vec(), exact: None };
    let x0 = interior_point(&probe)?;
    let shifted: Vec<f64> = rows
        .iter()
        .map(|r| r.offset - linalg::dot(&r.normal, &x0))
        .collect();
    if shifted.iter().any(|&b| b <= 0.0) {
        return Err(PolyError::Empty);
    }
    let dual: Vec<Vec<f64>> = rows
        .iter()
        .zip(&shifted)
        .map(|(r, &b)| linalg::scale(&r.normal, 1.0 / b))
        .collect();
    let all: Vec<usize> = (0..dual.len()).collect();
    let hull = hull2d_indices(&dual, &all);
    if hull.len() < 3 {
        return Err(PolyError::Unbounded);
    }
    // The primal is bounded iff the origin is strictly inside the dual hull.
    let scale = coord_scale(&dual);
    for i in 0..hull.len() {
        let a = &dual[hull[i]];
        let b = &dual[hull[(i + 1) % hull.len()]];
        let cross = (b[0] - a[0]) * (-a[1]) - (b[1] - a[1]) * (-a[0]);
        if cross <= 1e-10 * scale * scale {
            return Err(PolyError::Unbounded);
        }
    }

    let mut vertices = Vec::with_capacity(hull.len());
    for i in 0..hull.len() {
        let ri = &rows[hull[i]];
        let rj = &rows[hull[(i + 1) % hull.len()]];
        let a = vec![ri.normal.clone(), rj.normal.clone()];
        let b = vec![
            shifted[hull[i]] + linalg::dot(&ri.normal, &x0),
            shifted[hull[(i + 1) % hull.len()]] + linalg::dot(&rj.normal, &x0),
        ];
        if let Some(v) = linalg::solve_linear(&a, &b) {
            vertices.push(v);
        }
    }
    if vertices.len() < 3 {
        return Err(PolyError::NotFullDimensional);
    }
    Ok(VPolytope::new(2, vertices))
}

/// Strictly interior point of a halfspace system via the inscribed-ball LP
/// `max t s.t. gⱼ·x + t ≤ bⱼ` on unit normals (capped so that unbounded
/// systems still yield a point).
pub(crate) fn interior_point(h: &HPolytope) -> Result<Vec<f64>, PolyError> {
    let d = h.dim;
    // vars: x (free, d), t (free, capped)
    let mut obj = vec![0.0; d + 1];
    obj[d] = -1.0;
    let mut lp = LpProblem::new(obj);
    for r in &h.rows {
        let len = linalg::norm(&r.normal);
        let mut coeffs = linalg::scale(&r.normal, 1.0 / len);
        coeffs.push(1.0);
        lp.constrain(coeffs, Relation::Le, r.offset / len);
    }
    let mut cap = vec![0.0; d + 1];
    cap[d] = 1.0;
    lp.constrain(cap, Relation::Le, 1e6);

    let sol = crate::lp::solve(&lp, Mode::Float)?;
    match sol.status {
        LpStatus::Infeasible => Err(PolyError::Empty),
        LpStatus::Unbounded => Err(PolyError::Unbounded),
        LpStatus::Optimal => {
            let x = sol.point();
            let t = x[d];
            let offset_scale = h.rows.iter().fold(1.0f64, |acc, r| acc.max(r.offset.abs()));
            if t <= 1e-10 * offset_scale {
                return Err(PolyError::NotFullDimensional);
            }
            Ok(x[..d].to_vec())
        }
    }
}
