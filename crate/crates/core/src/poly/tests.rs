use super::*;
use crate::tol;

fn v2(points: &[(f64, f64)]) -> VPolytope {
    VPolytope::new(2, points.iter().map(|&(x, y)| vec![x, y]).collect())
}

fn sorted(points: &[Vec<f64>]) -> Vec<Vec<i64>> {
    let mut rounded: Vec<Vec<i64>> = points
        .iter()
        .map(|p| p.iter().map(|x| (x * 1e6).round() as i64).collect())
        .collect();
    rounded.sort();
    rounded
}

fn unit_square_01() -> VPolytope {
    v2(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

fn square_sym() -> VPolytope {
    v2(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
}

#[test]
fn negate_flips_the_unit_square() {
    let n = unit_square_01().negate();
    assert_eq!(
        sorted(&n.points),
        sorted(&[vec![0.0, 0.0], vec![-1.0, 0.0], vec![-1.0, -1.0], vec![0.0, -1.0]])
    );
}

#[test]
fn negate_fixes_the_cross_polytope() {
    let cross = v2(&[(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]);
    let n = cross.negate();
    assert_eq!(sorted(&n.points), sorted(&cross.points));
}

#[test]
fn negate_simplex() {
    let s = v2(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
    let n = s.negate();
    assert_eq!(
        sorted(&n.points),
        sorted(&[vec![0.0, 0.0], vec![-1.0, 0.0], vec![0.0, -1.0]])
    );
}

#[test]
fn dilate_translate_examples() {
    let sq = unit_square_01();
    let doubled = sq.dilate_translate(2.0, &[0.0, 0.0]).unwrap();
    assert_eq!(
        sorted(&doubled.points),
        sorted(&[vec![0.0, 0.0], vec![2.0, 0.0], vec![2.0, 2.0], vec![0.0, 2.0]])
    );

    let same = sq.dilate_translate(1.0, &[0.0, 0.0]).unwrap();
    assert_eq!(sorted(&same.points), sorted(&sq.points));

    let shifted = square_sym().dilate_translate(0.5, &[1.0, 0.0]).unwrap();
    assert_eq!(
        sorted(&shifted.points),
        sorted(&[vec![0.5, -0.5], vec![1.5, -0.5], vec![1.5, 0.5], vec![0.5, 0.5]])
    );

    assert!(matches!(
        sq.dilate_translate(-1.0, &[0.0, 0.0]),
        Err(PolyError::NegativeScale(_))
    ));
}

#[test]
fn minkowski_sum_of_segments() {
    let seg = VPolytope::new(1, vec![vec![0.0], vec![1.0]]);
    let sum = minkowski_sum(&seg, &seg).unwrap();
    let e = sum.extreme();
    assert_eq!(sorted(&e.points), sorted(&[vec![0.0], vec![2.0]]));
}

#[test]
fn minkowski_sum_with_singleton_translates() {
    let sq = unit_square_01();
    let p = v2(&[(2.0, 3.0)]);
    let sum = minkowski_sum(&sq, &p).unwrap();
    let expected = sq.dilate_translate(1.0, &[2.0, 3.0]).unwrap();
    assert_eq!(sorted(&sum.points), sorted(&expected.points));
}

#[test]
fn minkowski_sum_dimension_mismatch() {
    let seg = VPolytope::new(1, vec![vec![0.0]]);
    let sq = unit_square_01();
    assert!(matches!(
        minkowski_sum(&seg, &sq),
        Err(PolyError::DimensionMismatch(1, 2))
    ));
}

#[test]
fn simplex_difference_is_a_hexagon() {
    // conv{0, e1, e2} − itself: 9 candidate points whose hull is the
    // hexagon ±e1, ±e2, ±(e1−e2).
    let s = v2(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
    let sum = minkowski_sum(&s, &s.negate()).unwrap();
    assert_eq!(sum.points.len(), 9);
    let hull = sum.extreme();
    assert_eq!(
        sorted(&hull.points),
        sorted(&[
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
            vec![1.0, -1.0],
            vec![-1.0, 1.0]
        ])
    );

    let body = Body::from_v(s);
    let diff = difference_body(&body).unwrap();
    assert_eq!(sorted(&diff.points), sorted(&hull.points));
}

#[test]
fn difference_body_of_square_and_segment() {
    let sq = Body::from_v(unit_square_01());
    let d = difference_body(&sq).unwrap();
    assert_eq!(
        sorted(&d.points),
        sorted(&[vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, -1.0]])
    );

    let seg = Body::from_v(VPolytope::new(1, vec![vec![0.5], vec![2.0]]));
    let d = difference_body(&seg).unwrap();
    assert_eq!(sorted(&d.points), sorted(&[vec![-1.5], vec![1.5]]));
}

#[test]
fn difference_body_is_zero_symmetric() {
    let k = v2(&[(0.2, 0.0), (1.5, 0.3), (0.9, 1.1), (-0.4, 0.6)]);
    let d = difference_body(&Body::from_v(k)).unwrap();
    let negated = d.negate();
    assert_eq!(sorted(&d.points), sorted(&negated.points));
}

#[test]
fn vertex_enumeration_of_the_unit_square() {
    let h = HPolytope::from_rows(
        2,
        vec![
            (vec![1.0, 0.0], 1.0),
            (vec![-1.0, 0.0], 0.0),
            (vec![0.0, 1.0], 1.0),
            (vec![0.0, -1.0], 0.0),
        ],
    );
    let v = vertices_of(&h).unwrap();
    assert_eq!(
        sorted(&v.points),
        sorted(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]])
    );
}

#[test]
fn vertex_enumeration_of_the_standard_simplex() {
    let h = HPolytope::from_rows(
        3,
        vec![
            (vec![-1.0, 0.0, 0.0], 0.0),
            (vec![0.0, -1.0, 0.0], 0.0),
            (vec![0.0, 0.0, -1.0], 0.0),
            (vec![1.0, 1.0, 1.0], 1.0),
        ],
    );
    let v = vertices_of(&h).unwrap();
    assert_eq!(v.points.len(), 4);
    assert_eq!(
        sorted(&v.points),
        sorted(&[
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0]
        ])
    );
}

#[test]
fn vertex_enumeration_of_a_regular_hexagon() {
    // Normals at 60° steps, inradius √3/2 → vertices on the unit circle.
    let rows: Vec<(Vec<f64>, f64)> = (0..6)
        .map(|k| {
            let a = std::f64::consts::PI / 3.0 * k as f64;
            (vec![a.cos(), a.sin()], 3f64.sqrt() / 2.0)
        })
        .collect();
    let v = vertices_of(&HPolytope::from_rows(2, rows)).unwrap();
    assert_eq!(v.points.len(), 6);
    for p in &v.points {
        assert!((crate::linalg::norm(p) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn vertex_enumeration_detects_unbounded_systems() {
    // A slab in 2-D and a single halfspace in 3-D.
    let slab = HPolytope::from_rows(2, vec![(vec![0.0, 1.0], 1.0), (vec![0.0, -1.0], 0.0)]);
    assert!(matches!(vertices_of(&slab), Err(PolyError::Unbounded)));

    let half = HPolytope::from_rows(3, vec![(vec![1.0, 0.0, 0.0], 1.0)]);
    assert!(matches!(vertices_of(&half), Err(PolyError::Unbounded)));
}

#[test]
fn facet_enumeration_of_the_unit_square() {
    let h = facets_of(&unit_square_01()).unwrap();
    assert_eq!(h.rows.len(), 4);
    for p in &unit_square_01().points {
        assert!(h.contains(p, tol::GEOM));
    }
    assert!(!h.contains(&[1.5, 0.5], tol::GEOM));
    assert!(!h.contains(&[0.5, -0.1], tol::GEOM));
}

#[test]
fn facet_enumeration_of_the_octahedron() {
    let octa = VPolytope::new(
        3,
        vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0],
        ],
    );
    let h = facets_of(&octa).unwrap();
    assert_eq!(h.rows.len(), 8);
    // Every facet is ±x ± y ± z ≤ 1, i.e. unit normals (±1,±1,±1)/√3 at
    // offset 1/√3.
    let r3 = 3f64.sqrt();
    for row in &h.rows {
        assert!((row.offset - 1.0 / r3).abs() < 1e-9);
        for c in &row.normal {
            assert!((c.abs() - 1.0 / r3).abs() < 1e-9);
        }
    }
}

#[test]
fn facet_enumeration_rejects_flat_input() {
    let flat = VPolytope::new(2, vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]);
    assert!(matches!(facets_of(&flat), Err(PolyError::NotFullDimensional)));
}

#[test]
fn round_trip_v_h_v_preserves_the_set() {
    let k = v2(&[(0.0, 0.0), (2.0, 0.3), (1.4, 1.8), (-0.5, 1.0), (0.7, 0.7)]);
    let h = facets_of(&k).unwrap();
    let back = vertices_of(&h).unwrap();
    assert!(back.same_set_as(&k));
}

#[test]
fn support_examples() {
    let sq = square_sym();
    assert!((sq.support(&[1.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
    assert!(matches!(sq.support(&[0.0, 0.0]), Err(PolyError::ZeroDirection)));

    // h(K, a) + h(−K, a) = h(K−K, a) on the triangle, a = e1: 1 + 0 = 1.
    let s = v2(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
    let a = [1.0, 0.0];
    let hk = s.support(&a).unwrap();
    let hn = s.negate().support(&a).unwrap();
    let hd = difference_body(&Body::from_v(s.clone()))
        .unwrap()
        .support(&a)
        .unwrap();
    assert!((hk - 1.0).abs() < 1e-12);
    assert!(hn.abs() < 1e-12);
    assert!((hk + hn - hd).abs() < 1e-12);

    // Affine rule h(c + ρK, a) = a·c + ρ h(K, a) on an instance.
    let moved = s.dilate_translate(2.5, &[3.0, -1.0]).unwrap();
    let lhs = moved.support(&a).unwrap();
    assert!((lhs - (3.0 + 2.5 * hk)).abs() < 1e-12);
}

#[test]
fn h_support_matches_v_support() {
    let k = v2(&[(0.0, 0.0), (2.0, 0.3), (1.4, 1.8), (-0.5, 1.0)]);
    let h = facets_of(&k).unwrap();
    for a in [[1.0, 0.0], [0.3, -0.8], [-1.0, 2.0], [0.0, -1.0]] {
        let hv = k.support(&a).unwrap();
        let hh = h.support(&a).unwrap();
        assert!((hv - hh).abs() < 1e-7, "direction {a:?}: {hv} vs {hh}");
    }
}

#[test]
fn body_caches_converted_presentations() {
    let body = Body::from_v(unit_square_01());
    assert!(body.try_h().is_none());
    let first = body.h().unwrap() as *const HPolytope;
    let second = body.h().unwrap() as *const HPolytope;
    assert_eq!(first, second);
    assert_eq!(body.try_h().unwrap().rows.len(), 4);
}

#[test]
fn body_ops_preserve_both_presentations() {
    let body = Body::from_v(square_sym());
    body.h().unwrap();
    let neg = negate(&body);
    assert!(neg.try_v().is_some() && neg.try_h().is_some());
    let moved = dilate_translate(&body, 2.0, &[1.0, 0.0]).unwrap();
    let h = moved.try_h().unwrap();
    let v = moved.try_v().unwrap();
    for p in &v.points {
        assert!(h.contains(p, tol::GEOM));
    }
    assert!((moved.support(&[1.0, 0.0]).unwrap() - 3.0).abs() < 1e-9);
}

#[test]
fn exact_mirrors_survive_the_cheap_ops() {
    use num_rational::BigRational;
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let v = VPolytope::with_exact(
        1,
        vec![vec![q(1, 3)], vec![q(2, 3)]],
    );
    let n = v.negate();
    assert_eq!(n.exact.as_ref().unwrap()[0][0], q(-1, 3));
    let d = n.dilate_translate(2.0, &[1.0]).unwrap();
    assert_eq!(d.exact.as_ref().unwrap()[0][0], q(1, 3));
    let s = minkowski_sum(&v, &n).unwrap();
    assert!(s.exact.is_some());
    // Conversions drop the mirror.
    let e = s.extreme();
    assert_eq!(e.exact.as_ref().unwrap().len(), e.points.len());
}
