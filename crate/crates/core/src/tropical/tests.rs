use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::geometry::{polygon_of, DivisorClass, Point, Surface};
use crate::kontsevich::count_plane;
use crate::numerics::binomial;

fn tri(d: i64) -> LatticePolygon {
    polygon_of(&DivisorClass::new([d]), &Surface::Plane).unwrap()
}

fn poly(v: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
}

fn pts(v: &[(i64, i64)]) -> Vec<Point> {
    v.iter().map(|&(x, y)| Point::new(x, y)).collect()
}

#[test]
fn line_has_one_two_step_path() {
    let paths = enumerate_paths(&tri(1), LambdaFunctional::XThenNegY, 2).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].points, pts(&[(0, 1), (0, 0), (1, 0)]));
    let ctx = PathContext::new(&tri(1), LambdaFunctional::XThenNegY);
    assert_eq!(ctx.boundary(Side::Negative).path, paths[0].points);
    assert_eq!(ctx.boundary(Side::Positive).path, pts(&[(0, 1), (1, 0)]));
    assert_eq!(mu_side(&paths[0], &ctx, Side::Negative), Nat::one());
    assert_eq!(mu_side(&paths[0], &ctx, Side::Positive), Nat::one());
}

#[test]
fn zero_steps_rejected() {
    assert_eq!(enumerate_paths(&tri(2), LambdaFunctional::XThenY, 0).unwrap_err(), TropicalError::ZeroSteps);
}

/// Brute force over every subset of lattice points.
fn brute_force_paths(polygon: &LatticePolygon, lambda: LambdaFunctional, steps: usize) -> BTreeSet<Vec<Point>> {
    let ctx = PathContext::new(polygon, lambda);
    let all = polygon.lattice_points();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << all.len()) {
        if mask.count_ones() as usize != steps + 1 {
            continue;
        }
        let mut chosen: Vec<Point> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        chosen.sort_by(|a, b| lambda.cmp(*a, *b));
        if ctx.is_valid_path(&chosen) {
            out.insert(chosen);
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    let polys = [
        tri(2),
        tri(3),
        poly(&[(0, 0), (2, 0), (2, 1), (0, 1)]),
        poly(&[(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)]),
    ];
    for p in &polys {
        for lambda in LambdaFunctional::ALL {
            for steps in 1..=p.lattice_points().len() {
                let got: BTreeSet<Vec<Point>> =
                    enumerate_paths(p, lambda, steps).unwrap().into_iter().map(|x| x.points).collect();
                assert_eq!(got, brute_force_paths(p, lambda, steps), "{p:?} {lambda} {steps}");
                let inner = p.lattice_points().len() as i64 - 2;
                assert_eq!(Nat::from(got.len() as u64), binomial(inner, steps as i64 - 1));
            }
        }
    }
}

#[test]
fn partitions_cover_each_path_once() {
    for p in [tri(3), tri(4)] {
        let ctx = PathContext::new(&p, LambdaFunctional::YThenX);
        for steps in [1, 2, 3, ctx.steps_for_genus(0), ctx.steps_for_genus(1)] {
            let whole: Vec<LatticePath> = ctx.enumerate(steps).unwrap().collect();
            let mut parts: Vec<LatticePath> = Vec::new();
            for prefix in ctx.partitions(steps) {
                parts.extend(ctx.enumerate_partition(steps, &prefix).unwrap());
            }
            parts.sort();
            let mut sorted = whole.clone();
            sorted.sort();
            assert_eq!(parts, sorted, "steps = {steps}");
        }
    }
}

#[test]
fn every_path_has_the_requested_shape() {
    let p = tri(4);
    for lambda in LambdaFunctional::ALL {
        let ctx = PathContext::new(&p, lambda);
        let n = ctx.steps_for_genus(0);
        assert_eq!(n, 11);
        for path in ctx.enumerate(n).unwrap() {
            assert_eq!(path.steps(), n);
            assert_eq!(path.points[0], ctx.start());
            assert_eq!(*path.points.last().unwrap(), ctx.end());
        }
    }
}

#[test]
fn side_boundaries_partition_the_boundary() {
    for p in [tri(3), poly(&[(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)]), poly(&[(0, 0), (4, 0), (0, 2)])] {
        for lambda in LambdaFunctional::ALL {
            let ctx = PathContext::new(&p, lambda);
            let pos = &ctx.boundary(Side::Positive).path;
            let neg = &ctx.boundary(Side::Negative).path;
            let inner = |v: &Vec<Point>| v[1..v.len() - 1].iter().copied().collect::<BTreeSet<_>>();
            assert!(inner(pos).is_disjoint(&inner(neg)));
            assert_eq!(inner(pos).len() + inner(neg).len() + 2, p.boundary_lattice_count() as usize);
            assert!(ctx.is_valid_path(pos));
            assert!(ctx.is_valid_path(neg));
        }
    }
}

#[test]
fn boundary_paths_have_unit_multiplicity_on_their_own_side() {
    let ctx = PathContext::new(&tri(3), LambdaFunctional::XThenNegY);
    let pos = LatticePath { points: ctx.boundary(Side::Positive).path.clone() };
    assert_eq!(mu_side(&pos, &ctx, Side::Positive), Nat::one());
    // The upper boundary never turns right, so it has no negative multiplicity.
    assert_eq!(mu_side(&pos, &ctx, Side::Negative), Nat::zero());
    // A straight non-primitive path: no turns either way, not a boundary.
    let straight = LatticePath { points: pts(&[(0, 3), (3, 0)]) };
    assert_eq!(mu_side(&straight, &ctx, Side::Positive), Nat::zero());
    assert_eq!(mu_side(&straight, &ctx, Side::Negative), Nat::zero());
}

#[test]
fn conic_total_is_one() {
    let p = tri(2);
    let ctx = PathContext::new(&p, LambdaFunctional::XThenNegY);
    let mut engine = MultiplicityEngine::new(&ctx);
    let total: Nat = ctx.enumerate(5).unwrap().map(|g| engine.weight(&g)).sum();
    assert_eq!(total, Nat::one());
}

#[test]
fn raw_totals_on_plane_triangles() {
    for lambda in LambdaFunctional::ALL {
        assert_eq!(path_total(&tri(1), lambda).unwrap(), Nat::one());
        assert_eq!(path_total(&tri(2), lambda).unwrap(), Nat::one());
        assert_eq!(path_total(&tri(3), lambda).unwrap(), Nat::from(12u64));
        // 620 irreducible quartics plus an elliptic cubic through 9 of the 11
        // points with a line through the remaining 2.
        assert_eq!(path_total(&tri(4), lambda).unwrap(), Nat::from(620u64 + 55));
    }
}

#[test]
fn genus_one_cubic_is_unique() {
    let counter = &mut IrreducibleCounter::new(&tri(3), SequentialPathTotals::new(LambdaFunctional::XThenY)).unwrap();
    assert_eq!(counter.count(1).unwrap(), Nat::one());
    // Genus above the interior point count.
    assert_eq!(counter.count(2).unwrap(), Nat::zero());
}

#[test]
fn irreducible_counts_match_recursion() {
    for d in 1..=4u32 {
        for lambda in LambdaFunctional::ALL {
            assert_eq!(count_polygon(&tri(d as i64), lambda).unwrap(), count_plane(d), "d = {d}, {lambda}");
        }
    }
}

#[test]
fn quintic_matches_recursion() {
    assert_eq!(count_polygon(&tri(5), LambdaFunctional::XThenNegY).unwrap(), count_plane(5));
}

#[test]
fn toric_del_pezzo_values() {
    let sq = |a, b| polygon_of(&DivisorClass::new([a, b]), &Surface::Hirzebruch { s: 0 }).unwrap();
    let bp =
        |c: &[i64]| polygon_of(&DivisorClass::new(c.to_vec()), &Surface::BlownPlane { k: c.len() as u32 - 1 }).unwrap();
    for lambda in LambdaFunctional::ALL {
        assert_eq!(count_polygon(&sq(1, 1), lambda).unwrap(), Nat::one());
        assert_eq!(count_polygon(&sq(2, 2), lambda).unwrap(), Nat::from(12u64));
        assert_eq!(count_polygon(&sq(2, 1), lambda).unwrap(), Nat::one());
        // Rational cubics through 8 points, three of them the blown-up ones.
        assert_eq!(count_polygon(&bp(&[3, 1, 1, 1]), lambda).unwrap(), Nat::from(12u64));
        // Conics through the blown-up point and 4 more points.
        assert_eq!(count_polygon(&bp(&[2, 1]), lambda).unwrap(), Nat::one());
        // Cubics with a double point at the blown-up point: one through 7 points... class 3L - 2E.
        assert_eq!(count_polygon(&bp(&[3, 2]), lambda).unwrap(), Nat::one());
    }
    assert_eq!(count_polygon(&sq(3, 3), LambdaFunctional::XThenNegY).unwrap(), Nat::from(3510u64));
}

fn test_grid() -> Vec<LatticePolygon> {
    let mut out = vec![tri(1), tri(2), tri(3), tri(4)];
    for c in [[2i64, 1, 0, 0], [3, 1, 0, 0], [3, 1, 1, 0], [3, 1, 1, 1], [3, 2, 0, 0], [4, 1, 1, 1], [3, 2, 1, 0]] {
        out.push(polygon_of(&DivisorClass::new(c.to_vec()), &Surface::BlownPlane { k: 3 }).unwrap());
    }
    for (s, a, b) in [(0, 1, 1), (0, 2, 1), (0, 2, 2), (1, 2, 1), (1, 3, 2), (2, 2, 1), (2, 3, 1), (2, 4, 2), (3, 3, 1)]
    {
        out.push(polygon_of(&DivisorClass::new([a, b]), &Surface::Hirzebruch { s }).unwrap());
    }
    out
}

#[test]
fn counts_do_not_depend_on_lambda() {
    for p in test_grid() {
        let raw: Vec<Nat> = LambdaFunctional::ALL.iter().map(|&l| path_total(&p, l).unwrap()).collect();
        let irr: Vec<Nat> = LambdaFunctional::ALL.iter().map(|&l| count_polygon(&p, l).unwrap()).collect();
        assert!(raw.windows(2).all(|w| w[0] == w[1]), "{p:?}: {raw:?}");
        assert!(irr.windows(2).all(|w| w[0] == w[1]), "{p:?}: {irr:?}");
        assert!(irr[0] <= raw[0]);
    }
}

#[test]
fn counts_are_unimodular_invariants() {
    let maps = [
        ([[1, 1], [0, 1]], Point::new(3, -2)),
        ([[0, 1], [1, 0]], Point::new(0, 0)),
        ([[2, 1], [1, 1]], Point::new(-1, 5)),
    ];
    for p in test_grid().into_iter().take(12) {
        let base = count_polygon(&p, LambdaFunctional::XThenNegY).unwrap();
        for (m, t) in maps {
            let q = p.transform(m, t).unwrap();
            for lambda in LambdaFunctional::ALL {
                assert_eq!(count_polygon(&q, lambda).unwrap(), base, "{p:?} -> {q:?}");
            }
        }
    }
}

#[test]
fn hirzebruch_two_totals() {
    let h = |n: i64| polygon_of(&DivisorClass::new([2 * n, n]), &Surface::Hirzebruch { s: 2 }).unwrap();
    let raw: Vec<Nat> = (1..=3).map(|n| path_total(&h(n), LambdaFunctional::XThenNegY).unwrap()).collect();
    assert_eq!(raw, [Nat::from(1u64), Nat::from(10u64), Nat::from(2397u64)]);
    let irr: Vec<Nat> = (1..=3).map(|n| count_polygon(&h(n), LambdaFunctional::XThenNegY).unwrap()).collect();
    assert_eq!(irr, [Nat::from(1u64), Nat::from(10u64), Nat::from(2232u64)]);
}
