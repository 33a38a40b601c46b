use origami_core::cyclic::{circumradius_solve, construct_cyclic, cpa, pyramid, regular_ngon, rpa};
use origami_core::euclid::Point;
use origami_core::numerics::{Precision, Real};
use proptest::prelude::*;

fn prec() -> Precision {
    Precision::new(40).unwrap()
}

fn reals(v: &[u32]) -> Vec<Real> {
    v.iter().map(|x| Real::from_i64(*x as i64, prec())).collect()
}

fn admissible(v: &[u32]) -> bool {
    let max = *v.iter().max().unwrap() as u64;
    let sum: u64 = v.iter().map(|x| *x as u64).sum();
    2 * max < sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn solver_closes_with_given_sides(sides in prop::collection::vec(1u32..=20, 3..=7)) {
        prop_assume!(admissible(&sides));
        let a = reals(&sides);
        let tol = prec().tolerance();
        let c = construct_cyclic(&Point::origin(prec()), &Point::new(a[0].clone(), Real::zero(prec())), &a).unwrap();
        let got = c.polygon.side_lengths();
        prop_assert_eq!(got.len(), a.len());
        for (x, y) in got.iter().zip(&a) {
            prop_assert!(tol.near(x, y), "{x} vs {y}");
        }
        for v in c.polygon.vertices() {
            prop_assert!(tol.near(&v.dist(c.polygon.center()), c.polygon.radius()));
        }
        // Counterclockwise.
        prop_assert!(c.polygon.signed_area().is_positive());
    }

    #[test]
    fn circumradius_is_rotation_invariant(sides in prop::collection::vec(1u32..=20, 3..=7), k in 0usize..7) {
        prop_assume!(admissible(&sides));
        let a = reals(&sides);
        let mut b = a.clone();
        b.rotate_left(k % a.len());
        b.reverse();
        let r1 = circumradius_solve(&a).unwrap().r;
        let r2 = circumradius_solve(&b).unwrap().r;
        prop_assert!(prec().tolerance().near(&r1, &r2));
    }

    #[test]
    fn pyramid_invariants(r8 in 8u32..40, sides in prop::collection::vec(1u32..=60, 3..=7)) {
        let big_r = r8 as f64 / 8.0;
        let a: Vec<f64> = sides.iter().map(|s| *s as f64 / 8.0).collect();
        prop_assume!(a.iter().all(|x| *x < 2.0 * big_r * (1.0 - 1e-6)));
        let theta: Vec<f64> = a.iter().map(|x| 2.0 * (x / (2.0 * big_r)).asin()).collect();
        let angle: f64 = theta.iter().sum();
        let widest = theta.iter().cloned().fold(0.0, f64::max);
        prop_assume!(angle < 2.0 * std::f64::consts::PI - 1e-6);
        // The triangles close into a surface around the apex.
        prop_assume!(widest < angle - widest - 1e-6);
        let br = Real::from_i64(r8 as i64, prec()) / Real::from_i64(8, prec());
        let ar: Vec<Real> = sides.iter().map(|s| Real::from_i64(*s as i64, prec()) / Real::from_i64(8, prec())).collect();
        let p = pyramid(&br, &ar).unwrap();
        prop_assert!(prec().tolerance().is_zero(&p.invariant_residual()));
        prop_assert!(p.base_circumradius < p.lateral_edge);
        prop_assert!(admissible(&sides));
    }

    #[test]
    fn pyramid_never_panics(r8 in 8u32..40, sides in prop::collection::vec(1u32..=60, 3..=7)) {
        let br = Real::from_i64(r8 as i64, prec()) / Real::from_i64(8, prec());
        let ar: Vec<Real> = sides.iter().map(|s| Real::from_i64(*s as i64, prec()) / Real::from_i64(8, prec())).collect();
        if let Ok(p) = pyramid(&br, &ar) {
            prop_assert!(admissible(&sides));
            prop_assert!(prec().tolerance().is_zero(&p.invariant_residual()));
        }
    }
}

#[test]
fn rpa_matches_cpa_on_regular_polygons() {
    let tol = prec().tolerance();
    for n in 3..=8 {
        let big = regular_ngon(n + 1, prec()).unwrap().polygon().clone();
        let (_, a) = rpa(&big).unwrap();
        let (_, b) = cpa(&big, 1).unwrap();
        assert_eq!(a.len(), n);
        for (p, q) in a.vertices().iter().zip(b.vertices()) {
            assert!(p.approx_eq(q, &tol), "n = {n}");
        }
    }
}
