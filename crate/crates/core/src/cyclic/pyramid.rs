//! A pyramid whose lateral faces are isosceles triangles with legs `R`: the
//! base is the cyclic polygon with the given sides, centred on the z-axis.

use super::solve::{check_sides, circumradius_solve, place};
use super::{CyclicError, CyclicPolygon};
use crate::euclid::Point;
use crate::numerics::Real;

#[derive(Clone, Debug)]
pub struct Point3 {
    pub x: Real,
    pub y: Real,
    pub z: Real,
}

impl Point3 {
    pub fn dist(&self, o: &Point3) -> Real {
        ((&self.x - &o.x).sqr() + (&self.y - &o.y).sqr() + (&self.z - &o.z).sqr()).sqrt()
    }
}

#[derive(Clone, Debug)]
pub struct Pyramid {
    pub apex: Point3,
    /// Base vertices in `z = 0`, counterclockwise seen from the apex.
    pub base: Vec<Point3>,
    pub lateral_edge: Real,
    pub base_circumradius: Real,
    /// The base as a plane polygon centred at the origin.
    pub base_polygon: CyclicPolygon,
}

impl Pyramid {
    /// Largest violation of the defining identities: lateral edges equal to
    /// `R`, base on the circle of radius `r`, apex height² = R² − r².
    pub fn invariant_residual(&self) -> Real {
        let r = &self.base_circumradius;
        let big = &self.lateral_edge;
        let mut worst = r.lift_i64(0);
        for b in &self.base {
            worst = worst.max((b.dist(&self.apex) - big).abs());
            worst = worst.max((Real::hypot(&b.x, &b.y) - r).abs());
            worst = worst.max(b.z.abs());
        }
        let h2 = self.apex.z.sqr() - (big.sqr() - r.sqr());
        worst.max(h2.abs()).max(self.apex.x.abs()).max(self.apex.y.abs())
    }
}

/// The pyramid with lateral edges `R` over the convex cyclic polygon with
/// sides `a`. Requires every `a_i < 2R` and apex angles summing below `2π`.
pub fn pyramid(big_r: &Real, a: &[Real]) -> Result<Pyramid, CyclicError> {
    if a.len() < 3 {
        return Err(CyclicError::TooFewSides { n: a.len() });
    }
    if let Some(index) = a.iter().position(|x| !x.is_positive()) {
        return Err(CyclicError::NonPositiveSide { index });
    }
    let two = big_r.lift_i64(2);
    let tol = big_r.tolerance();
    if let Some(index) = a.iter().position(|x| x >= &(&two * big_r) || tol.near(x, &(&two * big_r))) {
        return Err(CyclicError::ChordTooLong { index });
    }
    let angles: Vec<Real> = a.iter().map(|x| &two * (x / &(&two * big_r)).asin()).collect();
    let apex_sum = angles.iter().fold(big_r.lift_i64(0), |s, t| s + t);
    let two_pi = Real::pi(big_r.precision()) * two.clone();
    if apex_sum >= two_pi || tol.near(&apex_sum, &two_pi) {
        return Err(CyclicError::ApexAngleOverflow);
    }
    // The triangles close up around the apex only if the apex angles form a
    // spherical polygon: the largest is below the sum of the others.
    let widest = angles.iter().cloned().fold(big_r.lift_i64(0), Real::max);
    let rest = &apex_sum - &widest;
    if widest >= rest || tol.near(&widest, &rest) {
        return Err(CyclicError::OpenCircuit);
    }
    check_sides(a)?;
    let circ = circumradius_solve(a)?;
    let r = circ.r.clone();
    if r >= *big_r {
        return Err(CyclicError::OpenCircuit);
    }
    let prec = r.precision();
    let a1 = Point::origin(prec);
    let a2 = Point::new(a[0].clone(), Real::zero(prec));
    let (verts, center, _) = place(&a1, &a2, a, &r, Some(&circ));
    let shifted: Vec<Point> = verts.iter().map(|v| v.sub(&center)).collect();
    let base_polygon = CyclicPolygon::new(shifted, Point::origin(prec), r.clone())?;
    let zero = Real::zero(prec);
    let base = base_polygon
        .vertices()
        .iter()
        .map(|v| Point3 { x: v.x.clone(), y: v.y.clone(), z: zero.clone() })
        .collect();
    let apex = Point3 { x: zero.clone(), y: zero, z: (big_r.sqr() - r.sqr()).sqrt() };
    Ok(Pyramid { apex, base, lateral_edge: big_r.clone(), base_circumradius: r, base_polygon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Precision;

    fn p() -> Precision {
        Precision::new(50).unwrap()
    }

    fn ones(n: usize) -> Vec<Real> {
        vec![Real::one(p()); n]
    }

    #[test]
    fn square_pyramid() {
        let py = pyramid(&Real::one(p()), &ones(4)).unwrap();
        let half_root2 = Real::from_i64(2, p()).sqrt() / Real::from_i64(2, p());
        let tol = p().tolerance();
        assert!(tol.near(&py.base_circumradius, &half_root2));
        assert!(tol.near(&py.apex.z, &half_root2));
        assert!(tol.is_zero(&py.invariant_residual()));
    }

    #[test]
    fn pentagon_pyramid() {
        let py = pyramid(&Real::one(p()), &ones(5)).unwrap();
        assert_eq!(py.base.len(), 5);
        assert!(p().tolerance().is_zero(&py.invariant_residual()));
    }

    #[test]
    fn rejections() {
        assert_eq!(pyramid(&Real::one(p()), &ones(6)).unwrap_err(), CyclicError::ApexAngleOverflow);
        let half = Real::from_f64(0.5, p());
        let a = vec![Real::from_f64(1.2, p()), Real::one(p()), Real::one(p())];
        assert_eq!(pyramid(&half, &a).unwrap_err(), CyclicError::ChordTooLong { index: 0 });
    }

    #[test]
    fn open_circuit() {
        // Every side below 2R and angle sum below 2π, but one apex angle
        // exceeds the other two together: no closed surface, no pyramid.
        let r = Real::from_f64(3.75, p());
        let a = vec![Real::from_f64(4.25, p()), Real::from_f64(0.125, p()), Real::from_f64(0.125, p())];
        assert_eq!(pyramid(&r, &a).unwrap_err(), CyclicError::OpenCircuit);
    }
}
