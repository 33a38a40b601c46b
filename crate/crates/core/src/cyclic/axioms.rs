//! The regular and cyclic polygon axioms and the regular n-gon chain.

use super::solve::{check_sides, cyclic_direct};
use super::{short, CyclicError, CyclicPolygon};
use crate::euclid::{li, o1, o2, o3, o4, reflect_point, Line, LineSet, Point};
use crate::numerics::{Precision, Real};

/// `ζ_n = e^{2πi/n}` as a point.
#[derive(Clone, Debug)]
pub struct RootOfUnity {
    pub n: usize,
    pub value: Point,
}

impl RootOfUnity {
    pub fn new(n: usize, prec: Precision) -> RootOfUnity {
        assert!(n >= 1);
        RootOfUnity { n, value: Self::power(n, 1, prec) }
    }

    /// `ζ_n^k`, evaluated directly rather than by repeated products.
    pub fn power(n: usize, k: usize, prec: Precision) -> Point {
        let k = k % n;
        let t = Real::pi(prec) * Real::from_i64(2 * k as i64, prec) / Real::from_i64(n as i64, prec);
        Point::new(t.cos(), t.sin())
    }

    pub fn pow(&self, k: usize) -> Point {
        Self::power(self.n, k, self.value.precision())
    }

    /// `| |ζ| − 1 |`.
    pub fn modulus_residual(&self) -> Real {
        (self.value.norm() - self.value.x.lift_i64(1)).abs()
    }

    /// `|ζⁿ − 1|` with `ζⁿ` formed by repeated squaring.
    pub fn power_residual(&self) -> Real {
        let prec = self.value.precision();
        let mut acc = Point::new(Real::one(prec), Real::zero(prec));
        let mut base = self.value.clone();
        let mut e = self.n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.complex_mul(&base);
            }
            base = base.complex_mul(&base);
            e >>= 1;
        }
        acc.sub(&Point::new(Real::one(prec), Real::zero(prec))).norm()
    }
}

/// RPA: from a regular `(n+1)`-gon, the regular `n`-gon sharing its first
/// side, `B_i = C + ζ_n^{i−1}(A_1 − C)` with `C = (A_2 − A_1 ζ_n)/(1 − ζ_n)`.
pub fn rpa(p: &CyclicPolygon) -> Result<(LineSet, CyclicPolygon), CyclicError> {
    let n = p.len() - 1;
    if n < 3 {
        return Err(CyclicError::TooFewSides { n });
    }
    if !p.is_regular() {
        return Err(CyclicError::NotRegular);
    }
    let prec = p.radius().precision();
    let (a1, a2) = (&p.vertices()[0], &p.vertices()[1]);
    let zeta = RootOfUnity::new(n, prec);
    let one = Point::new(Real::one(prec), Real::zero(prec));
    let c = a2.sub(&a1.complex_mul(&zeta.value)).complex_div(&one.sub(&zeta.value));
    let spoke = a1.sub(&c);
    let mut verts = vec![a1.clone(), a2.clone()];
    for k in 2..n {
        verts.push(c.add(&zeta.pow(k).complex_mul(&spoke)));
    }
    let q = CyclicPolygon::new(verts, c, spoke.norm())?;
    Ok((q.side_lines()?, q))
}

/// CPA_{n,k}: from a central cyclic `(n+k)`-gon, the cyclic `n`-gon with the
/// same first `n` sides and first side.
pub fn cpa(p1: &CyclicPolygon, k: usize) -> Result<(LineSet, CyclicPolygon), CyclicError> {
    if k != 1 && k != 2 {
        return Err(CyclicError::BadK { k });
    }
    let n = p1.len().saturating_sub(k);
    if n < 3 {
        return Err(CyclicError::TooFewSides { n });
    }
    if !p1.is_central() {
        return Err(CyclicError::NotCentral);
    }
    let sides = &p1.side_lengths()[..n];
    check_sides(sides)?;
    let (p2, _) = cyclic_direct(&p1.vertices()[0], &p1.vertices()[1], sides)?;
    let tol = p1.tolerance();
    if p2.radius() >= p1.radius() || tol.near(p2.radius(), p1.radius()) {
        return Err(CyclicError::RadiusNotDecreasing { from: short(p1.radius()), to: short(p2.radius()) });
    }
    Ok((p2.side_lines()?, p2))
}

/// The descent `2^k`-gon → … → n-gon, every stage anchored on `(0,0), (1,0)`.
#[derive(Clone, Debug)]
pub struct NgonChain {
    pub k: u32,
    /// Lines folded while building the `2^k`-gon (bisectors, mediatrix,
    /// spokes).
    pub construction_lines: Vec<Line>,
    /// Polygons from the `2^k`-gon down to the target.
    pub stages: Vec<CyclicPolygon>,
}

impl NgonChain {
    pub fn polygon(&self) -> &CyclicPolygon {
        self.stages.last().expect("nonempty chain")
    }

    /// Side counts along the chain.
    pub fn sides(&self) -> Vec<usize> {
        self.stages.iter().map(CyclicPolygon::len).collect()
    }
}

fn bisector_between(l: &Line, m: &Line) -> Result<Line, CyclicError> {
    let (lo, hi) = {
        let (x, y) = (l.direction_angle(), m.direction_angle());
        if x < y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let set = o3(l, m)?;
    set.iter()
        .find(|b| {
            let t = b.direction_angle();
            t > lo && t < hi
        })
        .cloned()
        .ok_or(CyclicError::NotRegular)
}

/// Regular `2^k`-gon on `(0,0), (1,0)` from single-fold axioms only: the
/// line from `A_1` to the centre makes angle `π/2 − π/2^k` with the base and
/// is reached by `k − 1` bisections between it and the perpendicular.
fn power_of_two_gon(k: u32, prec: Precision) -> Result<(CyclicPolygon, Vec<Line>), CyclicError> {
    let a1 = Point::origin(prec);
    let a2 = Point::new(Real::one(prec), Real::zero(prec));
    let base = o1(&a1, &a2)?;
    let perp = o4(&a1, &base);
    let mut lines = vec![base.clone(), perp.clone()];
    let mut ray = base;
    for _ in 0..k - 1 {
        ray = bisector_between(&ray, &perp)?;
        lines.push(ray.clone());
    }
    let mediatrix = o2(&a1, &a2)?;
    lines.push(mediatrix.clone());
    let c = li(&ray, &mediatrix)?;
    let m = 1usize << k;
    let mut verts = vec![a1.clone(), a2];
    while verts.len() < m {
        let i = verts.len();
        let spoke = o1(&c, &verts[i - 1])?;
        let next = reflect_point(&verts[i - 2], &spoke);
        lines.push(spoke);
        verts.push(next);
    }
    let r = c.dist(&a1);
    Ok((CyclicPolygon::new(verts, c, r)?, lines))
}

/// Regular n-gon with first side `(0,0) → (1,0)`: build a `2^k`-gon with
/// `k = ⌈log₂(n+1)⌉ + 1`, then apply RPA until `n` sides remain. Each RPA
/// step rechecks regularity, so accumulated error surfaces as `NotRegular`.
pub fn regular_ngon(n: usize, prec: Precision) -> Result<NgonChain, CyclicError> {
    if n < 3 {
        return Err(CyclicError::TooFewSides { n });
    }
    let k = (n + 1).next_power_of_two().trailing_zeros() + 1;
    let (top, construction_lines) = power_of_two_gon(k, prec)?;
    let mut stages = vec![top];
    while stages.last().expect("nonempty").len() > n {
        let (_, next) = rpa(stages.last().expect("nonempty"))?;
        stages.push(next);
    }
    Ok(NgonChain { k, construction_lines, stages })
}

/// Largest vertex distance to the ideal regular polygon with the same side
/// `|A_2 − A_1|`, after the best rigid motion (centroids matched, rotation by
/// least squares, vertex correspondence fixed).
pub fn max_deviation_from_regular(p: &CyclicPolygon) -> Real {
    let prec = p.radius().precision();
    let n = p.len();
    let nn = Real::from_i64(n as i64, prec);
    let side = p.vertices()[0].dist(&p.vertices()[1]);
    let half_step = Real::pi(prec) / &nn;
    let rho = &side / &(Real::from_i64(2, prec) * half_step.sin());
    let centroid = p
        .vertices()
        .iter()
        .fold(Point::origin(prec), |a, b| a.add(b))
        .scale(&(Real::one(prec) / &nn));
    let ideal: Vec<Point> = (0..n).map(|j| RootOfUnity::power(n, j, prec).scale(&rho)).collect();
    let centered: Vec<Point> = p.vertices().iter().map(|v| v.sub(&centroid)).collect();
    let (mut s_cross, mut s_dot) = (Real::zero(prec), Real::zero(prec));
    for (u, v) in ideal.iter().zip(&centered) {
        s_cross = s_cross + u.cross(v);
        s_dot = s_dot + u.dot(v);
    }
    let phi = Real::atan2(&s_cross, &s_dot);
    let rot = Point::new(phi.cos(), phi.sin());
    ideal
        .iter()
        .zip(&centered)
        .map(|(u, v)| rot.complex_mul(u).dist(v))
        .fold(Real::zero(prec), Real::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::new(50).unwrap()
    }

    fn pt(x: f64, y: f64) -> Point {
        Point::from_f64(x, y, p())
    }

    fn unit_square() -> CyclicPolygon {
        let r = Real::from_i64(2, p()).sqrt() / Real::from_i64(2, p());
        CyclicPolygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)], pt(0.5, 0.5), r).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        for n in 1..=12 {
            let z = RootOfUnity::new(n, p());
            assert!(p().tolerance().is_zero(&z.modulus_residual()));
            assert!(p().tolerance().is_zero(&z.power_residual()));
        }
    }

    #[test]
    fn square_to_triangle() {
        let (lines, t) = rpa(&unit_square()).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(lines.len(), 3);
        let tol = p().tolerance();
        let b3 = &t.vertices()[2];
        assert!(tol.near(&b3.x, &Real::from_f64(0.5, p())));
        assert!(tol.near(&b3.y, &(Real::from_i64(3, p()).sqrt() / Real::from_i64(2, p()))));
        assert_eq!(rpa(&t).unwrap_err(), CyclicError::TooFewSides { n: 2 });
    }

    #[test]
    fn hexagon_to_pentagon() {
        // Hexagon oracle: centre (1/2, √3/2), unit circumradius, vertices by
        // cos/sin of −2π/3 + jπ/3.
        let three = Real::from_i64(3, p());
        let c = Point::new(Real::from_f64(0.5, p()), three.sqrt() / Real::from_i64(2, p()));
        let pi = Real::pi(p());
        let verts: Vec<Point> = (0..6)
            .map(|j| {
                let t = -(&pi * &Real::from_i64(2, p()) / &three) + &pi * &Real::from_i64(j, p()) / &three;
                c.add(&Point::new(t.cos(), t.sin()))
            })
            .collect();
        assert!(verts[0].approx_eq(&Point::origin(p()), &p().tolerance()));
        let hex = CyclicPolygon::new(verts, c, Real::one(p())).unwrap();
        let (_, pent) = rpa(&hex).unwrap();
        assert_eq!(pent.len(), 5);
        for s in pent.side_lengths() {
            assert!(p().tolerance().near(&s, &Real::one(p())));
        }
        // Centre of the unit-side pentagon: (1/2, cot(π/5)/2).
        let want_y = 0.5 / (std::f64::consts::PI / 5.0).tan();
        assert!((pent.center().y.to_f64() - want_y).abs() < 1e-15);
    }

    #[test]
    fn not_regular_rejected() {
        let r = Real::from_f64(2.5, p());
        let rect = CyclicPolygon::new(vec![pt(0.0, 0.0), pt(4.0, 0.0), pt(4.0, 3.0), pt(0.0, 3.0)], pt(2.0, 1.5), r).unwrap();
        assert_eq!(rpa(&rect).unwrap_err(), CyclicError::NotRegular);
    }

    #[test]
    fn ngon_chain() {
        for n in [3, 4, 7, 11] {
            let chain = regular_ngon(n, p()).unwrap();
            let poly = chain.polygon();
            assert_eq!(poly.len(), n);
            assert!(poly.vertices()[0].identical(&Point::origin(p())));
            let tol = p().tolerance();
            assert!(tol.is_zero(&max_deviation_from_regular(poly)));
            // cos/sin oracle for the anchored ideal polygon.
            let rho = 0.5 / (std::f64::consts::PI / n as f64).sin();
            let phi0 = -std::f64::consts::FRAC_PI_2 - std::f64::consts::PI / n as f64;
            let cy = 0.5 / (std::f64::consts::PI / n as f64).tan();
            for (j, v) in poly.vertices().iter().enumerate() {
                let t = phi0 + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                assert!((v.x.to_f64() - (0.5 + rho * t.cos())).abs() < 1e-14);
                assert!((v.y.to_f64() - (cy + rho * t.sin())).abs() < 1e-14);
            }
        }
        assert_eq!(regular_ngon(11, p()).unwrap().sides()[0], 32);
        assert_eq!(regular_ngon(3, p()).unwrap().sides(), vec![8, 7, 6, 5, 4, 3]);
    }

    #[test]
    fn cpa_pentagon_to_square() {
        let pent = regular_ngon(5, p()).unwrap().polygon().clone();
        let (_, sq) = cpa(&pent, 1).unwrap();
        let tol = p().tolerance();
        assert!(tol.near(sq.radius(), &(Real::from_i64(2, p()).sqrt() / Real::from_i64(2, p()))));
        assert!(sq.radius() < pent.radius());
        assert!(sq.is_regular());
        let (_, via_rpa) = rpa(&pent).unwrap();
        for (u, v) in sq.vertices().iter().zip(via_rpa.vertices()) {
            assert!(u.approx_eq(v, &tol));
        }
    }

    #[test]
    fn cpa_errors() {
        let sq = unit_square();
        assert_eq!(cpa(&sq, 2).unwrap_err(), CyclicError::TooFewSides { n: 2 });
        assert_eq!(cpa(&sq, 3).unwrap_err(), CyclicError::BadK { k: 3 });
        // Quadrilateral with sides 5, 1, 2, … : first three violate the
        // condition.
        let r = Real::from_f64(2.6, p());
        let c = pt(0.0, 0.0);
        let on = |t: f64| Point::new(r.clone() * Real::from_f64(t, p()).cos(), r.clone() * Real::from_f64(t, p()).sin());
        let chord = |a: f64| 2.0 * (a / 5.2).asin();
        let t0 = -1.4;
        let t1 = t0 + chord(5.0);
        let t2 = t1 + chord(1.0);
        let t3 = t2 + chord(2.0);
        let quad = CyclicPolygon::new(vec![on(t0), on(t1), on(t2), on(t3)], c, r.clone()).unwrap();
        assert!(quad.is_central());
        assert!(matches!(cpa(&quad, 1), Err(CyclicError::ConditionViolated { .. })));
    }
}
