//! O6: common tangents of two parabolas.
//!
//! A crease `y = m x + k` carries focus `f` onto directrix `a x + b y + c = 0`
//! exactly when
//!
//! ```text
//! e (1 + m²) + 2 (b − a m)(m f.x − f.y + k) = 0,    e = a f.x + b f.y + c.
//! ```
//!
//! The condition is linear in `k`, so eliminating `k` between the two
//! focus/directrix pairs leaves a cubic in the slope `m`. Vertical creases are
//! the root at infinity of that cubic and are checked separately.

use super::roots::{eval, real_roots};
use super::{reflect_point, EuclidError, Line, LineSet, Point};
use crate::numerics::{Precision, Rational, Real};

/// Product of polynomials with ascending coefficients.
fn poly_mul(p: &[Real], q: &[Real]) -> Vec<Real> {
    let zero = p[0].lift_i64(0);
    let mut out = vec![zero; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

/// The `k`-free part `E(m)` and the `k` coefficient `K(m)` of the tangency
/// condition for one focus/directrix pair.
fn tangency(f: &Point, d: &Line) -> (Vec<Real>, Vec<Real>) {
    let two = f.x.lift_i64(2);
    let e = d.signed_distance(f);
    let (a, b) = (d.a(), d.b());
    let e0 = &e - &(&(&two * b) * &f.y);
    let e1 = &(&two * b) * &f.x + &(&two * a) * &f.y;
    let e2 = &e - &(&(&two * a) * &f.x);
    let k0 = &two * b;
    let k1 = -(&two * a);
    (vec![e0, e1, e2], vec![k0, k1])
}

/// Residual of the fold `crease` against both alignments.
fn residual_ok(crease: &Line, p1: &Point, l1: &Line, p2: &Point, l2: &Line) -> bool {
    let tol = crease.tolerance();
    let i1 = reflect_point(p1, crease);
    let i2 = reflect_point(p2, crease);
    l1.contains(&i1, &tol) && l2.contains(&i2, &tol)
}

/// O6: folds placing `p1` onto `l1` and `p2` onto `l2` simultaneously.
///
/// Returns between zero and three creases, each verified by reflecting both
/// points.
pub fn o6(p1: &Point, l1: &Line, p2: &Point, l2: &Line) -> Result<LineSet, EuclidError> {
    let tol = p1.tolerance();
    if l1.contains(p1, &tol) || l2.contains(p2, &tol) {
        return Err(EuclidError::DegenerateParabola);
    }
    let (e1, k1) = tangency(p1, l1);
    let (e2, k2) = tangency(p2, l2);
    let lhs = poly_mul(&e1, &k2);
    let rhs = poly_mul(&e2, &k1);
    let cubic: Vec<Real> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();

    let mut creases = Vec::new();
    for m in real_roots(&cubic) {
        let kv1 = eval(&k1, &m);
        let kv2 = eval(&k2, &m);
        if tol.is_zero(&kv1) && tol.is_zero(&kv2) {
            // Crease perpendicular to both (parallel) directrices: a
            // spurious root of the eliminant.
            continue;
        }
        // Solve for the intercept from the better-conditioned equation.
        let k = if kv1.abs() >= kv2.abs() {
            -(eval(&e1, &m) / kv1)
        } else {
            -(eval(&e2, &m) / kv2)
        };
        let crease = Line::slope_intercept(m, k);
        if residual_ok(&crease, p1, l1, p2, l2) {
            creases.push(crease);
        }
    }

    // Vertical crease x = k sends f to (2k − f.x, f.y).
    let vertical_k = |f: &Point, d: &Line| -> Option<Real> {
        if tol.is_zero(d.a()) {
            return None;
        }
        let two = f.x.lift_i64(2);
        Some((d.a() * &f.x - d.b() * &f.y - d.c()) / (&two * d.a()))
    };
    if let (Some(ka), Some(kb)) = (vertical_k(p1, l1), vertical_k(p2, l2)) {
        if tol.near(&ka, &kb) {
            let crease = Line::vertical(ka);
            if residual_ok(&crease, p1, l1, p2, l2) {
                creases.push(crease);
            }
        }
    }
    Ok(LineSet::from_lines(creases))
}

/// A parabola given by focus and directrix.
pub type Parabola = (Point, Line);

/// The two focus/directrix pairs whose common tangents have slopes solving
/// `m³ + a m + b = 0`: the parabolas `(y − a/2)² = 2 b x` and `y = x²/2`.
///
/// Returns `((focus1, directrix1), (focus2, directrix2))`; the first parabola
/// degenerates when `b = 0`.
pub fn cubic_setup(a: &Rational, b: &Rational, prec: Precision) -> Result<(Parabola, Parabola), EuclidError> {
    use num_traits::Zero;
    if b.is_zero() {
        return Err(EuclidError::DegenerateParabola);
    }
    let half = Rational::new(1.into(), 2.into());
    let f1 = Point::from_rationals(&(b * &half), &(a * &half), prec);
    let d1 = Line::vertical(Real::from_rational(&-(b * &half), prec));
    let f2 = Point::from_rationals(&Rational::zero(), &half, prec);
    let d2 = Line::horizontal(Real::from_rational(&-half, prec));
    Ok(((f1, d1), (f2, d2)))
}
