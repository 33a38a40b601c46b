//! Circumradius of the convex cyclic polygon with given sides, vertex
//! placement, and the two-anchor construction that reaches an arbitrary
//! cyclic polygon through a cyclic polygon axiom.

use num_bigint::BigInt;
use num_traits::One;

use super::axioms::cpa;
use super::{short, CyclicError, CyclicPolygon};
use crate::euclid::{LineSet, Point};
use crate::numerics::{pow10_real, Rational, Real};

/// Solved circumradius with the position of the centre.
#[derive(Clone, Debug)]
pub struct Circumradius {
    pub r: Real,
    /// Centre strictly inside the polygon.
    pub central: bool,
    /// Centre on the longest side (the longest side is a diameter).
    pub boundary: bool,
    /// Index of the (first) longest side.
    pub max_index: usize,
}

/// Largest side index and perimeter after validating positivity and the
/// existence condition `2·max ≤ Σ` (equality is the flat degenerate case).
pub(crate) fn check_sides(a: &[Real]) -> Result<(usize, Real), CyclicError> {
    if a.len() < 3 {
        return Err(CyclicError::TooFewSides { n: a.len() });
    }
    if let Some(index) = a.iter().position(|x| !x.is_positive()) {
        return Err(CyclicError::NonPositiveSide { index });
    }
    let mut m = 0;
    for (i, x) in a.iter().enumerate() {
        if x > &a[m] {
            m = i;
        }
    }
    let sum = a.iter().skip(1).fold(a[0].clone(), |s, x| s + x);
    let twice = &a[m] * &a[m].lift_i64(2);
    let tol = a[m].tolerance();
    if tol.near(&twice, &sum) {
        return Err(CyclicError::DegenerateFlat);
    }
    if twice > sum {
        return Err(CyclicError::ConditionViolated { max: short(&a[m]), sum: short(&sum) });
    }
    Ok((m, sum))
}

/// `asin(a/2r)` and its derivative in `r`, `−a / (r·√(4r² − a²))`.
fn half_angle(a: &Real, r: &Real) -> (Real, Real) {
    let two = r.lift_i64(2);
    let s = a / &(&two * r);
    let root = (&two * r).sqr() - a.sqr();
    let d = if root.is_positive() { -(a / &(r * &root.sqrt())) } else { r.lift_i64(0) };
    (s.asin(), d)
}

/// Closure function and derivative. Central: `Σ asin(a_i/2r) − π`.
/// Non-central: `Σ_{i≠M} asin(a_i/2r) − asin(a_M/2r)`.
fn closure(a: &[Real], m: usize, central: bool, r: &Real) -> (Real, Real) {
    let zero = r.lift_i64(0);
    let (mut f, mut df) = (zero.clone(), zero);
    for (i, x) in a.iter().enumerate() {
        let (v, d) = half_angle(x, r);
        if !central && i == m {
            f = f - v;
            df = df - d;
        } else {
            f = f + v;
            df = df + d;
        }
    }
    if central {
        f = f - Real::pi(r.precision());
    }
    (f, df)
}

/// Bisection to relative width `10^(5 − digits)` followed by a Newton polish
/// kept inside the final bracket. `f(lo)` and `f(hi)` have opposite signs.
fn solve_bracketed(a: &[Real], m: usize, central: bool, mut lo: Real, mut hi: Real) -> Real {
    let prec = lo.precision();
    let slo = closure(a, m, central, &lo).0.signum();
    let two = lo.lift_i64(2);
    let width = pow10_real(5 - prec.digits() as i64, prec);
    while &hi - &lo > &width * &hi {
        let mid = (&lo + &hi) / &two;
        let s = closure(a, m, central, &mid).0.signum();
        if s == 0 {
            return mid;
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut r = (&lo + &hi) / &two;
    for _ in 0..3 {
        let (f, df) = closure(a, m, central, &r);
        if df.is_zero() {
            break;
        }
        let next = &r - &(f / df);
        if next <= lo || next >= hi {
            break;
        }
        r = next;
    }
    r
}

/// Solves many independent side lists, in parallel when the `parallel`
/// feature is on; results keep input order.
pub fn circumradius_batch(sides: &[Vec<Real>]) -> Vec<Result<Circumradius, CyclicError>> {
    crate::parallel::map(sides, |a| circumradius_solve(a))
}

/// Circumradius of the unique convex cyclic polygon with sides `a` (in order).
pub fn circumradius_solve(a: &[Real]) -> Result<Circumradius, CyclicError> {
    let (m, _) = check_sides(a)?;
    let prec = a[m].precision();
    let tol = a[m].tolerance();
    let lo = &a[m] / &a[m].lift_i64(2);
    // At r = max/2 the longest side is a diameter; the sign of the central
    // closure there decides where the centre lies.
    let f0 = closure(a, m, true, &lo).0;
    if tol.is_zero(&f0) {
        return Ok(Circumradius { r: lo, central: false, boundary: true, max_index: m });
    }
    let central = f0.is_positive();
    let sign_lo = closure(a, m, central, &lo).0.signum();
    let mut hi = a[m].clone();
    let mut guard = 0;
    while closure(a, m, central, &hi).0.signum() == sign_lo {
        hi = &hi * &hi.lift_i64(2);
        guard += 1;
        assert!(guard < 4 * prec.bits(), "closure bracket not found");
    }
    let r = solve_bracketed(a, m, central, lo, hi);
    Ok(Circumradius { r, central, boundary: false, max_index: m })
}

/// Unit complex number rotating by the central angle `2·asin(s)`.
fn chord_rotation(s: &Real) -> Point {
    let one = s.lift_i64(1);
    let two = s.lift_i64(2);
    let c = &one - &(&two * &s.sqr());
    let sn = &two * s * (&one - &s.sqr()).sqrt();
    Point::new(c, sn)
}

/// Walks chords `a` counterclockwise around the circle of radius `r` through
/// `a1` and `a2`, returning `A_1, …, A_{n+1}` and the centre. The centre is
/// left of `a1 → a2` unless `circ` says the first side is the longest side of
/// a non-central polygon.
fn walk(a1: &Point, a2: &Point, a: &[Real], r: &Real, circ: Option<&Circumradius>) -> (Vec<Point>, Point) {
    let two = r.lift_i64(2);
    let chord = a2.sub(a1);
    let len = chord.norm();
    let left = Point::new(-(&chord.y / &len), &chord.x / &len);
    let mut h = (r.sqr() - (&len / &two).sqr()).sqrt();
    let noncentral = circ.is_some_and(|c| !c.central && !c.boundary);
    let m = circ.map_or(usize::MAX, |c| c.max_index);
    if noncentral && m == 0 {
        h = -h;
    }
    let center = a1.midpoint(a2).add(&left.scale(&h));
    let mut rot: Vec<Point> = a.iter().map(|x| chord_rotation(&(x / &(&two * r)))).collect();
    if noncentral {
        // The longest side spans the reflex arc: 2π minus the others.
        let others = rot
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != m)
            .fold(Point::new(r.lift_i64(1), r.lift_i64(0)), |acc, (_, w)| acc.complex_mul(w));
        rot[m] = Point::new(others.x, -others.y);
    }
    let mut verts = vec![a1.clone(), a2.clone()];
    let mut cur = a2.clone();
    for w in &rot[1..] {
        cur = center.add(&w.complex_mul(&cur.sub(&center)));
        verts.push(cur.clone());
    }
    (verts, center)
}

/// Vertices of `Cy(a; a1, a2)` on a circle of radius `r`, its centre, and the
/// closure gap `|A_{n+1} − A_1|`.
pub(crate) fn place(a1: &Point, a2: &Point, a: &[Real], r: &Real, circ: Option<&Circumradius>) -> (Vec<Point>, Point, Real) {
    let (mut verts, center) = walk(a1, a2, a, r, circ);
    let closing = verts.pop().expect("n + 1 points");
    let gap = closing.dist(a1);
    (verts, center, gap)
}

/// The cyclic polygon `Cy(a; A1, A2)` solved directly.
pub(crate) fn cyclic_direct(a1: &Point, a2: &Point, a: &[Real]) -> Result<(CyclicPolygon, Circumradius), CyclicError> {
    let circ = circumradius_solve(a)?;
    let actual = a1.dist(a2);
    if !a[0].tolerance().near(&actual, &a[0]) {
        return Err(CyclicError::SideMismatch { expected: short(&a[0]), actual: short(&actual) });
    }
    let (verts, center, _) = place(a1, a2, a, &circ.r, Some(&circ));
    let poly = CyclicPolygon::new(verts, center, circ.r.clone())?;
    Ok((poly, circ))
}

/// Which cyclic polygon axiom finishes the construction.
#[derive(Clone, Debug)]
pub enum OuterBranch {
    /// The placed vertices already span more than a half turn.
    Cpa1,
    /// The antipode of `A2` is added to make the outer polygon central.
    Cpa2 { antipode: Point },
}

impl OuterBranch {
    pub fn k(&self) -> usize {
        match self {
            OuterBranch::Cpa1 => 1,
            OuterBranch::Cpa2 { .. } => 2,
        }
    }
}

/// Result of [`construct_cyclic`] with the intermediate objects.
#[derive(Clone, Debug)]
pub struct CyclicConstruction {
    pub polygon: CyclicPolygon,
    pub circumradius: Circumradius,
    /// Rational radius of the auxiliary circle, `m/8 > 1.05·r`.
    pub outer_radius: Rational,
    pub outer_center: Point,
    /// `A_3, …, A_{n+1}` on the auxiliary circle.
    pub placed: Vec<Point>,
    /// Arc from `A_1` through the placed vertices to `A_{n+1}`.
    pub spanned_angle: Real,
    pub branch: OuterBranch,
    /// The central polygon the axiom is applied to.
    pub outer: CyclicPolygon,
    /// Side lines folded by the axiom.
    pub lines: LineSet,
}

/// Smallest `m/8` strictly greater than `1.05·r`.
fn outer_radius(r: &Real) -> Rational {
    let scaled = (r * &r.lift_rational(&Rational::new(BigInt::from(21), BigInt::from(20)))) * r.lift_i64(8);
    let m = scaled.to_rational().floor() + Rational::one();
    m / Rational::from_integer(BigInt::from(8))
}

/// Builds `Cy(a_1, …, a_n; A1, A2)`: place the remaining sides on a rational
/// circle larger than the circumcircle, close it to a central polygon (adding
/// the antipode of `A2` when the placed arc is at most a half turn), and apply
/// the cyclic polygon axiom with `k = 1` or `2`.
pub fn construct_cyclic(a1: &Point, a2: &Point, a: &[Real]) -> Result<CyclicConstruction, CyclicError> {
    let circ = circumradius_solve(a)?;
    let actual = a1.dist(a2);
    if !a[0].tolerance().near(&actual, &a[0]) {
        return Err(CyclicError::SideMismatch { expected: short(&a[0]), actual: short(&actual) });
    }
    let prec = circ.r.precision();
    let big_r = outer_radius(&circ.r);
    let rr = Real::from_rational(&big_r, prec);
    let (ring, center) = walk(a1, a2, a, &rr, None);
    let two = rr.lift_i64(2);
    let spanned = a.iter().fold(rr.lift_i64(0), |s, x| s + &two * (x / &(&two * &rr)).asin());
    let pi = Real::pi(prec);
    let tol = rr.tolerance();
    let branch = if spanned > pi && !tol.near(&spanned, &pi) {
        OuterBranch::Cpa1
    } else {
        OuterBranch::Cpa2 { antipode: center.scale(&two).sub(a2) }
    };
    let mut outer_vertices = ring.clone();
    if let OuterBranch::Cpa2 { antipode } = &branch {
        outer_vertices.push(antipode.clone());
    }
    let outer = CyclicPolygon::new(outer_vertices, center.clone(), rr)?;
    let (lines, polygon) = cpa(&outer, branch.k())?;
    Ok(CyclicConstruction {
        polygon,
        circumradius: circ,
        outer_radius: big_r,
        outer_center: center,
        placed: ring[2..].to_vec(),
        spanned_angle: spanned,
        branch,
        outer,
        lines,
    })
}
