//! Plane carrier and the single-fold axioms O1–O7 plus line intersection.
//!
//! Lines are stored as `ax + by + c = 0` with `a² + b² = 1` and a canonical
//! sign (`a > 0`, or `a = 0` and `b > 0`), so a geometric line has one
//! representation. Axioms with several solutions return a [`LineSet`] in a
//! fixed order (direction angle in `[0, π)`, then offset); choosing among them
//! is left to the caller.

mod fold6;
pub(crate) mod roots;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::numerics::{Precision, Rational, Real, Tolerance};

pub use fold6::{cubic_setup, o6, Parabola};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EuclidError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines coincide")]
    CoincidentLines,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("focus lies on its directrix")]
    DegenerateParabola,
}

#[derive(Clone, PartialEq)]
pub struct Point {
    pub x: Real,
    pub y: Real,
}

impl Point {
    pub fn new(x: Real, y: Real) -> Point {
        Point { x, y }
    }

    pub fn from_rationals(x: &Rational, y: &Rational, prec: Precision) -> Point {
        Point::new(Real::from_rational(x, prec), Real::from_rational(y, prec))
    }

    pub fn from_f64(x: f64, y: f64, prec: Precision) -> Point {
        Point::new(Real::from_f64(x, prec), Real::from_f64(y, prec))
    }

    pub fn origin(prec: Precision) -> Point {
        Point::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn precision(&self) -> Precision {
        self.x.precision().max(self.y.precision())
    }

    pub fn tolerance(&self) -> Tolerance {
        self.precision().tolerance()
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &Real) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point) -> Real {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the planar cross product.
    pub fn cross(&self, o: &Point) -> Real {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm(&self) -> Real {
        Real::hypot(&self.x, &self.y)
    }

    pub fn dist(&self, o: &Point) -> Real {
        self.sub(o).norm()
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        let two = self.x.lift_i64(2);
        Point::new((&self.x + &o.x) / &two, (&self.y + &o.y) / &two)
    }

    /// Product with another point read as complex numbers.
    pub fn complex_mul(&self, o: &Point) -> Point {
        Point::new(&self.x * &o.x - &self.y * &o.y, &self.x * &o.y + &self.y * &o.x)
    }

    pub fn complex_div(&self, o: &Point) -> Point {
        let d = o.dot(o);
        Point::new(
            (&self.x * &o.x + &self.y * &o.y) / &d,
            (&self.y * &o.x - &self.x * &o.y) / &d,
        )
    }

    /// Polar angle in `(-π, π]`.
    pub fn angle(&self) -> Real {
        Real::atan2(&self.y, &self.x)
    }

    pub fn approx_eq(&self, o: &Point, tol: &Tolerance) -> bool {
        tol.near(&self.x, &o.x) && tol.near(&self.y, &o.y)
    }

    pub fn identical(&self, o: &Point) -> bool {
        self.x.identical(&o.x) && self.y.identical(&o.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `ax + by + c = 0`, normalized and sign-canonical.
#[derive(Clone, PartialEq)]
pub struct Line {
    a: Real,
    b: Real,
    c: Real,
}

impl Line {
    /// Normalizes an arbitrary nonzero `(a, b, c)`. Panics when `a = b = 0`.
    pub fn new(a: Real, b: Real, c: Real) -> Line {
        let n = Real::hypot(&a, &b);
        assert!(!n.is_zero(), "degenerate line coefficients");
        let (a, b, c) = (&a / &n, &b / &n, &c / &n);
        if a.is_positive() || (a.is_zero() && b.is_positive()) {
            Line { a, b, c }
        } else {
            Line { a: -a, b: -b, c: -c }
        }
    }

    pub fn a(&self) -> &Real {
        &self.a
    }

    pub fn b(&self) -> &Real {
        &self.b
    }

    pub fn c(&self) -> &Real {
        &self.c
    }

    /// Horizontal line `y = k`.
    pub fn horizontal(k: Real) -> Line {
        let p = k.precision();
        Line::new(Real::zero(p), Real::one(p), -k)
    }

    /// Vertical line `x = k`.
    pub fn vertical(k: Real) -> Line {
        let p = k.precision();
        Line::new(Real::one(p), Real::zero(p), -k)
    }

    /// `y = m x + k`.
    pub fn slope_intercept(m: Real, k: Real) -> Line {
        let p = m.precision();
        Line::new(m, Real::from_i64(-1, p), k)
    }

    pub fn precision(&self) -> Precision {
        self.a.precision().max(self.b.precision()).max(self.c.precision())
    }

    pub fn tolerance(&self) -> Tolerance {
        self.precision().tolerance()
    }

    pub fn normal(&self) -> Point {
        Point::new(self.a.clone(), self.b.clone())
    }

    /// Unit direction `(-b, a)`.
    pub fn direction(&self) -> Point {
        Point::new(-&self.b, self.a.clone())
    }

    /// Signed distance of `p` (positive on the side the normal points to).
    pub fn signed_distance(&self, p: &Point) -> Real {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn distance(&self, p: &Point) -> Real {
        self.signed_distance(p).abs()
    }

    pub fn contains(&self, p: &Point, tol: &Tolerance) -> bool {
        let scale = p.x.abs().max(p.y.abs()) + p.x.lift_i64(1);
        self.distance(p) <= &tol.eps_abs * &scale
    }

    /// Slope `-a/b`, absent for vertical lines.
    pub fn slope(&self, tol: &Tolerance) -> Option<Real> {
        if tol.is_zero(&self.b) {
            None
        } else {
            Some(-(&self.a / &self.b))
        }
    }

    /// Direction angle in `[0, π)`.
    pub fn direction_angle(&self) -> Real {
        let t = Real::atan2(&self.a, &-&self.b);
        let pi = Real::pi(t.precision());
        if t >= pi {
            t - pi
        } else {
            t
        }
    }

    pub fn is_parallel(&self, o: &Line, tol: &Tolerance) -> bool {
        tol.is_zero(&(&self.a * &o.b - &o.a * &self.b))
    }

    pub fn approx_eq(&self, o: &Line, tol: &Tolerance) -> bool {
        let same = |s: &Real| tol.near(&self.a, &(s * &o.a)) && tol.near(&self.b, &(s * &o.b)) && tol.near(&self.c, &(s * &o.c));
        let one = self.a.lift_i64(1);
        same(&one) || same(&-one)
    }

    pub fn identical(&self, o: &Line) -> bool {
        self.a.identical(&o.a) && self.b.identical(&o.b) && self.c.identical(&o.c)
    }

    pub fn project(&self, p: &Point) -> Point {
        let s = self.signed_distance(p);
        p.sub(&self.normal().scale(&s))
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}x + {:?}y + {:?} = 0]", self.a, self.b, self.c)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {} = 0", self.a, self.b, self.c)
    }
}

/// Ordered, duplicate-free set of lines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LineSet {
    lines: Vec<Line>,
}

impl LineSet {
    pub fn empty() -> LineSet {
        LineSet { lines: Vec::new() }
    }

    /// Sorts by direction angle, then offset, and drops near-duplicates.
    pub fn from_lines(lines: impl IntoIterator<Item = Line>) -> LineSet {
        let mut keyed: Vec<(Real, Line)> = Vec::new();
        for l in lines {
            let tol = l.tolerance();
            if keyed.iter().any(|(_, k)| k.approx_eq(&l, &tol)) {
                continue;
            }
            keyed.push((l.direction_angle(), l));
        }
        keyed.sort_by(|(ta, la), (tb, lb)| {
            let tol = la.tolerance();
            if tol.near(ta, tb) {
                la.c.partial_cmp(&lb.c).unwrap_or(Ordering::Equal)
            } else {
                ta.partial_cmp(tb).unwrap_or(Ordering::Equal)
            }
        });
        LineSet { lines: keyed.into_iter().map(|(_, l)| l).collect() }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Line> {
        self.lines.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Line> {
        self.lines.iter()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }
}

impl<'a> IntoIterator for &'a LineSet {
    type Item = &'a Line;
    type IntoIter = std::slice::Iter<'a, Line>;

    fn into_iter(self) -> Self::IntoIter {
        self.lines.iter()
    }
}

fn distinct(p: &Point, q: &Point) -> Result<(), EuclidError> {
    let tol = p.tolerance();
    if p.approx_eq(q, &tol) {
        Err(EuclidError::CoincidentPoints)
    } else {
        Ok(())
    }
}

/// O1: the line through two points.
pub fn o1(p: &Point, q: &Point) -> Result<Line, EuclidError> {
    distinct(p, q)?;
    let d = q.sub(p);
    // Offset taken at the midpoint so that o1(p, q) and o1(q, p) agree bitwise.
    let mid = p.add(q);
    let two = p.x.lift_i64(2);
    let c = (&d.y * &mid.x - &d.x * &mid.y) / &two;
    Ok(Line::new(-&d.y, d.x, c))
}

/// O2: the perpendicular bisector of two points.
pub fn o2(p: &Point, q: &Point) -> Result<Line, EuclidError> {
    distinct(p, q)?;
    let n = q.sub(p);
    let m = p.midpoint(q);
    let c = -n.dot(&m);
    Ok(Line::new(n.x, n.y, c))
}

/// O3: the bisectors of the angle between two lines; the midline when they
/// are parallel.
pub fn o3(l: &Line, m: &Line) -> Result<LineSet, EuclidError> {
    let tol = l.tolerance().clone();
    if l.approx_eq(m, &tol) {
        return Err(EuclidError::CoincidentLines);
    }
    if l.is_parallel(m, &tol) {
        // Canonical normals of parallel lines agree up to sign.
        let s = if (&l.a * &m.a + &l.b * &m.b).is_negative() { -1 } else { 1 };
        let s = l.a.lift_i64(s);
        let two = l.a.lift_i64(2);
        let c = (&l.c + &(&s * &m.c)) / &two;
        return Ok(LineSet::from_lines([Line::new(l.a.clone(), l.b.clone(), c)]));
    }
    let plus = Line::new(&l.a + &m.a, &l.b + &m.b, &l.c + &m.c);
    let minus = Line::new(&l.a - &m.a, &l.b - &m.b, &l.c - &m.c);
    Ok(LineSet::from_lines([plus, minus]))
}

/// O4: the perpendicular to `l` through `p`.
pub fn o4(p: &Point, l: &Line) -> Line {
    let d = l.direction();
    let c = -d.dot(p);
    Line::new(d.x, d.y, c)
}

/// O5: folds through `q` that carry `p` onto `l`.
///
/// The image of `p` lies on both `l` and the circle about `q` through `p`;
/// each such image yields the perpendicular bisector of `p` and its image.
/// When `p = q` the fold is undetermined and the set is empty.
pub fn o5(p: &Point, l: &Line, q: &Point) -> LineSet {
    let tol = p.tolerance();
    if p.approx_eq(q, &tol) {
        return LineSet::empty();
    }
    let radius = p.dist(q);
    let s = l.signed_distance(q);
    let slack = &tol.eps_abs * &(radius.clone() + radius.lift_i64(1));
    if s.abs() > &radius + &slack {
        return LineSet::empty();
    }
    let foot = l.project(q);
    let h2 = radius.sqr() - s.sqr();
    let h = if h2.is_negative() { h2.lift_i64(0) } else { h2.sqrt() };
    let dir = l.direction();
    let images = [foot.add(&dir.scale(&h)), foot.sub(&dir.scale(&h))];
    let mut out = Vec::new();
    for img in &images {
        if img.approx_eq(p, &tol) {
            // p already lies on l: any fold through p keeps it there.
            if let Ok(line) = o1(q, p) {
                out.push(line);
            }
        } else if let Ok(line) = o2(p, img) {
            out.push(line);
        }
    }
    LineSet::from_lines(out)
}

/// O7: the fold perpendicular to `l2` that carries `p` onto `l1`.
pub fn o7(p: &Point, l1: &Line, l2: &Line) -> LineSet {
    let tol = p.tolerance();
    // The crease normal is the direction of l2, so p moves along it.
    let n = l2.direction();
    let along = l1.normal().dot(&n);
    let off = l1.signed_distance(p);
    let t = if tol.is_zero(&along) {
        if l1.contains(p, &tol) {
            off.lift_i64(0)
        } else {
            return LineSet::empty();
        }
    } else {
        -(&off / &along)
    };
    // Reflection across n·x + c = 0 moves p by -2(n·p + c) n = t n.
    let two = t.lift_i64(2);
    let c = -n.dot(p) - &t / &two;
    LineSet::from_lines([Line::new(n.x, n.y, c)])
}

/// LI: intersection of two non-parallel lines.
pub fn li(l: &Line, m: &Line) -> Result<Point, EuclidError> {
    let tol = l.tolerance();
    let det = &l.a * &m.b - &m.a * &l.b;
    if tol.is_zero(&det) {
        return Err(EuclidError::ParallelLines);
    }
    let x = (&l.b * &m.c - &m.b * &l.c) / &det;
    let y = (&m.a * &l.c - &l.a * &m.c) / &det;
    Ok(Point::new(x, y))
}

/// Mirror image of `p` across `l`.
pub fn reflect_point(p: &Point, l: &Line) -> Point {
    let s = l.signed_distance(p);
    let two = s.lift_i64(2);
    p.sub(&l.normal().scale(&(&two * &s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p50() -> Precision {
        Precision::new(50).unwrap()
    }

    fn pt(x: f64, y: f64) -> Point {
        Point::from_f64(x, y, p50())
    }

    fn r(x: f64) -> Real {
        Real::from_f64(x, p50())
    }

    /// `a x + b y + c = 0` normalized by hand for comparison.
    fn line(a: f64, b: f64, c: f64) -> Line {
        Line::new(r(a), r(b), r(c))
    }

    fn tol() -> Tolerance {
        p50().tolerance()
    }

    fn assert_line(got: &Line, want: &Line) {
        assert!(got.approx_eq(want, &tol()), "got {got:?}, want {want:?}");
    }

    #[test]
    fn o1_examples() {
        assert_line(&o1(&pt(0., 0.), &pt(1., 0.)).unwrap(), &Line::horizontal(r(0.)));
        assert_line(&o1(&pt(0., 0.), &pt(0., 1.)).unwrap(), &Line::vertical(r(0.)));
        assert_line(&o1(&pt(0., 0.), &pt(1., 1.)).unwrap(), &line(1., -1., 0.));
        assert_eq!(o1(&pt(1., 1.), &pt(1., 1.)), Err(EuclidError::CoincidentPoints));
    }

    #[test]
    fn o1_is_symmetric_bitwise() {
        let p = Point::new(r(0.3), Real::from_i64(2, p50()).sqrt());
        let q = Point::new(r(-1.7), Real::pi(p50()));
        assert!(o1(&p, &q).unwrap().identical(&o1(&q, &p).unwrap()));
    }

    #[test]
    fn o2_examples() {
        assert_line(&o2(&pt(0., 0.), &pt(2., 0.)).unwrap(), &Line::vertical(r(1.)));
        assert_line(&o2(&pt(0., 0.), &pt(0., 2.)).unwrap(), &Line::horizontal(r(1.)));
        assert_line(&o2(&pt(0., 0.), &pt(2., 2.)).unwrap(), &line(1., 1., -2.));
        assert_eq!(o2(&pt(0., 0.), &pt(0., 0.)), Err(EuclidError::CoincidentPoints));
    }

    #[test]
    fn o3_examples() {
        let set = o3(&Line::horizontal(r(0.)), &Line::vertical(r(0.))).unwrap();
        assert_eq!(set.len(), 2);
        assert_line(set.get(0).unwrap(), &line(1., -1., 0.));
        assert_line(set.get(1).unwrap(), &line(1., 1., 0.));

        let set = o3(&Line::horizontal(r(0.)), &Line::horizontal(r(2.))).unwrap();
        assert_eq!(set.len(), 1);
        assert_line(set.get(0).unwrap(), &Line::horizontal(r(1.)));

        // Half-angle oracle: tan(π/8) = √2 − 1.
        let set = o3(&Line::horizontal(r(0.)), &line(1., -1., 0.)).unwrap();
        let t = tol();
        let want = Real::from_i64(2, p50()).sqrt() - Real::one(p50());
        assert!(set.iter().any(|l| l.slope(&t).is_some_and(|m| t.near(&m, &want))));

        let h = Line::horizontal(r(3.));
        assert_eq!(o3(&h, &h.clone()), Err(EuclidError::CoincidentLines));
    }

    #[test]
    fn o4_examples() {
        assert_line(&o4(&pt(1., 1.), &Line::horizontal(r(0.))), &Line::vertical(r(1.)));
        assert_line(&o4(&pt(0., 0.), &Line::vertical(r(5.))), &Line::horizontal(r(0.)));
        assert_line(&o4(&pt(0., 0.), &line(1., -1., 0.)), &line(1., 1., 0.));
    }

    #[test]
    fn o5_examples() {
        let x_axis = Line::horizontal(r(0.));
        let set = o5(&pt(0., 2.), &x_axis, &pt(0., 0.));
        assert_eq!(set.len(), 2);
        assert_line(set.get(0).unwrap(), &line(1., -1., 0.));
        assert_line(set.get(1).unwrap(), &line(1., 1., 0.));
        // Reflection oracle: images are (±2, 0).
        for l in &set {
            let img = reflect_point(&pt(0., 2.), l);
            assert!(x_axis.contains(&img, &tol()));
            assert!(tol().near(&img.x.abs(), &r(2.)));
        }

        // p on l: the line through q and p is among the folds.
        let set = o5(&pt(3., 0.), &x_axis, &pt(1., 1.));
        let through = o1(&pt(1., 1.), &pt(3., 0.)).unwrap();
        assert!(set.iter().any(|l| l.approx_eq(&through, &tol())));

        // Circle about q through p misses l.
        assert!(o5(&pt(0., 2.), &x_axis, &pt(0., 3.)).is_empty());
    }

    #[test]
    fn o5_tangent_circle_gives_one_fold() {
        // q = (0,1), p = (1,1): radius 1, tangent to y = 0 at (0,0).
        let set = o5(&pt(1., 1.), &Line::horizontal(r(0.)), &pt(0., 1.));
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn o7_examples() {
        let set = o7(&pt(0., 1.), &line(1., -1., 0.), &Line::horizontal(r(0.)));
        assert_eq!(set.len(), 1);
        assert_line(set.get(0).unwrap(), &Line::vertical(r(0.5)));

        // p on l1.
        let set = o7(&pt(2., 2.), &line(1., -1., 0.), &Line::horizontal(r(0.)));
        assert_line(set.get(0).unwrap(), &Line::vertical(r(2.)));

        // l1 parallel to l2: p travels parallel to l1 and never reaches it.
        assert!(o7(&pt(0., 1.), &Line::horizontal(r(3.)), &Line::horizontal(r(0.))).is_empty());
        // l1 perpendicular to l2 is an ordinary case.
        let set = o7(&pt(0., 1.), &Line::vertical(r(3.)), &Line::horizontal(r(0.)));
        assert_line(set.get(0).unwrap(), &Line::vertical(r(1.5)));
    }

    #[test]
    fn li_examples() {
        let p = li(&line(1., -1., 0.), &line(1., 1., -2.)).unwrap();
        assert!(p.approx_eq(&pt(1., 1.), &tol()));
        let p = li(&Line::vertical(r(0.)), &Line::horizontal(r(0.))).unwrap();
        assert!(p.approx_eq(&pt(0., 0.), &tol()));
        assert_eq!(
            li(&Line::horizontal(r(0.)), &Line::horizontal(r(1.))),
            Err(EuclidError::ParallelLines)
        );
    }

    #[test]
    fn reflect_examples() {
        let t = tol();
        assert!(reflect_point(&pt(0., 1.), &Line::horizontal(r(0.))).approx_eq(&pt(0., -1.), &t));
        assert!(reflect_point(&pt(4., 0.), &Line::horizontal(r(0.))).approx_eq(&pt(4., 0.), &t));
        assert!(reflect_point(&pt(2., 0.), &line(1., -1., 0.)).approx_eq(&pt(0., 2.), &t));
    }

    #[test]
    fn canonical_sign() {
        let l = line(-2., 0., 4.);
        assert!(l.a().is_positive());
        assert!(tol().near(l.c(), &r(-2.)));
        let h = line(0., -3., 3.);
        assert!(h.b().is_positive());
        assert!(tol().near(h.c(), &r(-1.)));
    }

    #[test]
    fn rational_points() {
        let third = num_rational::BigRational::new(BigInt::from(1), BigInt::from(3));
        let p = Point::from_rationals(&third, &third, p50());
        assert!(Line::new(r(1.), r(-1.), r(0.)).contains(&p, &tol()));
    }
}
