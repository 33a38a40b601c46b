//! Cyclic polygons: the circumradius solver, the regular and cyclic polygon
//! axioms, the construction of an arbitrary cyclic polygon from two anchor
//! points, and the pyramid whose lateral faces fold onto a base polygon.

mod axioms;
mod pyramid;
mod solve;

pub use axioms::{cpa, max_deviation_from_regular, regular_ngon, rpa, NgonChain, RootOfUnity};
pub use pyramid::{pyramid, Point3, Pyramid};
pub use solve::{circumradius_batch, circumradius_solve, construct_cyclic, Circumradius, CyclicConstruction, OuterBranch};

use thiserror::Error;

use crate::euclid::{o1, EuclidError, Line, LineSet, Point};
use crate::numerics::{Real, Tolerance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclicError {
    #[error("condition 2·max(a) ≤ Σa fails: 2·{max} > {sum}")]
    ConditionViolated { max: String, sum: String },
    #[error("2·max(a) = Σa: the polygon collapses to a segment")]
    DegenerateFlat,
    #[error("side lengths must be positive (side {index})")]
    NonPositiveSide { index: usize },
    #[error("polygon needs at least 3 sides, got {n}")]
    TooFewSides { n: usize },
    #[error("|A2 − A1| = {actual} differs from a1 = {expected}")]
    SideMismatch { expected: String, actual: String },
    #[error("k must be 1 or 2, got {k}")]
    BadK { k: usize },
    #[error("polygon is not regular")]
    NotRegular,
    #[error("polygon is not central")]
    NotCentral,
    #[error("circumradius does not decrease: {from} → {to}")]
    RadiusNotDecreasing { from: String, to: String },
    #[error("apex angle sum is not below 2π")]
    ApexAngleOverflow,
    #[error("largest apex angle is not below the sum of the others: the triangles do not close around the apex")]
    OpenCircuit,
    #[error("side {index} is not shorter than 2R")]
    ChordTooLong { index: usize },
    #[error("vertices are not concyclic, convex and counterclockwise")]
    NotCyclic,
    #[error(transparent)]
    Euclid(#[from] EuclidError),
}

pub(crate) fn short(x: &Real) -> String {
    x.to_sig(12)
}

/// Convex polygon inscribed in a circle, vertices counterclockwise.
#[derive(Clone, Debug)]
pub struct CyclicPolygon {
    vertices: Vec<Point>,
    center: Point,
    radius: Real,
    central: bool,
    boundary: bool,
}

impl CyclicPolygon {
    /// Wraps vertices after checking they are concyclic about `center`,
    /// strictly convex and counterclockwise. Centrality is computed.
    pub fn new(vertices: Vec<Point>, center: Point, radius: Real) -> Result<CyclicPolygon, CyclicError> {
        let n = vertices.len();
        if n < 3 {
            return Err(CyclicError::TooFewSides { n });
        }
        let tol = radius.tolerance();
        if vertices.iter().any(|v| !tol.near(&v.dist(&center), &radius)) {
            return Err(CyclicError::NotCyclic);
        }
        let mut on_edge = false;
        let mut outside = false;
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let c = &vertices[(i + 2) % n];
            let turn = b.sub(a).cross(&c.sub(b));
            if !turn.is_positive() || tol.is_zero(&(&turn / &radius.sqr())) {
                return Err(CyclicError::NotCyclic);
            }
            // Signed distance of the centre to the left of edge a→b.
            let side = b.sub(a).cross(&center.sub(a)) / b.dist(a);
            if tol.is_zero(&(&side / &radius)) {
                on_edge = true;
            } else if side.is_negative() {
                outside = true;
            }
        }
        // Angular order around the centre must wind exactly once.
        let mut total = Real::zero(radius.precision());
        for i in 0..n {
            let u = vertices[i].sub(&center);
            let w = vertices[(i + 1) % n].sub(&center);
            let mut d = Real::atan2(&u.cross(&w), &u.dot(&w));
            if d.is_negative() {
                d = d + Real::pi(radius.precision()) * radius.lift_i64(2);
            }
            total = total + d;
        }
        let two_pi = Real::pi(radius.precision()) * radius.lift_i64(2);
        if !tol.near(&total, &two_pi) {
            return Err(CyclicError::NotCyclic);
        }
        let boundary = on_edge && !outside;
        Ok(CyclicPolygon { vertices, center, radius, central: !on_edge && !outside, boundary })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Option<&Point> {
        self.vertices.get(i)
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &Real {
        &self.radius
    }

    /// Circumcenter strictly interior.
    pub fn is_central(&self) -> bool {
        self.central
    }

    /// Circumcenter on an edge (e.g. right triangles).
    pub fn is_boundary(&self) -> bool {
        self.boundary
    }

    pub fn tolerance(&self) -> Tolerance {
        self.radius.tolerance()
    }

    /// `|A_{i+1} − A_i|`, cyclically.
    pub fn side_lengths(&self) -> Vec<Real> {
        let n = self.len();
        (0..n).map(|i| self.vertices[i].dist(&self.vertices[(i + 1) % n])).collect()
    }

    /// Shoelace area; positive for counterclockwise order.
    pub fn signed_area(&self) -> Real {
        let n = self.len();
        let mut s = Real::zero(self.radius.precision());
        for i in 0..n {
            s = s + self.vertices[i].cross(&self.vertices[(i + 1) % n]);
        }
        s / self.radius.lift_i64(2)
    }

    /// Lines containing the sides.
    pub fn side_lines(&self) -> Result<LineSet, CyclicError> {
        let n = self.len();
        let lines: Result<Vec<Line>, EuclidError> =
            (0..n).map(|i| o1(&self.vertices[i], &self.vertices[(i + 1) % n])).collect();
        Ok(LineSet::from_lines(lines?))
    }

    /// All sides and all centre distances agree with their means.
    pub fn is_regular(&self) -> bool {
        let tol = self.tolerance();
        let n = self.len();
        let sides = self.side_lengths();
        let nn = self.radius.lift_i64(n as i64);
        let mean = sides.iter().fold(self.radius.lift_i64(0), |a, b| a + b) / &nn;
        let centroid = self
            .vertices
            .iter()
            .fold(Point::origin(self.radius.precision()), |a, b| a.add(b))
            .scale(&(self.radius.lift_i64(1) / &nn));
        let dists: Vec<Real> = self.vertices.iter().map(|v| v.dist(&centroid)).collect();
        let dmean = dists.iter().fold(self.radius.lift_i64(0), |a, b| a + b) / &nn;
        sides.iter().all(|s| tol.near(s, &mean)) && dists.iter().all(|d| tol.near(d, &dmean))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Precision;

    #[test]
    fn square_is_central_and_regular() {
        let p = Precision::new(50).unwrap();
        let v = vec![
            Point::from_f64(0.0, 0.0, p),
            Point::from_f64(1.0, 0.0, p),
            Point::from_f64(1.0, 1.0, p),
            Point::from_f64(0.0, 1.0, p),
        ];
        let c = Point::from_f64(0.5, 0.5, p);
        let r = Real::from_f64(0.5, p).sqr().sqrt() * Real::from_i64(2, p).sqrt();
        let sq = CyclicPolygon::new(v.clone(), c.clone(), r.clone()).unwrap();
        assert!(sq.is_central() && !sq.is_boundary() && sq.is_regular());
        assert!(p.tolerance().near(&sq.signed_area(), &Real::one(p)));
        assert_eq!(sq.side_lines().unwrap().len(), 4);
        let mut cw = v;
        cw.reverse();
        assert_eq!(CyclicPolygon::new(cw, c, r).unwrap_err(), CyclicError::NotCyclic);
    }
}
