use std::fmt::Write;

use crate::euclid::{Line, Point};
use crate::numerics::{Precision, Real};

#[derive(Clone, Debug)]
enum Element {
    Point(Point),
    Line(Line),
    Polygon(Vec<Point>),
    Label(Point, String),
}

/// Points, lines, polygons and labels rendered in insertion order. The view
/// box is the bounding box of points and polygon vertices plus a 10% margin;
/// lines are clipped to it. The y-axis is flipped so counterclockwise stays
/// counterclockwise on screen.
#[derive(Clone, Debug, Default)]
pub struct SvgScene {
    elements: Vec<Element>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn f6(x: &Real) -> String {
    x.to_fixed(6)
}

impl SvgScene {
    pub fn new() -> SvgScene {
        SvgScene::default()
    }

    pub fn point(&mut self, p: &Point) -> &mut Self {
        self.elements.push(Element::Point(p.clone()));
        self
    }

    pub fn line(&mut self, l: &Line) -> &mut Self {
        self.elements.push(Element::Line(l.clone()));
        self
    }

    pub fn polygon(&mut self, vertices: &[Point]) -> &mut Self {
        self.elements.push(Element::Polygon(vertices.to_vec()));
        self
    }

    pub fn label(&mut self, p: &Point, text: &str) -> &mut Self {
        self.elements.push(Element::Label(p.clone(), text.to_string()));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn precision(&self) -> Precision {
        self.elements
            .iter()
            .find_map(|e| match e {
                Element::Point(p) | Element::Label(p, _) => Some(p.precision()),
                Element::Polygon(v) => v.first().map(Point::precision),
                Element::Line(l) => Some(l.precision()),
            })
            .unwrap_or_default()
    }

    /// `(min_x, min_y, max_x, max_y)` with margin.
    fn bounds(&self) -> (Real, Real, Real, Real) {
        let prec = self.precision();
        let mut pts: Vec<&Point> = Vec::new();
        for e in &self.elements {
            match e {
                Element::Point(p) | Element::Label(p, _) => pts.push(p),
                Element::Polygon(v) => pts.extend(v.iter()),
                Element::Line(_) => {}
            }
        }
        let (mut x0, mut y0, mut x1, mut y1) = match pts.first() {
            Some(p) => (p.x.clone(), p.y.clone(), p.x.clone(), p.y.clone()),
            None => (Real::from_i64(-1, prec), Real::from_i64(-1, prec), Real::one(prec), Real::one(prec)),
        };
        for p in &pts {
            x0 = x0.min(p.x.clone());
            y0 = y0.min(p.y.clone());
            x1 = x1.max(p.x.clone());
            y1 = y1.max(p.y.clone());
        }
        let mut size = (&x1 - &x0).max(&y1 - &y0);
        if size.is_zero() {
            size = Real::one(prec);
        }
        let margin = &size / &Real::from_i64(10, prec);
        (&x0 - &margin, &y0 - &margin, &x1 + &margin, &y1 + &margin)
    }

    /// Segment of `l` inside the box, if any (slab clipping).
    fn clip(l: &Line, b: &(Real, Real, Real, Real)) -> Option<(Point, Point)> {
        let (x0, y0, x1, y1) = b;
        let two = x0.lift_i64(2);
        let mid = Point::new((x0 + x1) / &two, (y0 + y1) / &two);
        let base = l.project(&mid);
        let d = l.direction();
        let big = (x1 - x0) + (y1 - y0);
        let (mut lo, mut hi) = (-big.clone(), big);
        for (p, dp, min, max) in [(&base.x, &d.x, x0, x1), (&base.y, &d.y, y0, y1)] {
            if dp.is_zero() {
                if p < min || p > max {
                    return None;
                }
                continue;
            }
            let t0 = (min - p) / dp;
            let t1 = (max - p) / dp;
            let (a, c) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
            lo = lo.max(a);
            hi = hi.min(c);
        }
        if lo >= hi {
            return None;
        }
        Some((base.add(&d.scale(&lo)), base.add(&d.scale(&hi))))
    }

    pub fn render(&self) -> String {
        let b = self.bounds();
        let (x0, y0, x1, y1) = &b;
        let w = x1 - x0;
        let h = y1 - y0;
        let dot = w.clone().max(h.clone()) / Real::from_i64(100, self.precision());
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
            f6(x0),
            f6(&-y1),
            f6(&w),
            f6(&h)
        );
        for e in &self.elements {
            match e {
                Element::Point(p) => {
                    let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>", f6(&p.x), f6(&-&p.y), f6(&dot));
                }
                Element::Line(l) => {
                    if let Some((p, q)) = Self::clip(l, &b) {
                        let _ = writeln!(
                            s,
                            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>",
                            f6(&p.x),
                            f6(&-&p.y),
                            f6(&q.x),
                            f6(&-&q.y)
                        );
                    }
                }
                Element::Polygon(v) => {
                    let mut d = String::new();
                    for (i, p) in v.iter().enumerate() {
                        let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, f6(&p.x), f6(&-&p.y));
                    }
                    d.push('Z');
                    let _ = writeln!(
                        s,
                        "<path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>"
                    );
                }
                Element::Label(p, text) => {
                    let _ = writeln!(
                        s,
                        "<text x=\"{}\" y=\"{}\" font-size=\"{}\">{}</text>",
                        f6(&(&p.x + &dot)),
                        f6(&-(&p.y + &dot)),
                        f6(&(&dot * &Real::from_i64(4, self.precision()))),
                        escape(text)
                    );
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}
