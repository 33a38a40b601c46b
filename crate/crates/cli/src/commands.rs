//! Subcommand implementations. Each returns a report whose `Display` is what
//! the binary prints; files are written only after the whole computation
//! succeeded.

use std::fmt;
use std::path::Path;

use num_traits::{Signed, Zero};
use origami_core::algebra::{
    eisenstein, irreducible_over_q, isolate_real_roots, sp_criterion, sturm_count, Bound, Certificate, GaloisCertificate,
    GaloisKind, IrreducibilityVerdict, QPoly, RootIsolation, Status,
};
use origami_core::cyclic::{
    construct_cyclic, max_deviation_from_regular, pyramid, regular_ngon, CyclicConstruction, OuterBranch, NgonChain, Pyramid,
};
use origami_core::emit::{obj_from_pyramid, ObjMesh, SvgScene};
use origami_core::euclid::{cubic_setup, o6, Point};
use origami_core::numerics::{parse_rational, Precision, Rational, Real};
use origami_core::script::{self, ConstructionState};

use crate::write_atomic;
use crate::CliError;

fn sig(x: &Real) -> String {
    x.to_sig(12)
}

fn pt(p: &Point) -> String {
    format!("({}, {})", sig(&p.x), sig(&p.y))
}

/// Parses `a1,a2,…` into exact rationals.
pub fn parse_sides(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(|e| CliError::Usage(format!("bad side length `{}`: {e}", s.trim()))))
        .collect()
}

pub fn parse_number(text: &str) -> Result<Rational, CliError> {
    parse_rational(text.trim()).map_err(|e| CliError::Usage(format!("bad number `{text}`: {e}")))
}

fn reals(q: &[Rational], prec: Precision) -> Vec<Real> {
    q.iter().map(|x| Real::from_rational(x, prec)).collect()
}

// ---- run ----

pub struct RunReport {
    pub state: ConstructionState,
    pub show_trace: bool,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in self.state.bindings() {
            writeln!(f, "{name} = {}", v.summary())?;
        }
        for e in self.state.emissions() {
            writeln!(f, "wrote {}", e.path)?;
        }
        if self.show_trace {
            writeln!(f, "trace ({} steps):", self.state.trace().steps.len())?;
            write!(f, "{}", self.state.trace())?;
        }
        Ok(())
    }
}

/// Parses and executes a script; emitted paths are resolved against the
/// script's directory.
pub fn run(path: &Path, show_trace: bool, prec: Precision) -> Result<RunReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed = script::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let state = script::execute(&parsed, prec).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    for e in state.emissions() {
        write_atomic(&base.join(&e.path), &e.content)?;
    }
    Ok(RunReport { state, show_trace })
}

// ---- cyclic ----

pub struct CyclicReport {
    pub sides: Vec<Rational>,
    pub construction: CyclicConstruction,
    /// `|A3 − A1|`.
    pub d: Real,
}

impl fmt::Display for CyclicReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.construction;
        let sides: Vec<String> = self.sides.iter().map(|s| s.to_string()).collect();
        writeln!(f, "sides    = {}", sides.join(", "))?;
        writeln!(f, "r        = {}", sig(&c.circumradius.r))?;
        writeln!(f, "central  = {}", c.circumradius.central)?;
        writeln!(f, "boundary = {}", c.circumradius.boundary)?;
        writeln!(f, "center   = {}", pt(c.polygon.center()))?;
        for (i, v) in c.polygon.vertices().iter().enumerate() {
            writeln!(f, "A{:<7} = {}", i + 1, pt(v))?;
        }
        writeln!(f, "d        = {}", sig(&self.d))?;
        let branch = match &c.branch {
            OuterBranch::Cpa1 => "CPA k=1".to_string(),
            OuterBranch::Cpa2 { antipode } => format!("CPA k=2, antipode {}", pt(antipode)),
        };
        writeln!(f, "outer R  = {} ({branch})", c.outer_radius)
    }
}

pub fn cyclic(sides: &[Rational], svg: Option<&Path>, prec: Precision) -> Result<CyclicReport, CliError> {
    let a = reals(sides, prec);
    let first = a.first().cloned().unwrap_or_else(|| Real::zero(prec));
    let construction = construct_cyclic(&Point::origin(prec), &Point::new(first, Real::zero(prec)), &a)?;
    let v = construction.polygon.vertices();
    let d = v[0].dist(&v[2]);
    if let Some(path) = svg {
        let mut scene = SvgScene::new();
        for l in construction.lines.iter() {
            scene.line(l);
        }
        scene.polygon(v);
        for (i, p) in v.iter().enumerate() {
            scene.point(p).label(p, &format!("A{}", i + 1));
        }
        scene.point(construction.polygon.center());
        write_atomic(path, &scene.render())?;
    }
    Ok(CyclicReport { sides: sides.to_vec(), construction, d })
}

// ---- pyramid ----

pub struct PyramidReport {
    pub pyramid: Pyramid,
    pub mesh: ObjMesh,
}

impl fmt::Display for PyramidReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.pyramid;
        writeln!(f, "lateral edge R    = {}", sig(&p.lateral_edge))?;
        writeln!(f, "base circumradius = {}", sig(&p.base_circumradius))?;
        writeln!(f, "apex height       = {}", sig(&p.apex.z))?;
        writeln!(f, "invariant residual= {}", sig(&p.invariant_residual()))?;
        writeln!(f, "watertight        = {}", self.mesh.is_watertight())?;
        for (i, b) in p.base.iter().enumerate() {
            writeln!(f, "B{:<16} = ({}, {}, {})", i + 1, sig(&b.x), sig(&b.y), sig(&b.z))?;
        }
        writeln!(f, "apex              = ({}, {}, {})", sig(&p.apex.x), sig(&p.apex.y), sig(&p.apex.z))
    }
}

pub fn pyramid_cmd(big_r: &Rational, sides: &[Rational], obj: Option<&Path>, prec: Precision) -> Result<PyramidReport, CliError> {
    let pyramid = pyramid(&Real::from_rational(big_r, prec), &reals(sides, prec))?;
    let mesh = obj_from_pyramid(&pyramid);
    if !mesh.is_watertight() {
        return Err(CliError::Runtime("pyramid mesh is not watertight".into()));
    }
    if let Some(path) = obj {
        write_atomic(path, &mesh.render())?;
    }
    Ok(PyramidReport { pyramid, mesh })
}

// ---- poly ----

pub struct PolyReport {
    pub poly: QPoly,
    pub degree: usize,
    pub real_roots: usize,
    pub isolation: RootIsolation,
    pub roots: Vec<Real>,
    pub eisenstein: Option<u64>,
    pub verdict: IrreducibilityVerdict,
    pub galois: GaloisCertificate,
}

fn witness(c: &Option<Certificate>) -> String {
    match c {
        None => "none".into(),
        Some(Certificate::Linear) => "degree 1".into(),
        Some(Certificate::NoRationalRoot) => "degree ≤ 3 without rational roots".into(),
        Some(Certificate::Eisenstein { p }) => format!("Eisenstein at p = {p}"),
        Some(Certificate::ModP { p }) => format!("irreducible modulo p = {p}"),
        Some(Certificate::DegreePatterns { patterns }) => {
            let parts: Vec<String> = patterns.iter().map(|(p, d)| format!("{p}:{d:?}")).collect();
            format!("factor-degree patterns {}", parts.join(" "))
        }
        Some(Certificate::Factor { factor }) => format!("factor {factor}"),
    }
}

impl fmt::Display for PolyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "polynomial     = {}", self.poly)?;
        writeln!(f, "degree         = {}", self.degree)?;
        writeln!(f, "real roots     = {}", self.real_roots)?;
        for ((lo, hi), r) in self.isolation.intervals.iter().zip(&self.roots) {
            writeln!(f, "  ({lo}, {hi}]  ≈ {}", sig(r))?;
        }
        match self.eisenstein {
            Some(p) => writeln!(f, "eisenstein     = p = {p}")?,
            None => writeln!(f, "eisenstein     = none")?,
        }
        let status = match self.verdict.status {
            Status::Irreducible => "Irreducible",
            Status::Reducible => "Reducible",
            Status::Unknown => "Unknown",
        };
        writeln!(f, "irreducibility = {status} ({})", witness(&self.verdict.witness))?;
        match (self.galois.kind, self.galois.p, self.galois.solvable) {
            (GaloisKind::SymmetricSp, Some(p), Some(s)) => {
                writeln!(f, "galois group   = S_{p}")?;
                writeln!(f, "solvable       = {s}")
            }
            _ => {
                writeln!(f, "galois group   = not certified")?;
                writeln!(f, "solvable       = unknown")
            }
        }
    }
}

pub fn poly_analyze(text: &str, prec: Precision) -> Result<PolyReport, CliError> {
    let poly: QPoly = text.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
    let degree = poly.degree().filter(|d| *d > 0).ok_or_else(|| CliError::Runtime("polynomial is constant".into()))?;
    let real_roots = sturm_count(&poly, &Bound::NegInf, &Bound::PosInf)?.count;
    let isolation = isolate_real_roots(&poly)?;
    let roots = isolation.roots(prec);
    let eisenstein = if poly.has_integer_coeffs() { eisenstein(&poly)? } else { None };
    let verdict = irreducible_over_q(&poly);
    let galois = sp_criterion(&poly);
    Ok(PolyReport { poly, degree, real_roots, isolation, roots, eisenstein, verdict, galois })
}

// ---- ngon ----

pub struct NgonReport {
    pub chain: NgonChain,
    pub deviation: Real,
    /// `max side − min side`.
    pub side_spread: Real,
}

impl fmt::Display for NgonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self.chain.sides().iter().map(usize::to_string).collect();
        writeln!(f, "chain       = {}", chain.join(" -> "))?;
        writeln!(f, "deviation   = {}", sig(&self.deviation))?;
        writeln!(f, "side spread = {}", sig(&self.side_spread))?;
        let p = self.chain.polygon();
        writeln!(f, "r           = {}", sig(p.radius()))?;
        for (i, v) in p.vertices().iter().enumerate() {
            writeln!(f, "P{:<10} = {}", i, pt(v))?;
        }
        Ok(())
    }
}

pub fn ngon(n: usize, svg: Option<&Path>, prec: Precision) -> Result<NgonReport, CliError> {
    let chain = regular_ngon(n, prec)?;
    let p = chain.polygon();
    let deviation = max_deviation_from_regular(p);
    let sides = p.side_lengths();
    let (mut lo, mut hi) = (sides[0].clone(), sides[0].clone());
    for s in &sides {
        lo = lo.min(s.clone());
        hi = hi.max(s.clone());
    }
    if let Some(path) = svg {
        let mut scene = SvgScene::new();
        for l in &chain.construction_lines {
            scene.line(l);
        }
        for stage in &chain.stages {
            scene.polygon(stage.vertices());
        }
        for (i, v) in p.vertices().iter().enumerate() {
            scene.point(v).label(v, &format!("P{i}"));
        }
        write_atomic(path, &scene.render())?;
    }
    Ok(NgonReport { side_spread: hi - lo, deviation, chain })
}

// ---- cubic ----

pub struct CubicReport {
    pub a: Rational,
    pub b: Rational,
    /// Real roots of `x³ + a x + b`, ascending: crease slopes, or the
    /// factorization `x(x² + a)` when `b = 0`.
    pub slopes: Vec<Real>,
    pub residuals: Vec<Real>,
    pub sturm_count: usize,
    pub degenerate: bool,
}

impl fmt::Display for CubicReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cubic        = x^3 + ({})x + ({})", self.a, self.b)?;
        if self.degenerate {
            writeln!(f, "degenerate   = b = 0: first parabola collapses; x(x^2 + a) factored directly")?;
        }
        writeln!(f, "creases      = {}", self.slopes.len())?;
        writeln!(f, "sturm count  = {}", self.sturm_count)?;
        for (m, r) in self.slopes.iter().zip(&self.residuals) {
            writeln!(f, "  m = {}   m^3 + a m + b = {}", sig(m), sig(r))?;
        }
        Ok(())
    }
}

pub fn cubic(a: &Rational, b: &Rational, prec: Precision) -> Result<CubicReport, CliError> {
    let tol = prec.tolerance();
    let poly = QPoly::new(vec![b.clone(), a.clone(), Rational::zero(), Rational::from_integer(1.into())]);
    let sturm = sturm_count(&poly, &Bound::NegInf, &Bound::PosInf)?.count;
    let degenerate = b.is_zero();
    let mut slopes = if degenerate {
        let mut roots = vec![Real::zero(prec)];
        if a.is_negative() {
            let s = Real::from_rational(&-a, prec).sqrt();
            roots.push(-&s);
            roots.push(s);
        }
        roots
    } else {
        let ((f1, d1), (f2, d2)) = cubic_setup(a, b, prec)?;
        let creases = o6(&f1, &d1, &f2, &d2)?;
        let mut m = Vec::with_capacity(creases.len());
        for l in creases.iter() {
            m.push(l.slope(&tol).ok_or_else(|| CliError::Runtime("vertical crease".into()))?);
        }
        m
    };
    slopes.sort_by(|x, y| x.partial_cmp(y).expect("finite slopes"));
    let ar = Real::from_rational(a, prec);
    let br = Real::from_rational(b, prec);
    let residuals: Vec<Real> = slopes.iter().map(|m| m.powi(3) + &ar * m + &br).collect();
    let report = CubicReport { a: a.clone(), b: b.clone(), slopes, residuals, sturm_count: sturm, degenerate };
    if report.residuals.iter().any(|r| !tol.is_zero(r)) {
        return Err(CliError::Runtime(format!("a crease slope fails the cubic\n{report}")));
    }
    if report.slopes.len() != sturm {
        return Err(CliError::Runtime(format!("{} creases but {sturm} real roots\n{report}", report.slopes.len())));
    }
    Ok(report)
}
