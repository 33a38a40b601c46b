use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::ast::{Expr, Script, StmtKind};
use super::parser::{int_literal, signature, Param, SEEDS};
use super::{ReplayError, RuntimeError, RuntimeErrorKind};
use crate::cyclic::{construct_cyclic, cpa, pyramid, regular_ngon, rpa, CyclicPolygon, Pyramid};
use crate::emit::{obj_from_pyramid, SvgScene};
use crate::euclid::{li, o1, o2, o3, o4, o5, o6, o7, reflect_point, Line, LineSet, Point};
use crate::numerics::{parse_rational, Precision, Real, Tolerance};

#[derive(Clone, Debug)]
pub enum Value {
    Point(Point),
    Line(Line),
    LineSet(LineSet),
    Polygon(CyclicPolygon),
    Pyramid(Box<Pyramid>),
    Real(Real),
}

fn sig(x: &Real) -> String {
    x.to_sig(12)
}

fn points_near(a: &[Point], b: &[Point], tol: &Tolerance) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(p, q)| p.approx_eq(q, tol))
}

impl Value {
    /// Short human-readable rendering (12 significant digits).
    pub fn summary(&self) -> String {
        match self {
            Value::Real(x) => sig(x),
            Value::Point(p) => format!("({}, {})", sig(&p.x), sig(&p.y)),
            Value::Line(l) => format!("{}x + {}y + {} = 0", sig(l.a()), sig(l.b()), sig(l.c())),
            Value::LineSet(s) => format!("{} line(s)", s.len()),
            Value::Polygon(p) => format!("{}-gon, r = {}", p.len(), sig(p.radius())),
            Value::Pyramid(p) => format!("pyramid over {}-gon, height {}", p.base.len(), sig(&p.apex.z)),
        }
    }

    /// Agreement within `tol`, structure included.
    pub fn near(&self, other: &Value, tol: &Tolerance) -> bool {
        match (self, other) {
            (Value::Real(a), Value::Real(b)) => tol.near(a, b),
            (Value::Point(a), Value::Point(b)) => a.approx_eq(b, tol),
            (Value::Line(a), Value::Line(b)) => a.approx_eq(b, tol),
            (Value::LineSet(a), Value::LineSet(b)) => a.len() == b.len() && a.iter().zip(b.iter()).all(|(l, m)| l.approx_eq(m, tol)),
            (Value::Polygon(a), Value::Polygon(b)) => points_near(a.vertices(), b.vertices(), tol),
            (Value::Pyramid(a), Value::Pyramid(b)) => {
                let flat = |p: &Pyramid| -> Vec<Point> {
                    std::iter::once(&p.apex)
                        .chain(&p.base)
                        .flat_map(|v| [Point::new(v.x.clone(), v.y.clone()), Point::new(v.z.clone(), v.z.clone())])
                        .collect()
                };
                points_near(&flat(a), &flat(b), tol)
            }
            _ => false,
        }
    }

    /// Bit-for-bit equality of every coordinate.
    pub fn identical(&self, other: &Value) -> bool {
        let pts = |a: &[Point], b: &[Point]| a.len() == b.len() && a.iter().zip(b).all(|(p, q)| p.identical(q));
        match (self, other) {
            (Value::Real(a), Value::Real(b)) => a.identical(b),
            (Value::Point(a), Value::Point(b)) => a.identical(b),
            (Value::Line(a), Value::Line(b)) => a.identical(b),
            (Value::LineSet(a), Value::LineSet(b)) => a.len() == b.len() && a.iter().zip(b.iter()).all(|(l, m)| l.identical(m)),
            (Value::Polygon(a), Value::Polygon(b)) => pts(a.vertices(), b.vertices()) && a.radius().identical(b.radius()),
            (Value::Pyramid(a), Value::Pyramid(b)) => {
                let same = |p: &crate::cyclic::Point3, q: &crate::cyclic::Point3| {
                    p.x.identical(&q.x) && p.y.identical(&q.y) && p.z.identical(&q.z)
                };
                same(&a.apex, &b.apex) && a.base.len() == b.base.len() && a.base.iter().zip(&b.base).all(|(p, q)| same(p, q))
            }
            _ => false,
        }
    }
}

/// Step argument: an earlier step, an exact literal, or a count/index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arg {
    Ref(usize),
    Num(String),
    Int(usize),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Ref(i) => write!(f, "#{i}"),
            Arg::Num(s) => write!(f, "{s}"),
            Arg::Int(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub op: String,
    pub args: Vec<Arg>,
    /// Rendered result, informational only.
    pub output: String,
}

/// Append-only record of every operation, in evaluation order. The seeds are
/// steps 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub precision: u32,
    pub steps: Vec<Step>,
    /// Name → step index, in binding order.
    pub bindings: IndexMap<String, usize>,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: IndexMap<usize, &str> = self.bindings.iter().map(|(n, i)| (*i, n.as_str())).collect();
        for (i, s) in self.steps.iter().enumerate() {
            let args: Vec<String> = s.args.iter().map(Arg::to_string).collect();
            let name = names.get(&i).map(|n| format!("{n} = ")).unwrap_or_default();
            writeln!(f, "#{i:<3} {name}{}({}) -> {}", s.op, args.join(", "), s.output)?;
        }
        Ok(())
    }
}

/// A file produced by `emit_svg` / `emit_obj`; writing it is the caller's job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emission {
    pub path: String,
    pub content: String,
}

#[derive(Clone, Debug)]
pub struct ConstructionState {
    precision: Precision,
    values: Vec<Value>,
    trace: Trace,
    emissions: Vec<Emission>,
}

enum Input<'a> {
    Value(&'a Value),
    Real(Real),
    Int(usize),
}

enum ApplyError {
    Runtime(RuntimeErrorKind),
    Malformed(String),
}

impl From<RuntimeErrorKind> for ApplyError {
    fn from(k: RuntimeErrorKind) -> Self {
        ApplyError::Runtime(k)
    }
}

fn malformed<T>(op: &str, what: &str) -> Result<T, ApplyError> {
    Err(ApplyError::Malformed(format!("`{op}` expects {what}")))
}

fn apply(op: &str, args: &[Input<'_>], prec: Precision) -> Result<Value, ApplyError> {
    let point = |i: usize| match args.get(i) {
        Some(Input::Value(Value::Point(p))) => Ok(p),
        _ => malformed(op, &format!("a point at argument {i}")),
    };
    let line = |i: usize| match args.get(i) {
        Some(Input::Value(Value::Line(l))) => Ok(l),
        _ => malformed(op, &format!("a line at argument {i}")),
    };
    let polygon = |i: usize| match args.get(i) {
        Some(Input::Value(Value::Polygon(p))) => Ok(p),
        _ => malformed(op, &format!("a polygon at argument {i}")),
    };
    let int = |i: usize| match args.get(i) {
        Some(Input::Int(k)) => Ok(*k),
        _ => malformed(op, &format!("an integer at argument {i}")),
    };
    let real = |i: usize| match args.get(i) {
        Some(Input::Real(x)) | Some(Input::Value(Value::Real(x))) => Ok(x.clone()),
        _ => malformed(op, &format!("a number at argument {i}")),
    };
    let reals = |from: usize| (from..args.len()).map(real).collect::<Result<Vec<Real>, ApplyError>>();
    let arity = |n: usize| if args.len() == n { Ok(()) } else { malformed(op, &format!("{n} arguments")) };
    let e = |k: crate::euclid::EuclidError| ApplyError::Runtime(k.into());
    let c = |k: crate::cyclic::CyclicError| ApplyError::Runtime(k.into());
    Ok(match op {
        "num" => {
            arity(1)?;
            Value::Real(real(0)?)
        }
        "point" => {
            arity(2)?;
            Value::Point(Point::new(real(0)?, real(1)?))
        }
        "dist" => {
            arity(2)?;
            Value::Real(point(0)?.dist(point(1)?))
        }
        "O1" => {
            arity(2)?;
            Value::Line(o1(point(0)?, point(1)?).map_err(e)?)
        }
        "O2" => {
            arity(2)?;
            Value::Line(o2(point(0)?, point(1)?).map_err(e)?)
        }
        "O3" => {
            arity(2)?;
            Value::LineSet(o3(line(0)?, line(1)?).map_err(e)?)
        }
        "O4" => {
            arity(2)?;
            Value::Line(o4(point(0)?, line(1)?))
        }
        "O5" => {
            arity(3)?;
            Value::LineSet(o5(point(0)?, line(1)?, point(2)?))
        }
        "O6" => {
            arity(4)?;
            Value::LineSet(o6(point(0)?, line(1)?, point(2)?, line(3)?).map_err(e)?)
        }
        "O7" => {
            arity(3)?;
            Value::LineSet(o7(point(0)?, line(1)?, line(2)?))
        }
        "LI" => {
            arity(2)?;
            Value::Point(li(line(0)?, line(1)?).map_err(e)?)
        }
        "reflect" => {
            arity(2)?;
            Value::Point(reflect_point(point(0)?, line(1)?))
        }
        "rpa" => {
            arity(1)?;
            Value::Polygon(rpa(polygon(0)?).map_err(c)?.1)
        }
        "cpa" => {
            arity(2)?;
            Value::Polygon(cpa(polygon(0)?, int(1)?).map_err(c)?.1)
        }
        "regular_ngon" => {
            arity(1)?;
            Value::Polygon(regular_ngon(int(0)?, prec).map_err(c)?.polygon().clone())
        }
        "cyclic" => {
            if args.len() < 5 {
                return malformed(op, "two points and at least 3 sides");
            }
            Value::Polygon(construct_cyclic(point(0)?, point(1)?, &reals(2)?).map_err(c)?.polygon)
        }
        "pyramid" => {
            if args.len() < 4 {
                return malformed(op, "a lateral edge and at least 3 sides");
            }
            Value::Pyramid(Box::new(pyramid(&real(0)?, &reals(1)?).map_err(c)?))
        }
        "index" => {
            arity(2)?;
            let i = int(1)?;
            match &args[0] {
                Input::Value(Value::LineSet(s)) => {
                    Value::Line(s.get(i).cloned().ok_or(RuntimeErrorKind::IndexOutOfRange { index: i, count: s.len() })?)
                }
                Input::Value(Value::Polygon(p)) => {
                    Value::Point(p.vertex(i).cloned().ok_or(RuntimeErrorKind::IndexOutOfRange { index: i, count: p.len() })?)
                }
                _ => return malformed(op, "a line set or polygon"),
            }
        }
        other => return Err(ApplyError::Malformed(format!("unknown operation `{other}`"))),
    })
}

impl ConstructionState {
    fn seeded(prec: Precision) -> ConstructionState {
        let mut st = ConstructionState {
            precision: prec,
            values: Vec::new(),
            trace: Trace { precision: prec.digits(), steps: Vec::new(), bindings: IndexMap::new() },
            emissions: Vec::new(),
        };
        for (name, x) in SEEDS.iter().zip(["0", "1"]) {
            let i = st
                .push("point", vec![Arg::Num(x.into()), Arg::Num("0".into())])
                .unwrap_or_else(|_| unreachable!("seed points are always constructible"));
            st.trace.bindings.insert(name.to_string(), i);
        }
        st
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn emissions(&self) -> &[Emission] {
        &self.emissions
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.trace.bindings.get(name).map(|i| &self.values[*i])
    }

    /// Bound names and values in binding order.
    pub fn bindings(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.trace.bindings.iter().map(|(n, i)| (n.as_str(), &self.values[*i]))
    }

    /// Same names, each value within `tol`.
    pub fn agrees_with(&self, other: &ConstructionState, tol: &Tolerance) -> bool {
        self.trace.bindings.len() == other.trace.bindings.len()
            && self.bindings().all(|(n, v)| other.get(n).is_some_and(|w| v.near(w, tol)))
    }

    /// Same names, every value bit-identical.
    pub fn identical_to(&self, other: &ConstructionState) -> bool {
        self.trace.bindings.len() == other.trace.bindings.len()
            && self.bindings().all(|(n, v)| other.get(n).is_some_and(|w| v.identical(w)))
    }

    fn push(&mut self, op: &str, args: Vec<Arg>) -> Result<usize, ApplyError> {
        let value = {
            let mut inputs = Vec::with_capacity(args.len());
            for a in &args {
                inputs.push(match a {
                    Arg::Ref(i) => match self.values.get(*i) {
                        Some(v) => Input::Value(v),
                        None => return Err(ApplyError::Malformed(format!("dangling reference #{i}"))),
                    },
                    Arg::Num(s) => match parse_rational(s) {
                        Ok(q) => Input::Real(Real::from_rational(&q, self.precision)),
                        Err(_) => return Err(ApplyError::Malformed(format!("bad number `{s}`"))),
                    },
                    Arg::Int(k) => Input::Int(*k),
                });
            }
            apply(op, &inputs, self.precision)?
        };
        self.trace.steps.push(Step { op: op.to_string(), args, output: value.summary() });
        self.values.push(value);
        Ok(self.values.len() - 1)
    }

    fn eval(&mut self, e: &Expr) -> Result<usize, RuntimeErrorKind> {
        let (op, args) = match e {
            Expr::Ident { name, .. } => return Ok(self.trace.bindings[name]),
            Expr::Num { value, .. } => ("num", vec![Arg::Num(value.to_string())]),
            Expr::Index { target, index, .. } => ("index", vec![Arg::Ref(self.eval(target)?), Arg::Int(*index)]),
            Expr::Call { name, args, .. } => {
                let sig = signature(name).expect("checked call");
                let mut out = Vec::with_capacity(args.len());
                for (k, a) in args.iter().enumerate() {
                    let p = sig.params.get(k).copied().or(sig.rest.map(|r| r.0)).expect("checked arity");
                    out.push(match (p, a) {
                        (Param::Int, _) => Arg::Int(int_literal(a)),
                        (_, Expr::Num { value, .. }) => Arg::Num(value.to_string()),
                        _ => Arg::Ref(self.eval(a)?),
                    });
                }
                (name.as_str(), out)
            }
        };
        self.push(op, args).map_err(|err| match err {
            ApplyError::Runtime(k) => k,
            ApplyError::Malformed(m) => unreachable!("statically checked script produced malformed step: {m}"),
        })
    }

    fn svg(&self) -> String {
        let mut scene = SvgScene::new();
        for (name, v) in self.bindings() {
            match v {
                Value::Point(p) => {
                    scene.point(p).label(p, name);
                }
                Value::Line(l) => {
                    scene.line(l);
                }
                Value::LineSet(s) => {
                    for l in s.iter() {
                        scene.line(l);
                    }
                }
                Value::Polygon(p) => {
                    scene.polygon(p.vertices());
                }
                Value::Pyramid(p) => {
                    scene.polygon(p.base_polygon.vertices());
                }
                Value::Real(_) => {}
            }
        }
        scene.render()
    }

    fn obj(&self) -> Result<String, RuntimeErrorKind> {
        let last = self.bindings().filter_map(|(_, v)| if let Value::Pyramid(p) = v { Some(p) } else { None }).last();
        Ok(obj_from_pyramid(last.ok_or(RuntimeErrorKind::NoPyramid)?).render())
    }

    fn statement(&mut self, kind: &StmtKind) -> Result<(), RuntimeErrorKind> {
        match kind {
            StmtKind::Let { name, expr } => {
                let i = self.eval(expr)?;
                self.trace.bindings.insert(name.clone(), i);
            }
            StmtKind::AssertNear { lhs, rhs } => {
                let (a, b) = (self.eval(lhs)?, self.eval(rhs)?);
                let tol = self.precision.tolerance();
                let (va, vb) = (&self.values[a], &self.values[b]);
                if !va.near(vb, &tol) {
                    return Err(RuntimeErrorKind::AssertionFailed {
                        lhs: va.summary(),
                        rhs: vb.summary(),
                        tol: format!("1e{}", 10 - self.precision.digits() as i64),
                    });
                }
            }
            StmtKind::EmitSvg { path } => {
                let content = self.svg();
                self.emissions.push(Emission { path: path.clone(), content });
            }
            StmtKind::EmitObj { path } => {
                let content = self.obj()?;
                self.emissions.push(Emission { path: path.clone(), content });
            }
        }
        Ok(())
    }
}

/// Runs a parsed script from the seeds at the given precision.
pub fn execute(script: &Script, prec: Precision) -> Result<ConstructionState, RuntimeError> {
    let mut st = ConstructionState::seeded(prec);
    for s in &script.statements {
        st.statement(&s.kind).map_err(|kind| RuntimeError { pos: s.pos, kind })?;
    }
    Ok(st)
}

/// Re-executes the trace of `state` at its own precision.
pub fn replay(state: &ConstructionState) -> Result<ConstructionState, ReplayError> {
    replay_at(&state.trace, state.precision)
}

/// Re-executes `trace` step by step at `prec`.
pub fn replay_at(trace: &Trace, prec: Precision) -> Result<ConstructionState, ReplayError> {
    let mut st = ConstructionState {
        precision: prec,
        values: Vec::with_capacity(trace.steps.len()),
        trace: Trace { precision: prec.digits(), steps: Vec::new(), bindings: IndexMap::new() },
        emissions: Vec::new(),
    };
    for (k, step) in trace.steps.iter().enumerate() {
        st.push(&step.op, step.args.clone()).map_err(|err| match err {
            ApplyError::Malformed(reason) => ReplayError::TraceCorrupt { step: k, reason },
            ApplyError::Runtime(kind) => ReplayError::Step { step: k, kind },
        })?;
    }
    for (name, i) in &trace.bindings {
        if *i >= st.values.len() {
            return Err(ReplayError::TraceCorrupt { step: *i, reason: format!("binding `{name}` refers past the end") });
        }
        st.trace.bindings.insert(name.clone(), *i);
    }
    for seed in SEEDS {
        if !st.trace.bindings.contains_key(*seed) {
            return Err(ReplayError::TraceCorrupt { step: 0, reason: format!("seed `{seed}` missing") });
        }
    }
    Ok(st)
}
