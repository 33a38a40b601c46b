use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive};

use super::ast::{Expr, Script, Stmt, StmtKind};
use super::lexer::{lex, Tok};
use super::{ParseError, Pos, SyntaxError, Ty};
use crate::numerics::parse_rational;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Param {
    T(Ty),
    /// Non-negative integer literal.
    Int,
}

pub(crate) struct Sig {
    pub params: &'static [Param],
    /// Repeated trailing parameter and the minimum number of repeats.
    pub rest: Option<(Param, usize)>,
    pub ret: Ty,
}

use Param::{Int, T};
use Ty::{Line, LineSet, Point, Polygon, Pyramid, Real};

pub(crate) fn signature(name: &str) -> Option<Sig> {
    let s = |params: &'static [Param], ret| Some(Sig { params, rest: None, ret });
    match name {
        "point" => s(&[T(Real), T(Real)], Point),
        "dist" => s(&[T(Point), T(Point)], Real),
        "O1" | "O2" => s(&[T(Point), T(Point)], Line),
        "O3" => s(&[T(Line), T(Line)], LineSet),
        "O4" => s(&[T(Point), T(Line)], Line),
        "O5" => s(&[T(Point), T(Line), T(Point)], LineSet),
        "O6" => s(&[T(Point), T(Line), T(Point), T(Line)], LineSet),
        "O7" => s(&[T(Point), T(Line), T(Line)], LineSet),
        "LI" => s(&[T(Line), T(Line)], Point),
        "reflect" => s(&[T(Point), T(Line)], Point),
        "rpa" => s(&[T(Polygon)], Polygon),
        "cpa" => s(&[T(Polygon), Int], Polygon),
        "regular_ngon" => s(&[Int], Polygon),
        "cyclic" => Some(Sig { params: &[T(Point), T(Point)], rest: Some((T(Real), 3)), ret: Polygon }),
        "pyramid" => Some(Sig { params: &[T(Real)], rest: Some((T(Real), 3)), ret: Pyramid }),
        _ => None,
    }
}

pub(crate) const CALLS: &[&str] = &[
    "point", "dist", "O1", "O2", "O3", "O4", "O5", "O6", "O7", "LI", "reflect", "rpa", "cpa", "cyclic", "regular_ngon", "pyramid",
];

const KEYWORDS: &[&str] = &["let", "assert_near", "emit_svg", "emit_obj"];

/// Names bound before the first statement.
pub(crate) const SEEDS: &[&str] = &["O", "I"];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax(SyntaxError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }))
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<Pos, ParseError> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.fail(&[what])
        }
    }

    fn script(&mut self) -> Result<Script, ParseError> {
        let mut statements = Vec::new();
        loop {
            while *self.peek() == Tok::Newline {
                self.bump();
            }
            if *self.peek() == Tok::Eof {
                break;
            }
            statements.push(self.stmt()?);
            match self.peek() {
                Tok::Newline | Tok::Eof => {}
                _ => return self.fail(&["end of line"]),
            }
        }
        Ok(Script { statements })
    }

    fn string(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&["string"]),
        }
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let pos = self.pos();
        let kw = match self.peek() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return self.fail(KEYWORDS),
        };
        self.bump();
        let kind = match kw.as_str() {
            "let" => {
                let name = match self.peek().clone() {
                    Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                        self.bump();
                        s
                    }
                    _ => return self.fail(&["identifier"]),
                };
                self.expect(Tok::Eq, "`=`")?;
                StmtKind::Let { name, expr: self.expr()? }
            }
            "assert_near" => {
                let lhs = self.expr()?;
                let rhs = self.expr()?;
                StmtKind::AssertNear { lhs, rhs }
            }
            "emit_svg" => StmtKind::EmitSvg { path: self.string()? },
            _ => StmtKind::EmitObj { path: self.string()? },
        };
        Ok(Stmt { kind, pos })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        while *self.peek() == Tok::LBracket {
            let pos = self.bump().1;
            let index = match self.peek().clone() {
                Tok::Num(s) => match parse_rational(&s).ok().filter(|q| q.is_integer() && !q.is_negative()) {
                    Some(q) => {
                        self.bump();
                        q.to_integer().to_usize().unwrap_or(usize::MAX)
                    }
                    None => return self.fail(&["non-negative integer"]),
                },
                _ => return self.fail(&["non-negative integer"]),
            };
            self.expect(Tok::RBracket, "`]`")?;
            e = Expr::Index { target: Box::new(e), index, pos };
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                let value = parse_rational(&s).map_err(|_| {
                    ParseError::Syntax(SyntaxError { pos, expected: vec!["number".into()], found: s.clone() })
                })?;
                Ok(Expr::Num { value, pos })
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Expr::Ident { name, pos });
                }
                if !CALLS.contains(&name.as_str()) {
                    return Err(ParseError::Syntax(SyntaxError {
                        pos,
                        expected: CALLS.iter().map(|s| s.to_string()).collect(),
                        found: format!("call to `{name}`"),
                    }));
                }
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    loop {
                        args.push(self.expr()?);
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RParen, "`)` or `,`")?;
                Ok(Expr::Call { name, args, pos })
            }
            _ => self.fail(&["number", "identifier", "call"]),
        }
    }
}

/// Static checks: names defined before use and bound once, call arity,
/// argument types.
struct Checker {
    env: HashMap<String, Ty>,
}

impl Checker {
    fn ty(&self, e: &Expr) -> Result<Ty, ParseError> {
        match e {
            Expr::Num { .. } => Ok(Ty::Real),
            Expr::Ident { name, pos } => {
                self.env.get(name).copied().ok_or_else(|| ParseError::UndefinedIdentifier { name: name.clone(), pos: *pos })
            }
            Expr::Index { target, pos, .. } => match self.ty(target)? {
                Ty::LineSet => Ok(Ty::Line),
                Ty::Polygon => Ok(Ty::Point),
                found => Err(ParseError::TypeMismatch { expected: "LineSet or Polygon".into(), found, pos: *pos }),
            },
            Expr::Call { name, args, pos } => {
                let sig = signature(name).expect("parser admits known calls only");
                let n = args.len();
                let fixed = sig.params.len();
                let arity_ok = match sig.rest {
                    None => n == fixed,
                    Some((_, min)) => n >= fixed + min,
                };
                if !arity_ok {
                    let expected = match sig.rest {
                        None => fixed.to_string(),
                        Some((_, min)) => format!("at least {}", fixed + min),
                    };
                    return Err(ParseError::ArityMismatch { name: name.clone(), expected, found: n, pos: *pos });
                }
                for (k, a) in args.iter().enumerate() {
                    let p = if k < fixed { sig.params[k] } else { sig.rest.expect("variadic").0 };
                    self.check_param(p, a)?;
                }
                Ok(sig.ret)
            }
        }
    }

    fn check_param(&self, p: Param, a: &Expr) -> Result<(), ParseError> {
        match p {
            Param::Int => match a {
                Expr::Num { value, .. } if value.is_integer() && !value.is_negative() => Ok(()),
                _ => {
                    let found = self.ty(a)?;
                    Err(ParseError::TypeMismatch { expected: "integer literal".into(), found, pos: a.pos() })
                }
            },
            Param::T(t) => {
                let found = self.ty(a)?;
                if found == t {
                    Ok(())
                } else {
                    Err(ParseError::TypeMismatch { expected: t.to_string(), found, pos: a.pos() })
                }
            }
        }
    }

    fn stmt(&mut self, s: &Stmt) -> Result<(), ParseError> {
        match &s.kind {
            StmtKind::Let { name, expr } => {
                let t = self.ty(expr)?;
                if self.env.contains_key(name) {
                    return Err(ParseError::Redefinition { name: name.clone(), pos: s.pos });
                }
                self.env.insert(name.clone(), t);
            }
            StmtKind::AssertNear { lhs, rhs } => {
                let (a, b) = (self.ty(lhs)?, self.ty(rhs)?);
                if a != b || !matches!(a, Ty::Real | Ty::Point) {
                    return Err(ParseError::TypeMismatch { expected: format!("{a} comparable with {a}"), found: b, pos: rhs.pos() });
                }
            }
            StmtKind::EmitSvg { .. } | StmtKind::EmitObj { .. } => {}
        }
        Ok(())
    }
}

/// Parses and statically checks a script.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let toks = lex(text).map_err(ParseError::Syntax)?;
    let script = Parser { toks, i: 0 }.script()?;
    let mut checker = Checker { env: SEEDS.iter().map(|s| (s.to_string(), Ty::Point)).collect() };
    for s in &script.statements {
        checker.stmt(s)?;
    }
    Ok(script)
}

/// Integer value of a literal accepted by an `Int` parameter.
pub(crate) fn int_literal(e: &Expr) -> usize {
    match e {
        Expr::Num { value, .. } => value.to_integer().to_usize().expect("checked integer literal"),
        _ => unreachable!("checked integer literal"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_let() {
        let s = parse("let l = O1(O, I)").unwrap();
        assert_eq!(s.statements.len(), 1);
        assert!(matches!(&s.statements[0].kind, StmtKind::Let { name, expr: Expr::Call { name: f, .. } } if name == "l" && f == "O1"));
    }

    #[test]
    fn arity() {
        let e = parse("let l = O1(O, I)\nlet x = O6(O, l, I)").unwrap_err();
        assert!(matches!(e, ParseError::ArityMismatch { ref name, found: 3, pos: Pos { line: 2, .. }, .. } if name == "O6"));
    }

    #[test]
    fn nested_index() {
        let src = "let l = O1(O, I)\nlet m = O2(O, I)\nlet n = O4(I, l)\nlet p = LI(O3(l,m)[0], n)";
        let s = parse(src).unwrap();
        let StmtKind::Let { expr, .. } = &s.statements[3].kind else { panic!() };
        let Expr::Call { args, .. } = expr else { panic!() };
        assert!(matches!(&args[0], Expr::Index { index: 0, .. }));
    }

    #[test]
    fn checks() {
        assert!(matches!(parse("let a = LI(O, I)"), Err(ParseError::TypeMismatch { .. })));
        assert!(matches!(parse("let a = O1(O, Q)"), Err(ParseError::UndefinedIdentifier { .. })));
        assert!(matches!(parse("let O = point(1, 2)"), Err(ParseError::Redefinition { .. })));
        assert!(matches!(parse("let a = regular_ngon(5/2)"), Err(ParseError::TypeMismatch { .. })));
        assert!(matches!(parse("let a = cyclic(O, I, 1, 1)"), Err(ParseError::ArityMismatch { .. })));
        assert!(matches!(parse("let a = foo(O)"), Err(ParseError::Syntax(_))));
        assert!(matches!(parse("assert_near O 1"), Err(ParseError::TypeMismatch { .. })));
    }

    #[test]
    fn syntax_error_position() {
        let ParseError::Syntax(e) = parse("let a = point(1, 2)\nlet b = point(1 2)").unwrap_err() else { panic!() };
        assert_eq!(e.pos, Pos { line: 2, col: 17 });
        assert!(e.expected.iter().any(|x| x.contains(')')));
    }

    #[test]
    fn round_trip() {
        let src = "# comment\nlet a = point(1/2, -0.25)\n\nlet P = regular_ngon(5)\nlet q = P[3]\nassert_near dist(a, q) dist(q, a)\nemit_svg \"out.svg\"\n";
        let s = parse(src).unwrap();
        let printed = s.to_string();
        let again = parse(&printed).unwrap();
        assert_eq!(again.without_positions(), s.without_positions());
        assert_eq!(again.to_string(), printed);
    }
}
