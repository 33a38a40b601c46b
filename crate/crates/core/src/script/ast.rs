use std::fmt;

use super::Pos;
use crate::numerics::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num { value: Rational, pos: Pos },
    Ident { name: String, pos: Pos },
    Call { name: String, args: Vec<Expr>, pos: Pos },
    Index { target: Box<Expr>, index: usize, pos: Pos },
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Num { pos, .. } | Expr::Ident { pos, .. } | Expr::Call { pos, .. } | Expr::Index { pos, .. } => *pos,
        }
    }

    fn strip(&self) -> Expr {
        let pos = Pos::default();
        match self {
            Expr::Num { value, .. } => Expr::Num { value: value.clone(), pos },
            Expr::Ident { name, .. } => Expr::Ident { name: name.clone(), pos },
            Expr::Call { name, args, .. } => Expr::Call { name: name.clone(), args: args.iter().map(Expr::strip).collect(), pos },
            Expr::Index { target, index, .. } => Expr::Index { target: Box::new(target.strip()), index: *index, pos },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StmtKind {
    Let { name: String, expr: Expr },
    AssertNear { lhs: Expr, rhs: Expr },
    EmitSvg { path: String },
    EmitObj { path: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

impl Script {
    /// Copy with every position reset, for structural comparison.
    pub fn without_positions(&self) -> Script {
        let statements = self
            .statements
            .iter()
            .map(|s| Stmt {
                pos: Pos::default(),
                kind: match &s.kind {
                    StmtKind::Let { name, expr } => StmtKind::Let { name: name.clone(), expr: expr.strip() },
                    StmtKind::AssertNear { lhs, rhs } => StmtKind::AssertNear { lhs: lhs.strip(), rhs: rhs.strip() },
                    other => other.clone(),
                },
            })
            .collect();
        Script { statements }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num { value, .. } => write!(f, "{value}"),
            Expr::Ident { name, .. } => write!(f, "{name}"),
            Expr::Call { name, args, .. } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Index { target, index, .. } => write!(f, "{target}[{index}]"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Let { name, expr } => write!(f, "let {name} = {expr}"),
            StmtKind::AssertNear { lhs, rhs } => write!(f, "assert_near {lhs} {rhs}"),
            StmtKind::EmitSvg { path } => write!(f, "emit_svg \"{path}\""),
            StmtKind::EmitObj { path } => write!(f, "emit_obj \"{path}\""),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
