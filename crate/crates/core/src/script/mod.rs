//! Construction scripts: a straight-line DSL that binds points, lines,
//! polygons and pyramids by applying fold axioms from the seeds `O = (0,0)`
//! and `I = (1,0)`, checks numeric facts and records a replayable trace.
//!
//! ```text
//! let l = O1(O, I)
//! let m = O2(O, I)
//! let c = LI(l, m)
//! assert_near dist(c, O) 1/2
//! emit_svg "midpoint.svg"
//! ```

mod ast;
mod interp;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::cyclic::CyclicError;
use crate::euclid::EuclidError;

pub use ast::{Expr, Script, Stmt, StmtKind};
pub use interp::{execute, replay, replay_at, Arg, ConstructionState, Emission, Step, Trace, Value};
pub use parser::parse;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// Static type of a script expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    Point,
    Line,
    LineSet,
    Polygon,
    Pyramid,
    Real,
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: Pos,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expected.is_empty() {
            write!(f, "{}: {}", self.pos, self.found)
        } else {
            write!(f, "{}: expected {}, found {}", self.pos, self.expected.join(" or "), self.found)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    #[error("{pos}: undefined identifier `{name}`")]
    UndefinedIdentifier { name: String, pos: Pos },
    #[error("{pos}: `{name}` takes {expected} arguments, got {found}")]
    ArityMismatch { name: String, expected: String, found: usize, pos: Pos },
    #[error("{pos}: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: Ty, pos: Pos },
    #[error("{pos}: `{name}` is already bound")]
    Redefinition { name: String, pos: Pos },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax(e) => e.pos,
            ParseError::UndefinedIdentifier { pos, .. }
            | ParseError::ArityMismatch { pos, .. }
            | ParseError::TypeMismatch { pos, .. }
            | ParseError::Redefinition { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuntimeErrorKind {
    #[error(transparent)]
    Euclid(#[from] EuclidError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error("index {index} out of range: {count} available")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("assertion failed: {lhs} vs {rhs} (tolerance {tol})")]
    AssertionFailed { lhs: String, rhs: String, tol: String },
    #[error("no pyramid has been bound")]
    NoPyramid,
}

/// A runtime failure at a statement.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pos}: {kind}")]
pub struct RuntimeError {
    pub pos: Pos,
    pub kind: RuntimeErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("trace corrupt at step {step}: {reason}")]
    TraceCorrupt { step: usize, reason: String },
    #[error("step {step} failed on replay: {kind}")]
    Step { step: usize, kind: RuntimeErrorKind },
}
