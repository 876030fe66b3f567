//! A small construction-script language for executable geometry claims.
//!
//! Scripts are UTF-8 `.geo` files: newline-separated statements, `#` line
//! comments, straight-line single-assignment semantics — no loops, no
//! conditionals, every name bound exactly once before use. A statement
//! either binds a named object (`point M = midpoint(A, B)`) or asserts a
//! predicate (`assert coincide(M, (2, 0))`). All arithmetic is exact;
//! coordinates and scalars are written `p/q` or `p/q + r/s r3`, where `r3`
//! denotes √3.
//!
//! Assertion failures are data — evaluation records them and continues.
//! Construction errors (circumcircle of collinear points, intersection of
//! parallel lines, ...) abort with the offending line.

mod eval;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::qsqrt3::{F3, Rat};

pub use eval::{AssertionRecord, EvalOutcome, Value, eval};
pub use parse::parse;

/// Parse- or evaluation-time failure, with 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: u32, col: u32, msg: String },
    #[error("line {line}: {msg}")]
    Eval { line: u32, msg: String },
}

/// The declared kind of a binding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Point,
    Line,
    Circle,
    Scalar,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Point => "point",
            Kind::Line => "line",
            Kind::Circle => "circle",
            Kind::Scalar => "scalar",
        }
    }
}

/// Constructor functions callable in expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Midpoint,
    Centroid,
    ApexLeft,
    ApexRight,
    ApexOut,
    ApexIn,
    Rot60,
    Rot120,
    Line,
    Intersect,
    Circumcircle,
    Reflect,
    Homothety,
    Area,
}

/// The full constructor set with arities, in grammar order.
pub const FUNC_NAMES: [(&str, Func, usize); 14] = [
    ("midpoint", Func::Midpoint, 2),
    ("centroid", Func::Centroid, 3),
    ("apex_left", Func::ApexLeft, 2),
    ("apex_right", Func::ApexRight, 2),
    ("apex_out", Func::ApexOut, 3),
    ("apex_in", Func::ApexIn, 3),
    ("rot60", Func::Rot60, 2),
    ("rot120", Func::Rot120, 2),
    ("line", Func::Line, 2),
    ("intersect", Func::Intersect, 2),
    ("circumcircle", Func::Circumcircle, 3),
    ("reflect", Func::Reflect, 2),
    ("homothety", Func::Homothety, 3),
    ("area", Func::Area, 3),
];

impl Func {
    pub fn name(self) -> &'static str {
        FUNC_NAMES.iter().find(|(_, f, _)| *f == self).unwrap().0
    }

    pub fn arity(self) -> usize {
        FUNC_NAMES.iter().find(|(_, f, _)| *f == self).unwrap().2
    }
}

/// Predicates assertable with `assert`; `area_eq` is parsed separately
/// because its argument is a linear-combination comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pred {
    Coincide,
    EqualDist,
    Collinear,
    Concurrent,
    OnCircle,
    Equilateral,
    Angle120,
    MidpointOf,
    Parallelogram,
}

/// The full predicate set (area_eq included), in grammar order.
pub const PRED_NAMES: [(&str, Option<Pred>, usize); 10] = [
    ("coincide", Some(Pred::Coincide), 2),
    ("equal_dist", Some(Pred::EqualDist), 4),
    ("collinear", Some(Pred::Collinear), 3),
    ("concurrent", Some(Pred::Concurrent), 3),
    ("on_circle", Some(Pred::OnCircle), 2),
    ("equilateral", Some(Pred::Equilateral), 3),
    ("angle120", Some(Pred::Angle120), 3),
    ("midpoint_of", Some(Pred::MidpointOf), 3),
    ("parallelogram", Some(Pred::Parallelogram), 4),
    ("area_eq", None, 1),
];

impl Pred {
    pub fn name(self) -> &'static str {
        PRED_NAMES
            .iter()
            .find(|(_, p, _)| *p == Some(self))
            .unwrap()
            .0
    }

    pub fn arity(self) -> usize {
        PRED_NAMES
            .iter()
            .find(|(_, p, _)| *p == Some(self))
            .unwrap()
            .2
    }
}

/// An expression: a literal, a bound name, or a constructor call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    PointLit(F3, F3),
    ScalarLit(F3),
    Name(String),
    Call(Func, Vec<Expr>),
}

/// One summand of an `area_eq` side: a rational coefficient times an atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaTerm {
    pub coeff: Rat,
    pub atom: AreaAtom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AreaAtom {
    /// The constant 1 (the term is a plain rational).
    One,
    /// The constant √3.
    Sqrt3,
    /// A scalar-valued name or call.
    Expr(Expr),
}

/// A signed sum of terms, one side of `==` inside `area_eq(...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaExpr {
    pub terms: Vec<AreaTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assertion {
    Simple(Pred, Vec<Expr>),
    AreaEq(AreaExpr, AreaExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Binding { kind: Kind, name: String, expr: Expr },
    Assert(Assertion),
}

/// A statement with its 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub line: u32,
    pub kind: StmtKind,
}

/// A parsed script: names resolved, arities checked, single-assignment
/// enforced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub statements: Vec<Stmt>,
}

impl Program {
    /// Statement bodies without source positions; the unit of structural
    /// equality for the print/reparse round trip.
    pub fn kinds(&self) -> Vec<&StmtKind> {
        self.statements.iter().map(|s| &s.kind).collect()
    }
}

fn fmt_scalar_literal(v: &F3, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v.b.is_zero() {
        write!(f, "{}", v.a)
    } else {
        write!(f, "{} + {} r3", v.a, v.b)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::PointLit(x, y) => {
                write!(f, "(")?;
                fmt_scalar_literal(x, f)?;
                write!(f, ", ")?;
                fmt_scalar_literal(y, f)?;
                write!(f, ")")
            }
            Expr::ScalarLit(v) => fmt_scalar_literal(v, f),
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for AreaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            let neg = term.coeff.sign() < 0;
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mag = term.coeff.abs();
            match &term.atom {
                AreaAtom::One => write!(f, "{mag}")?,
                AreaAtom::Sqrt3 => write!(f, "{mag} r3")?,
                AreaAtom::Expr(e) => {
                    if mag == Rat::one() {
                        write!(f, "{e}")?;
                    } else {
                        write!(f, "{mag}*{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Simple(pred, args) => {
                write!(f, "{}(", pred.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Assertion::AreaEq(lhs, rhs) => write!(f, "area_eq({lhs} == {rhs})"),
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Binding { kind, name, expr } => {
                write!(f, "{} {} = {}", kind.keyword(), name, expr)
            }
            StmtKind::Assert(a) => write!(f, "assert {a}"),
        }
    }
}

impl fmt::Display for Program {
    /// Canonical source: one statement per line, comments and blank lines
    /// dropped. Reparsing the output reproduces the statement list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stmt in &self.statements {
            writeln!(f, "{}", stmt.kind)?;
        }
        Ok(())
    }
}

/// Outcome of parsing and evaluating one script, plus the process exit
/// status the CLI maps it to: 0 all assertions passed, 1 some assertion
/// failed, 2 parse or construction error.
#[derive(Debug)]
pub struct ScriptResult {
    pub outcome: Result<EvalOutcome, ScriptError>,
    pub status: i32,
}

/// Parse then evaluate.
pub fn run_script(source: &str) -> ScriptResult {
    let outcome = parse(source).and_then(|program| eval(&program));
    let status = match &outcome {
        Err(_) => 2,
        Ok(o) => {
            if o.assertions.iter().all(|a| a.passed) {
                0
            } else {
                1
            }
        }
    };
    ScriptResult { outcome, status }
}
