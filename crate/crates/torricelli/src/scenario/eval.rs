//! Straight-line evaluator for parsed scripts.
//!
//! Statements run in order; every constructor delegates to the exact
//! kernel, so evaluation is deterministic and tolerance-free. A failed
//! assertion is recorded (with the exact values compared) and evaluation
//! continues; a domain error — degenerate construction, type mismatch —
//! aborts with the offending line.

use std::collections::BTreeMap;
use std::fmt;

use crate::geom::{
    Circle, LineCoeffs, Point, angle_eq_120, centroid3, collinear, diagonals_bisect, dist2,
    equilateral_apex, homothety, intersect_lines, is_equilateral, line_through, midpoint,
    on_circle, reflect_over_line, rotate60k, signed_area,
};
use crate::napoleon::{inward_apex, outward_apex};
use crate::qsqrt3::F3;
use crate::geom::Side;

use super::{AreaAtom, AreaExpr, Assertion, Expr, Func, Kind, Pred, Program, ScriptError, StmtKind};

/// A bound value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Point(Point),
    Line(LineCoeffs),
    Circle(Circle),
    Scalar(F3),
}

impl Value {
    fn kind_name(&self) -> &'static str {
        match self {
            Value::Point(_) => "point",
            Value::Line(_) => "line",
            Value::Circle(_) => "circle",
            Value::Scalar(_) => "scalar",
        }
    }

    fn matches(&self, kind: Kind) -> bool {
        matches!(
            (self, kind),
            (Value::Point(_), Kind::Point)
                | (Value::Line(_), Kind::Line)
                | (Value::Circle(_), Kind::Circle)
                | (Value::Scalar(_), Kind::Scalar)
        )
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Point(p) => write!(f, "{p}"),
            Value::Line(l) => write!(f, "[{}, {}, {}]", l.a, l.b, l.c),
            Value::Circle(k) => write!(f, "circle({}, r2 = {})", k.center, k.r2),
            Value::Scalar(s) => write!(f, "{s}"),
        }
    }
}

/// One evaluated assertion: source line, canonical text, verdict and the
/// exact quantities compared.
#[derive(Debug, Clone)]
pub struct AssertionRecord {
    pub line: u32,
    pub text: String,
    pub passed: bool,
    pub details: String,
}

/// Result of evaluating a whole script.
#[derive(Debug, Clone, Default)]
pub struct EvalOutcome {
    pub bindings: BTreeMap<String, Value>,
    pub assertions: Vec<AssertionRecord>,
}

struct Evaluator {
    env: BTreeMap<String, Value>,
    line: u32,
}

impl Evaluator {
    fn err(&self, msg: impl Into<String>) -> ScriptError {
        ScriptError::Eval { line: self.line, msg: msg.into() }
    }

    fn lookup(&self, name: &str) -> Result<Value, ScriptError> {
        self.env
            .get(name)
            .cloned()
            .ok_or_else(|| self.err(format!("unbound name `{name}`")))
    }

    fn eval_expr(&self, expr: &Expr) -> Result<Value, ScriptError> {
        match expr {
            Expr::PointLit(x, y) => Ok(Value::Point(Point::new(x.clone(), y.clone()))),
            Expr::ScalarLit(v) => Ok(Value::Scalar(v.clone())),
            Expr::Name(n) => self.lookup(n),
            Expr::Call(func, args) => {
                let args: Vec<Value> =
                    args.iter().map(|a| self.eval_expr(a)).collect::<Result<_, _>>()?;
                self.call(*func, args)
            }
        }
    }

    fn point(&self, v: &Value) -> Result<Point, ScriptError> {
        match v {
            Value::Point(p) => Ok(p.clone()),
            other => Err(self.err(format!("expected a point, got a {}", other.kind_name()))),
        }
    }

    fn line_val(&self, v: &Value) -> Result<LineCoeffs, ScriptError> {
        match v {
            Value::Line(l) => Ok(l.clone()),
            other => Err(self.err(format!("expected a line, got a {}", other.kind_name()))),
        }
    }

    fn circle(&self, v: &Value) -> Result<Circle, ScriptError> {
        match v {
            Value::Circle(k) => Ok(k.clone()),
            other => Err(self.err(format!("expected a circle, got a {}", other.kind_name()))),
        }
    }

    fn scalar(&self, v: &Value) -> Result<F3, ScriptError> {
        match v {
            Value::Scalar(s) => Ok(s.clone()),
            other => Err(self.err(format!("expected a scalar, got a {}", other.kind_name()))),
        }
    }

    fn call(&self, func: Func, args: Vec<Value>) -> Result<Value, ScriptError> {
        let domain = |e: crate::geom::GeomError| self.err(e.to_string());
        Ok(match func {
            Func::Midpoint => {
                Value::Point(midpoint(&self.point(&args[0])?, &self.point(&args[1])?))
            }
            Func::Centroid => Value::Point(centroid3(
                &self.point(&args[0])?,
                &self.point(&args[1])?,
                &self.point(&args[2])?,
            )),
            Func::ApexLeft => Value::Point(
                equilateral_apex(&self.point(&args[0])?, &self.point(&args[1])?, Side::Left)
                    .map_err(domain)?,
            ),
            Func::ApexRight => Value::Point(
                equilateral_apex(&self.point(&args[0])?, &self.point(&args[1])?, Side::Right)
                    .map_err(domain)?,
            ),
            Func::ApexOut => Value::Point(
                outward_apex(
                    &self.point(&args[0])?,
                    &self.point(&args[1])?,
                    &self.point(&args[2])?,
                )
                .map_err(domain)?,
            ),
            Func::ApexIn => Value::Point(
                inward_apex(
                    &self.point(&args[0])?,
                    &self.point(&args[1])?,
                    &self.point(&args[2])?,
                )
                .map_err(domain)?,
            ),
            Func::Rot60 => {
                Value::Point(rotate60k(&self.point(&args[0])?, &self.point(&args[1])?, 1))
            }
            Func::Rot120 => {
                Value::Point(rotate60k(&self.point(&args[0])?, &self.point(&args[1])?, 2))
            }
            Func::Line => Value::Line(
                line_through(&self.point(&args[0])?, &self.point(&args[1])?).map_err(domain)?,
            ),
            Func::Intersect => Value::Point(
                intersect_lines(&self.line_val(&args[0])?, &self.line_val(&args[1])?)
                    .map_err(domain)?,
            ),
            Func::Circumcircle => Value::Circle(
                crate::geom::circumcircle(
                    &self.point(&args[0])?,
                    &self.point(&args[1])?,
                    &self.point(&args[2])?,
                )
                .map_err(domain)?,
            ),
            Func::Reflect => Value::Point(reflect_over_line(
                &self.point(&args[0])?,
                &self.line_val(&args[1])?,
            )),
            Func::Homothety => Value::Point(homothety(
                &self.point(&args[0])?,
                &self.scalar(&args[1])?,
                &self.point(&args[2])?,
            )),
            Func::Area => Value::Scalar(signed_area(
                &self.point(&args[0])?,
                &self.point(&args[1])?,
                &self.point(&args[2])?,
            )),
        })
    }

    fn eval_area_expr(&self, e: &AreaExpr) -> Result<F3, ScriptError> {
        let mut total = F3::zero();
        for term in &e.terms {
            let coeff = F3::from_rat(term.coeff.clone());
            let factor = match &term.atom {
                AreaAtom::One => F3::one(),
                AreaAtom::Sqrt3 => F3::sqrt3(),
                AreaAtom::Expr(expr) => self.scalar(&self.eval_expr(expr)?)?,
            };
            total = &total + &(&coeff * &factor);
        }
        Ok(total)
    }

    fn assert(&self, assertion: &Assertion) -> Result<(bool, String), ScriptError> {
        match assertion {
            Assertion::AreaEq(lhs, rhs) => {
                let l = self.eval_area_expr(lhs)?;
                let r = self.eval_area_expr(rhs)?;
                Ok((l == r, format!("{l} vs {r}")))
            }
            Assertion::Simple(pred, args) => {
                let values: Vec<Value> =
                    args.iter().map(|a| self.eval_expr(a)).collect::<Result<_, _>>()?;
                self.predicate(*pred, &values)
            }
        }
    }

    fn predicate(&self, pred: Pred, args: &[Value]) -> Result<(bool, String), ScriptError> {
        Ok(match pred {
            Pred::Coincide => {
                let p = self.point(&args[0])?;
                let q = self.point(&args[1])?;
                (p == q, format!("{p} vs {q}"))
            }
            Pred::EqualDist => {
                let d1 = dist2(&self.point(&args[0])?, &self.point(&args[1])?);
                let d2 = dist2(&self.point(&args[2])?, &self.point(&args[3])?);
                (d1 == d2, format!("dist2 {d1} vs {d2}"))
            }
            Pred::Collinear => {
                let p = self.point(&args[0])?;
                let q = self.point(&args[1])?;
                let r = self.point(&args[2])?;
                let area = signed_area(&p, &q, &r);
                (collinear(&p, &q, &r), format!("signed area {area}"))
            }
            Pred::Concurrent => {
                let l1 = self.line_val(&args[0])?;
                let l2 = self.line_val(&args[1])?;
                let l3 = self.line_val(&args[2])?;
                match (intersect_lines(&l1, &l2), intersect_lines(&l1, &l3)) {
                    (Ok(p12), Ok(p13)) => (p12 == p13, format!("{p12} vs {p13}")),
                    (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
                }
            }
            Pred::OnCircle => {
                let p = self.point(&args[0])?;
                let k = self.circle(&args[1])?;
                let d = dist2(&p, &k.center);
                (on_circle(&p, &k), format!("dist2 to center {d} vs r2 {}", k.r2))
            }
            Pred::Equilateral => {
                let p = self.point(&args[0])?;
                let q = self.point(&args[1])?;
                let r = self.point(&args[2])?;
                let sides = format!(
                    "sides2 {}, {}, {}",
                    dist2(&p, &q),
                    dist2(&q, &r),
                    dist2(&r, &p)
                );
                (is_equilateral(&p, &q, &r), sides)
            }
            Pred::Angle120 => {
                let a = self.point(&args[0])?;
                let v = self.point(&args[1])?;
                let b = self.point(&args[2])?;
                let ok = angle_eq_120(&a, &v, &b).map_err(|e| self.err(e.to_string()))?;
                (ok, format!("at {v}"))
            }
            Pred::MidpointOf => {
                let m = self.point(&args[0])?;
                let p = self.point(&args[1])?;
                let q = self.point(&args[2])?;
                let mid = midpoint(&p, &q);
                (m == mid, format!("{m} vs {mid}"))
            }
            Pred::Parallelogram => {
                let p = self.point(&args[0])?;
                let q = self.point(&args[1])?;
                let r = self.point(&args[2])?;
                let s = self.point(&args[3])?;
                let m1 = midpoint(&p, &r);
                let m2 = midpoint(&q, &s);
                (diagonals_bisect(&p, &q, &r, &s), format!("diagonal midpoints {m1} vs {m2}"))
            }
        })
    }
}

/// Evaluate a parsed program.
pub fn eval(program: &Program) -> Result<EvalOutcome, ScriptError> {
    let mut ev = Evaluator { env: BTreeMap::new(), line: 0 };
    let mut assertions = Vec::new();
    for stmt in &program.statements {
        ev.line = stmt.line;
        match &stmt.kind {
            StmtKind::Binding { kind, name, expr } => {
                let value = ev.eval_expr(expr)?;
                if !value.matches(*kind) {
                    return Err(ev.err(format!(
                        "`{name}` is declared {} but the expression is a {}",
                        kind.keyword(),
                        value.kind_name()
                    )));
                }
                ev.env.insert(name.clone(), value);
            }
            StmtKind::Assert(assertion) => {
                let (passed, details) = ev.assert(assertion)?;
                assertions.push(AssertionRecord {
                    line: stmt.line,
                    text: assertion.to_string(),
                    passed,
                    details,
                });
            }
        }
    }
    Ok(EvalOutcome { bindings: ev.env, assertions })
}

#[cfg(test)]
mod tests {
    use super::super::{parse, run_script};
    use super::*;

    #[test]
    fn sample_script_evaluates() {
        let src = "point A = (0, 0)\npoint B = (4, 0)\npoint M = midpoint(A, B)\nassert coincide(M, (2, 0))";
        let outcome = eval(&parse(src).unwrap()).unwrap();
        assert_eq!(outcome.assertions.len(), 1);
        assert!(outcome.assertions[0].passed);
        assert_eq!(outcome.bindings.len(), 3);
        assert_eq!(
            outcome.bindings["M"],
            Value::Point(Point::from_ints(2, 0))
        );
    }

    #[test]
    fn failed_assertion_records_both_values_and_continues() {
        let src = "point A = (0, 0)\npoint B = (4, 0)\npoint M = midpoint(A, B)\nassert coincide(M, (1, 0))\nassert coincide(M, (2, 0))";
        let outcome = eval(&parse(src).unwrap()).unwrap();
        assert_eq!(outcome.assertions.len(), 2);
        assert!(!outcome.assertions[0].passed);
        assert_eq!(outcome.assertions[0].line, 4);
        assert!(outcome.assertions[0].details.contains("(2, 0) vs (1, 0)"));
        assert!(outcome.assertions[1].passed);
    }

    #[test]
    fn construction_errors_abort_with_the_line() {
        let src = "point A = (0, 0)\npoint B = (1, 1)\npoint C = (2, 2)\ncircle K = circumcircle(A, B, C)";
        let err = eval(&parse(src).unwrap()).unwrap_err();
        assert_eq!(
            err,
            ScriptError::Eval { line: 4, msg: "collinear points".to_string() }
        );
    }

    #[test]
    fn declared_kind_must_match() {
        let src = "point A = (0, 0)\npoint B = (1, 0)\nscalar s = midpoint(A, B)";
        let err = eval(&parse(src).unwrap()).unwrap_err();
        assert!(err.to_string().contains("declared scalar"), "{err}");
    }

    #[test]
    fn area_eq_evaluates_linear_combinations() {
        let src = "point A = (0, 0)\npoint B = (4, 0)\npoint C = (0, 3)\nassert area_eq(area(A, B, C) == 6)\nassert area_eq(2*area(A, B, C) - area(A, B, C) == area(A, B, C))\nassert area_eq(area(A, C, B) == -6)";
        let outcome = eval(&parse(src).unwrap()).unwrap();
        assert!(outcome.assertions.iter().all(|a| a.passed));
    }

    #[test]
    fn run_script_statuses() {
        let ok = run_script("point A = (0, 0)\nassert coincide(A, (0, 0))");
        assert_eq!(ok.status, 0);
        let failing = run_script("point A = (0, 0)\nassert coincide(A, (1, 0))");
        assert_eq!(failing.status, 1);
        let syntax = run_script("point A = (0 0)");
        assert_eq!(syntax.status, 2);
        let domain = run_script("point A = (0, 0)\nline l = line(A, A)");
        assert_eq!(domain.status, 2);
    }

    #[test]
    fn full_construction_chain() {
        let src = "\
point A = (0, 0)
point B = (4, 0)
point C = (0, 3)
point C1 = apex_out(A, B, C)
point C1p = apex_in(A, B, C)
assert coincide(C1, (2, 0 + -2 r3))
assert coincide(C1p, (2, 0 + 2 r3))
line la = line(A, B)
point R = reflect(C1p, la)
assert coincide(R, C1)
assert equilateral(A, B, C1)
circle K3 = circumcircle(A, B, C1)
assert on_circle(B, K3)
assert parallelogram(A, C1, B, C1p)
";
        let outcome = eval(&parse(src).unwrap()).unwrap();
        assert!(
            outcome.assertions.iter().all(|a| a.passed),
            "{:#?}",
            outcome.assertions
        );
    }
}
