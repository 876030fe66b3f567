//! Exact planar geometry over the field Q(√3), built to construct Napoleon
//! configurations and certify the classical theorems about them as exact
//! field equalities — no epsilons, no tolerances.
//!
//! Every construction that matters here (equilateral apexes, 60° rotations,
//! centroids, line and circle intersections, reflections, homotheties with
//! rational ratio) is closed in Q(√3), so equality of coordinates is
//! decidable and every theorem check is a yes/no answer.
//!
//! The crate is organised bottom-up:
//!
//! - [`qsqrt3`] — arbitrary-precision rationals and the scalar type
//!   [`F3`](qsqrt3::F3) = a + b√3 with exact sign and total order
//! - [`geom`] — points, lines, circles and the predicates over them
//! - [`napoleon`] — builds every named point, circle and area of a Napoleon
//!   configuration for a base triangle
//! - [`theorems`] — certifies each claim about a configuration and
//!   aggregates the verdicts into a JSON-serialisable report
//! - [`scenario`] — a small construction-script language (`.geo` files)
//!   with a lexer, recursive-descent parser and straight-line evaluator
//! - [`cli`] — the `verify` / `run` / `fuzz` / `svg` command front end
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the `corpus/` directory for the shipped `.geo` scripts.

pub mod cli;
pub mod geom;
pub mod napoleon;
pub mod qsqrt3;
pub mod scenario;
pub mod theorems;

pub use geom::{Circle, GeomError, LineCoeffs, Point, Side};
pub use napoleon::{AreaLedger, NapoleonBundle};
pub use qsqrt3::{F3, Rat};
pub use theorems::{CheckResult, Report};
