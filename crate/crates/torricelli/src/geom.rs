//! Exact planar primitives, transforms and predicates over Q(√3).
//!
//! Everything here is closed in the field: rotations are restricted to
//! multiples of 60°, so their matrix entries are {±1/2, ±√3/2}; angle tests
//! are phrased as rotation matches instead of cosines; circles carry squared
//! radii. No operation ever needs a square root, so every predicate is an
//! exact equality or sign test.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::qsqrt3::{F3, Rat};

/// Construction failures for degenerate inputs. Predicates never error;
/// they answer false instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("degenerate segment")]
    DegenerateSegment,
    #[error("parallel lines")]
    ParallelLines,
    #[error("coincident lines")]
    CoincidentLines,
    #[error("collinear points")]
    CollinearPoints,
    #[error("undefined angle")]
    UndefinedAngle,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("degenerate cevian")]
    DegenerateCevian,
    #[error("no intersection")]
    NoIntersection,
}

/// A point of the plane with coordinates in Q(√3).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Point {
    pub x: F3,
    pub y: F3,
}

impl Point {
    pub fn new(x: F3, y: F3) -> Self {
        Point { x, y }
    }

    /// Integer-coordinate point; convenient for tests and examples.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(F3::from_int(x), F3::from_int(y))
    }

    pub fn from_rats(x: Rat, y: Rat) -> Self {
        Point::new(F3::from_rat(x), F3::from_rat(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficients (a, b, c) of the locus a·x + b·y + c = 0, canonically
/// scaled so that the first nonzero coefficient of (a, b) equals 1; with
/// that convention coincidence of lines is component-wise equality.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LineCoeffs {
    pub a: F3,
    pub b: F3,
    pub c: F3,
}

/// Circle as exact center plus squared radius.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Circle {
    pub center: Point,
    pub r2: F3,
}

/// Which side of the directed segment p→q an equilateral apex is erected on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

pub fn midpoint(p: &Point, q: &Point) -> Point {
    let half = F3::rational(1, 2);
    Point::new(&(&p.x + &q.x) * &half, &(&p.y + &q.y) * &half)
}

pub fn centroid3(p: &Point, q: &Point, r: &Point) -> Point {
    let third = F3::rational(1, 3);
    Point::new(
        &(&(&p.x + &q.x) + &r.x) * &third,
        &(&(&p.y + &q.y) + &r.y) * &third,
    )
}

/// Rotate `p` about `center` by k·60° counterclockwise, k ∈ {−2, −1, 1, 2}.
/// cos and sin of those angles are ±1/2 and ±√3/2, so the image stays in
/// the field.
pub fn rotate60k(center: &Point, p: &Point, k: i32) -> Point {
    assert!(matches!(k, -2 | -1 | 1 | 2), "k must be in {{-2, -1, 1, 2}}");
    let (cos, sin) = match k {
        1 => (F3::rational(1, 2), F3::sqrt3_scaled(1, 2)),
        -1 => (F3::rational(1, 2), F3::sqrt3_scaled(-1, 2)),
        2 => (F3::rational(-1, 2), F3::sqrt3_scaled(1, 2)),
        _ => (F3::rational(-1, 2), F3::sqrt3_scaled(-1, 2)),
    };
    let dx = &p.x - &center.x;
    let dy = &p.y - &center.y;
    Point::new(
        &center.x + &(&(&cos * &dx) - &(&sin * &dy)),
        &center.y + &(&(&sin * &dx) + &(&cos * &dy)),
    )
}

/// Apex of the equilateral triangle erected on p→q, strictly on the given
/// side of the directed segment. Left is the positive-signed-area side.
pub fn equilateral_apex(p: &Point, q: &Point, side: Side) -> Result<Point, GeomError> {
    if p == q {
        return Err(GeomError::DegenerateSegment);
    }
    let k = match side {
        Side::Left => 1,
        Side::Right => -1,
    };
    Ok(rotate60k(p, q, k))
}

/// Half the cross product of (q − p) and (r − p); positive iff (p, q, r)
/// is counterclockwise.
pub fn signed_area(p: &Point, q: &Point, r: &Point) -> F3 {
    let d1x = &q.x - &p.x;
    let d1y = &q.y - &p.y;
    let d2x = &r.x - &p.x;
    let d2y = &r.y - &p.y;
    &(&(&d1x * &d2y) - &(&d1y * &d2x)) * &F3::rational(1, 2)
}

pub fn dist2(p: &Point, q: &Point) -> F3 {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &(&dx * &dx) + &(&dy * &dy)
}

fn dot(ux: &F3, uy: &F3, vx: &F3, vy: &F3) -> F3 {
    &(ux * vx) + &(uy * vy)
}

fn cross(ux: &F3, uy: &F3, vx: &F3, vy: &F3) -> F3 {
    &(ux * vy) - &(uy * vx)
}

/// Canonical coefficients of the line through two distinct points.
pub fn line_through(p: &Point, q: &Point) -> Result<LineCoeffs, GeomError> {
    if p == q {
        return Err(GeomError::DegenerateSegment);
    }
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    // normal (−dy, dx), then scale the first nonzero of (a, b) to 1
    let (a, b) = (-&dy, dx);
    let (a, b) = if !a.is_zero() {
        (F3::one(), &b / &a)
    } else {
        (F3::zero(), F3::one())
    };
    let c = -&(&(&a * &p.x) + &(&b * &p.y));
    Ok(LineCoeffs { a, b, c })
}

/// The unique common point of two non-parallel lines.
pub fn intersect_lines(l1: &LineCoeffs, l2: &LineCoeffs) -> Result<Point, GeomError> {
    let det = &(&l1.a * &l2.b) - &(&l2.a * &l1.b);
    if det.is_zero() {
        // canonical scaling makes parallel lines share (a, b) exactly
        return if l1.c == l2.c {
            Err(GeomError::CoincidentLines)
        } else {
            Err(GeomError::ParallelLines)
        };
    }
    let x = &(&(&l1.b * &l2.c) - &(&l2.b * &l1.c)) / &det;
    let y = &(&(&l2.a * &l1.c) - &(&l1.a * &l2.c)) / &det;
    Ok(Point::new(x, y))
}

/// Perpendicular bisector of pq: normal along q − p, through the midpoint.
fn perpendicular_bisector(p: &Point, q: &Point) -> Result<LineCoeffs, GeomError> {
    if p == q {
        return Err(GeomError::DegenerateSegment);
    }
    let (a, b) = (&q.x - &p.x, &q.y - &p.y);
    let (a, b) = if !a.is_zero() {
        (F3::one(), &b / &a)
    } else {
        (F3::zero(), F3::one())
    };
    let m = midpoint(p, q);
    let c = -&(&(&a * &m.x) + &(&b * &m.y));
    Ok(LineCoeffs { a, b, c })
}

/// Circle through three non-collinear points, as the meet of two
/// perpendicular bisectors.
pub fn circumcircle(p: &Point, q: &Point, r: &Point) -> Result<Circle, GeomError> {
    if collinear(p, q, r) {
        return Err(GeomError::CollinearPoints);
    }
    let b1 = perpendicular_bisector(p, q)?;
    let b2 = perpendicular_bisector(p, r)?;
    let center = intersect_lines(&b1, &b2)?;
    let r2 = dist2(&center, p);
    debug_assert_eq!(r2, dist2(&center, q));
    debug_assert_eq!(r2, dist2(&center, r));
    Ok(Circle { center, r2 })
}

pub fn on_circle(p: &Point, k: &Circle) -> bool {
    dist2(p, &k.center) == k.r2
}

/// True iff the four points lie on one circle or one line: the standard
/// lifting determinant
///
/// ```text
/// | x  y  x²+y²  1 |
/// ```
///
/// vanishes. Callers that need strict circularity combine this with a
/// collinearity test.
pub fn concyclic4(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    let lift = |t: &Point| -> (F3, F3, F3) {
        (
            &t.x - &p.x,
            &t.y - &p.y,
            &(&(&t.x * &t.x) + &(&t.y * &t.y))
                - &(&(&p.x * &p.x) + &(&p.y * &p.y)),
        )
    };
    let (x1, y1, z1) = lift(q);
    let (x2, y2, z2) = lift(r);
    let (x3, y3, z3) = lift(s);
    let det = &(&(&x1 * &(&(&y2 * &z3) - &(&y3 * &z2)))
        - &(&y1 * &(&(&x2 * &z3) - &(&x3 * &z2))))
        + &(&z1 * &(&(&x2 * &y3) - &(&x3 * &y2)));
    det.is_zero()
}

pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    signed_area(p, q, r).is_zero()
}

/// True iff the unsigned angle ∠(a, v, b) is exactly 120°.
///
/// Decided without square roots: the ray v→b must be the image of the ray
/// v→a under a ±120° rotation, i.e. for k = 2 or k = −2 the rotated vector
/// is parallel to v→b with positive dot product.
pub fn angle_eq_120(a: &Point, v: &Point, b: &Point) -> Result<bool, GeomError> {
    if a == v || b == v {
        return Err(GeomError::UndefinedAngle);
    }
    let wx = &b.x - &v.x;
    let wy = &b.y - &v.y;
    let origin = Point::new(F3::zero(), F3::zero());
    let u = Point::new(&a.x - &v.x, &a.y - &v.y);
    for k in [2, -2] {
        let ru = rotate60k(&origin, &u, k);
        if cross(&ru.x, &ru.y, &wx, &wy).is_zero() && dot(&ru.x, &ru.y, &wx, &wy).sign() > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Mirror image of `p` over the line; the foot of the perpendicular is
/// rational in the coefficients so the image stays in the field.
pub fn reflect_over_line(p: &Point, l: &LineCoeffs) -> Point {
    let norm2 = &(&l.a * &l.a) + &(&l.b * &l.b);
    let t = &(&(&(&l.a * &p.x) + &(&l.b * &p.y)) + &l.c) / &norm2;
    let two_t = &t * &F3::from_int(2);
    Point::new(&p.x - &(&two_t * &l.a), &p.y - &(&two_t * &l.b))
}

/// Central dilation: center + ratio·(p − center).
pub fn homothety(center: &Point, ratio: &F3, p: &Point) -> Point {
    Point::new(
        &center.x + &(ratio * &(&p.x - &center.x)),
        &center.y + &(ratio * &(&p.y - &center.y)),
    )
}

pub fn is_equilateral(p: &Point, q: &Point, r: &Point) -> bool {
    let d1 = dist2(p, q);
    let d2 = dist2(q, r);
    let d3 = dist2(r, p);
    d1 == d2 && d2 == d3 && !d1.is_zero()
}

/// Parallelogram criterion for the quadrilateral (p, q, r, s): the
/// diagonals p–r and q–s share a midpoint. Flat (degenerate) cases are
/// accepted uniformly.
pub fn diagonals_bisect(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    midpoint(p, r) == midpoint(q, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn f3(an: i64, ad: i64, bn: i64, bd: i64) -> F3 {
        F3::new(Rat::new(an, ad).unwrap(), Rat::new(bn, bd).unwrap())
    }

    fn pt4(xa: (i64, i64), xb: (i64, i64), ya: (i64, i64), yb: (i64, i64)) -> Point {
        Point::new(f3(xa.0, xa.1, xb.0, xb.1), f3(ya.0, ya.1, yb.0, yb.1))
    }

    #[test]
    fn midpoint_and_centroid() {
        assert_eq!(midpoint(&pt(0, 0), &pt(4, 0)), pt(2, 0));
        assert_eq!(midpoint(&pt(0, 0), &pt(0, 0)), pt(0, 0));
        // F3 components average too: ((1, √3), (3, −√3)) → (2, 0)
        let p = Point::new(F3::from_int(1), F3::sqrt3());
        let q = Point::new(F3::from_int(3), -&F3::sqrt3());
        assert_eq!(midpoint(&p, &q), pt(2, 0));

        let g = centroid3(&pt(0, 0), &pt(4, 0), &pt(0, 3));
        assert_eq!(g, pt4((4, 3), (0, 1), (1, 1), (0, 1)));
        assert_eq!(centroid3(&pt(5, -2), &pt(5, -2), &pt(5, -2)), pt(5, -2));
        // equilateral: centroid height is side·√3/6
        let apex = pt4((1, 2), (0, 1), (0, 1), (1, 2));
        let g = centroid3(&pt(0, 0), &pt(1, 0), &apex);
        assert_eq!(g, pt4((1, 2), (0, 1), (0, 1), (1, 6)));
    }

    #[test]
    fn rotations_by_sixty_degrees() {
        let o = pt(0, 0);
        assert_eq!(rotate60k(&o, &pt(1, 0), 1), pt4((1, 2), (0, 1), (0, 1), (1, 2)));
        assert_eq!(
            rotate60k(&pt(1, 0), &pt(2, 0), 1),
            pt4((3, 2), (0, 1), (0, 1), (1, 2))
        );
        assert_eq!(rotate60k(&o, &pt(1, 0), 2), pt4((-1, 2), (0, 1), (0, 1), (1, 2)));
        // six steps of +60° come home
        let mut p = pt(3, -7);
        for _ in 0..6 {
            p = rotate60k(&pt(1, 1), &p, 1);
        }
        assert_eq!(p, pt(3, -7));
        // two +60° steps equal one +120° step
        let p = pt(5, 2);
        let c = pt(-1, 4);
        assert_eq!(rotate60k(&c, &rotate60k(&c, &p, 1), 1), rotate60k(&c, &p, 2));
    }

    #[test]
    fn apex_lands_on_requested_side() {
        let a = pt(0, 0);
        let b = pt(4, 0);
        let right = equilateral_apex(&a, &b, Side::Right).unwrap();
        assert_eq!(right, pt4((2, 1), (0, 1), (0, 1), (-2, 1)));
        let left = equilateral_apex(&a, &b, Side::Left).unwrap();
        assert_eq!(left, pt4((2, 1), (0, 1), (0, 1), (2, 1)));
        // vertical segment, right of the upward direction
        let up = equilateral_apex(&pt(0, 0), &pt(0, 3), Side::Right).unwrap();
        assert_eq!(up, pt4((0, 1), (3, 2), (3, 2), (0, 1)));
        assert!(is_equilateral(&pt(0, 0), &pt(0, 3), &up));
        assert_eq!(signed_area(&pt(0, 0), &pt(0, 3), &up).sign(), -1);
        assert_eq!(
            equilateral_apex(&a, &a, Side::Left),
            Err(GeomError::DegenerateSegment)
        );
    }

    #[test]
    fn signed_area_orientation() {
        assert_eq!(signed_area(&pt(0, 0), &pt(1, 0), &pt(0, 1)), F3::rational(1, 2));
        assert_eq!(signed_area(&pt(0, 0), &pt(0, 1), &pt(1, 0)), F3::rational(-1, 2));
        assert_eq!(signed_area(&pt(0, 0), &pt(4, 0), &pt(0, 3)), F3::from_int(6));
    }

    #[test]
    fn squared_distances() {
        assert_eq!(dist2(&pt(0, 0), &pt(3, 4)), F3::from_int(25));
        let p = Point::new(F3::from_int(1), F3::sqrt3());
        assert_eq!(dist2(&pt(0, 0), &p), F3::from_int(4));
        // (0,3) to the outward apex (2, −2√3): 4 + (3 + 2√3)² = 25 + 12√3
        let apex = Point::new(F3::from_int(2), F3::sqrt3_scaled(-2, 1));
        assert_eq!(dist2(&pt(0, 3), &apex), f3(25, 1, 12, 1));
        let expect = 25.0 + 12.0 * 3.0_f64.sqrt();
        assert!((dist2(&pt(0, 3), &apex).to_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn lines_are_canonical() {
        let l = line_through(&pt(0, 0), &pt(1, 1)).unwrap();
        assert_eq!((l.a, l.b, l.c), (F3::one(), F3::from_int(-1), F3::zero()));
        let l = line_through(&pt(0, 0), &pt(0, 5)).unwrap();
        assert_eq!((l.a, l.b, l.c), (F3::one(), F3::zero(), F3::zero()));
        let l = line_through(&pt(0, 2), &pt(1, 2)).unwrap();
        assert_eq!((l.a, l.b, l.c), (F3::zero(), F3::one(), F3::from_int(-2)));
        assert_eq!(
            line_through(&pt(1, 2), &pt(1, 2)),
            Err(GeomError::DegenerateSegment)
        );
    }

    #[test]
    fn line_intersections() {
        let x0 = line_through(&pt(0, 0), &pt(0, 1)).unwrap();
        let y2 = line_through(&pt(0, 2), &pt(1, 2)).unwrap();
        assert_eq!(intersect_lines(&x0, &y2).unwrap(), pt(0, 2));

        let d1 = line_through(&pt(0, 0), &pt(1, 1)).unwrap();
        let d2 = line_through(&pt(0, 2), &pt(2, 0)).unwrap();
        assert_eq!(intersect_lines(&d1, &d2).unwrap(), pt(1, 1));

        let x1 = line_through(&pt(1, 0), &pt(1, 1)).unwrap();
        assert_eq!(intersect_lines(&x0, &x1), Err(GeomError::ParallelLines));
        assert_eq!(intersect_lines(&x0, &x0), Err(GeomError::CoincidentLines));
    }

    #[test]
    fn circumcircles() {
        // right angle at the origin: hypotenuse is a diameter
        let k = circumcircle(&pt(0, 0), &pt(4, 0), &pt(0, 3)).unwrap();
        assert_eq!(k.center, pt4((2, 1), (0, 1), (3, 2), (0, 1)));
        assert_eq!(k.r2, F3::rational(25, 4));
        // equilateral: circumradius² = side²/3
        let apex = pt4((1, 2), (0, 1), (0, 1), (1, 2));
        let k = circumcircle(&pt(0, 0), &pt(1, 0), &apex).unwrap();
        assert_eq!(k.center, pt4((1, 2), (0, 1), (0, 1), (1, 6)));
        assert_eq!(k.r2, F3::rational(1, 3));
        assert_eq!(
            circumcircle(&pt(0, 0), &pt(1, 1), &pt(2, 2)),
            Err(GeomError::CollinearPoints)
        );
    }

    #[test]
    fn circle_membership() {
        let k = circumcircle(&pt(0, 0), &pt(4, 0), &pt(0, 3)).unwrap();
        assert!(on_circle(&pt(4, 0), &k));
        assert!(on_circle(&pt(2, 4), &k)); // vertical offset 5/2 from center
        let unit = Circle { center: pt(0, 0), r2: F3::one() };
        assert!(!on_circle(&pt(0, 0), &unit));
    }

    #[test]
    fn concyclic_lifting_determinant() {
        assert!(concyclic4(&pt(0, 0), &pt(1, 0), &pt(1, 1), &pt(0, 1)));
        // four collinear points count as concyclic (common line)
        assert!(concyclic4(&pt(0, 0), &pt(1, 0), &pt(2, 0), &pt(3, 0)));
        assert!(!concyclic4(&pt(0, 0), &pt(1, 0), &pt(0, 1), &pt(1, 2)));
        // agrees with on_circle through a circumcircle
        let k = circumcircle(&pt(0, 0), &pt(4, 0), &pt(0, 3)).unwrap();
        assert!(concyclic4(&pt(0, 0), &pt(4, 0), &pt(0, 3), &pt(2, 4)));
        assert!(on_circle(&pt(2, 4), &k));
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&pt(0, 0), &pt(1, 1), &pt(2, 2)));
        assert!(!collinear(&pt(0, 0), &pt(1, 0), &pt(0, 1)));
        assert!(collinear(&pt(7, 7), &pt(7, 7), &pt(1, 2)));
    }

    #[test]
    fn exact_120_degree_test() {
        let v = pt(0, 0);
        let a = pt(1, 0);
        let b = pt4((-1, 2), (0, 1), (0, 1), (1, 2));
        assert!(angle_eq_120(&a, &v, &b).unwrap());
        assert!(!angle_eq_120(&a, &v, &pt(0, 1)).unwrap());
        // unsigned: the rotation the other way also counts
        let b = pt4((-1, 2), (0, 1), (0, 1), (-1, 2));
        assert!(angle_eq_120(&a, &v, &b).unwrap());
        // scaling the rays does not matter
        let b = pt4((-3, 1), (0, 1), (0, 1), (3, 1));
        assert!(angle_eq_120(&a, &v, &b).unwrap());
        assert_eq!(angle_eq_120(&v, &v, &b), Err(GeomError::UndefinedAngle));
    }

    #[test]
    fn reflections() {
        let y0 = line_through(&pt(0, 0), &pt(1, 0)).unwrap();
        assert_eq!(reflect_over_line(&pt(0, 1), &y0), pt(0, -1));
        let x1 = line_through(&pt(1, 0), &pt(1, 1)).unwrap();
        assert_eq!(reflect_over_line(&pt(2, 0), &x1), pt(0, 0));
        // fixed points stay fixed
        let d = line_through(&pt(0, 0), &pt(1, 1)).unwrap();
        assert_eq!(reflect_over_line(&pt(3, 3), &d), pt(3, 3));
        // involution
        let p = pt4((2, 3), (5, 1), (-1, 7), (2, 1));
        assert_eq!(reflect_over_line(&reflect_over_line(&p, &d), &d), p);
    }

    #[test]
    fn homothety_cases() {
        let half_back = F3::rational(-1, 2);
        assert_eq!(homothety(&pt(0, 0), &half_back, &pt(2, 4)), pt(-1, -2));
        assert_eq!(homothety(&pt(9, -4), &F3::one(), &pt(2, 4)), pt(2, 4));
        // G₃′ ↦ C* for the 3-4-5 triangle
        let g = pt4((4, 3), (0, 1), (1, 1), (0, 1));
        let g3p = pt4((2, 1), (0, 1), (0, 1), (2, 3));
        let cstar = homothety(&g, &half_back, &g3p);
        assert_eq!(cstar, pt4((1, 1), (0, 1), (3, 2), (-1, 3)));
    }

    #[test]
    fn equilateral_predicate() {
        let apex = pt4((1, 2), (0, 1), (0, 1), (1, 2));
        assert!(is_equilateral(&pt(0, 0), &pt(1, 0), &apex));
        assert!(!is_equilateral(&pt(0, 0), &pt(1, 0), &pt(0, 1)));
        assert!(!is_equilateral(&pt(2, 2), &pt(2, 2), &pt(2, 2)));
    }

    #[test]
    fn parallelogram_criterion() {
        assert!(diagonals_bisect(&pt(0, 0), &pt(1, 0), &pt(1, 1), &pt(0, 1)));
        assert!(!diagonals_bisect(&pt(0, 0), &pt(1, 0), &pt(1, 1), &pt(5, 5)));
        // flat case: both diagonals are the segment p-q
        assert!(diagonals_bisect(&pt(3, 1), &pt(3, 1), &pt(-2, 4), &pt(-2, 4)));
        // a doubled segment is not a parallelogram under the criterion
        assert!(!diagonals_bisect(&pt(3, 1), &pt(-2, 4), &pt(3, 1), &pt(-2, 4)));
    }
}
