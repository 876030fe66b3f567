//! Certification of the classical claims over a [`NapoleonBundle`].
//!
//! Each check evaluates one named claim as a conjunction of exact field
//! equalities and sign tests, and reports every sub-comparison (with the
//! exact quantities involved) in its details string. Failures are results,
//! never errors: a check on a tampered bundle comes back `passed = false`
//! with the violated equalities listed, which is what the fuzz harness
//! needs for triage.

use serde::Serialize;

use crate::geom::{
    GeomError, Point, angle_eq_120, centroid3, collinear, dist2, homothety, is_equilateral,
    line_through, midpoint, on_circle, reflect_over_line, signed_area,
};
use crate::napoleon::{AreaLedger, NapoleonBundle, build_bundle};
use crate::qsqrt3::F3;

/// Outcome of one certified claim.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    /// Stable claim identifier: one of `basic_lemma`, `napoleon`,
    /// `reflection_device`, `midpoints_centroids`, `grunbaum`,
    /// or `construction` when the bundle could not be built.
    pub name: String,
    pub passed: bool,
    /// Every sub-equality evaluated, with the exact values compared.
    pub details: String,
}

/// The base triangle a report was produced for.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleInput {
    #[serde(rename = "A")]
    pub a: Point,
    #[serde(rename = "B")]
    pub b: Point,
    #[serde(rename = "C")]
    pub c: Point,
}

/// Aggregate verdict over all claims for one base triangle.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub input: TriangleInput,
    pub results: Vec<CheckResult>,
    pub all_passed: bool,
    /// The six signed areas of the identities; absent when construction
    /// failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ledger: Option<AreaLedger>,
    /// dist²(A, A₁), the common squared cevian length; absent when
    /// construction failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cevian_len2: Option<F3>,
}

/// Accumulates sub-checks for one claim.
struct Checker {
    name: &'static str,
    lines: Vec<String>,
    passed: bool,
}

impl Checker {
    fn new(name: &'static str) -> Self {
        Checker { name, lines: Vec::new(), passed: true }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn claim(&mut self, label: &str, ok: bool, detail: String) {
        if ok {
            self.lines.push(format!("ok {label}: {detail}"));
        } else {
            self.passed = false;
            self.lines.push(format!("FAIL {label}: {detail}"));
        }
    }

    fn eq_f3(&mut self, label: &str, lhs: &F3, rhs: &F3) {
        self.claim(label, lhs == rhs, format!("{lhs} vs {rhs}"));
    }

    fn eq_point(&mut self, label: &str, lhs: &Point, rhs: &Point) {
        self.claim(label, lhs == rhs, format!("{lhs} vs {rhs}"));
    }

    fn is_true(&mut self, label: &str, ok: bool) {
        self.claim(label, ok, String::from(if ok { "holds" } else { "violated" }));
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.passed,
            details: self.lines.join("; "),
        }
    }
}

/// True iff the angle at `v` between the rays to `x` and `y` is strictly
/// below 120°, decided exactly: for non-negative dot the angle is at most
/// 90°; otherwise compare |u|²|w|² against (2 u·w)².
fn angle_lt_120(v: &Point, x: &Point, y: &Point) -> bool {
    let ux = &x.x - &v.x;
    let uy = &x.y - &v.y;
    let wx = &y.x - &v.x;
    let wy = &y.y - &v.y;
    let dot = &(&ux * &wx) + &(&uy * &wy);
    if dot.sign() >= 0 {
        return true;
    }
    let norms = &dist2(v, x) * &dist2(v, y);
    let four_dot2 = &(&dot * &dot) * &F3::from_int(4);
    norms > four_dot2
}

/// J strictly between the endpoints or at one of them: both projections
/// onto the segment direction are non-negative. Assumes collinearity is
/// checked separately.
fn within_segment(j: &Point, p: &Point, q: &Point) -> bool {
    let along = |from: &Point, to: &Point| {
        let dx = &to.x - &from.x;
        let dy = &to.y - &from.y;
        let jx = &j.x - &from.x;
        let jy = &j.y - &from.y;
        (&(&dx * &jx) + &(&dy * &jy)).sign() >= 0
    };
    along(p, q) && along(q, p)
}

/// Equal cevian lengths, concurrency of the cevian lines at J, J on all
/// three flank circles; when every base angle is below 120°, also the
/// three 120° angles at J and J's membership in the closed cevian
/// segments.
pub fn check_basic_lemma(bundle: &NapoleonBundle) -> CheckResult {
    let mut ck = Checker::new("basic_lemma");
    let (a, b, c) = &bundle.base;
    let (a1, b1, c1) = &bundle.outward_apexes;
    let j = &bundle.fermat;

    let da = dist2(a, a1);
    let db = dist2(b, b1);
    let dc = dist2(c, c1);
    ck.eq_f3("dist2(A,A1) = dist2(B,B1)", &da, &db);
    ck.eq_f3("dist2(B,B1) = dist2(C,C1)", &db, &dc);

    ck.is_true("J on line AA1", collinear(a, a1, j));
    ck.is_true("J on line BB1", collinear(b, b1, j));
    ck.is_true("J on line CC1", collinear(c, c1, j));

    let (k1, k2, k3) = &bundle.flank_circles;
    ck.is_true("J on K1", on_circle(j, k1));
    ck.is_true("J on K2", on_circle(j, k2));
    ck.is_true("J on K3", on_circle(j, k3));

    let acute_enough =
        angle_lt_120(a, b, c) && angle_lt_120(b, c, a) && angle_lt_120(c, a, b);
    if acute_enough {
        for (x, y, label) in [(a, b, "angle(A,J,B)"), (b, c, "angle(B,J,C)"), (c, a, "angle(C,J,A)")]
        {
            match angle_eq_120(x, j, y) {
                Ok(ok) => ck.is_true(&format!("{label} = 120°"), ok),
                Err(e) => ck.claim(&format!("{label} = 120°"), false, e.to_string()),
            }
        }
        ck.is_true("J within segment AA1", within_segment(j, a, a1));
        ck.is_true("J within segment BB1", within_segment(j, b, b1));
        ck.is_true("J within segment CC1", within_segment(j, c, c1));
    } else {
        ck.note("angle/segment claims skipped: a base angle is >= 120°");
    }
    ck.finish()
}

/// The outer Napoleon triangle is equilateral with centroid G; the inner
/// one likewise or collapsed to G; outer + inner areas sum to the base
/// area.
pub fn check_napoleon(bundle: &NapoleonBundle) -> CheckResult {
    let mut ck = Checker::new("napoleon");
    let (g1, g2, g3) = &bundle.flank_centroids_out;
    let (g1p, g2p, g3p) = &bundle.flank_centroids_in;
    let g = &bundle.centroid;

    ck.is_true("G1G2G3 equilateral", is_equilateral(g1, g2, g3));
    ck.eq_point("centroid(G1,G2,G3) = G", &centroid3(g1, g2, g3), g);

    let inner_ok = is_equilateral(g1p, g2p, g3p) || (g1p == g2p && g2p == g3p && g3p == g);
    ck.is_true("G1'G2'G3' equilateral or collapsed to G", inner_ok);
    ck.eq_point("centroid(G1',G2',G3') = G", &centroid3(g1p, g2p, g3p), g);

    let ledger = bundle.area_ledger();
    ck.eq_f3(
        "outer + inner = S",
        &(&ledger.outer_napoleon + &ledger.inner_napoleon),
        &ledger.s,
    );
    ck.finish()
}

/// The proof device for the area identity: the reflection P of C over
/// G₁G₂ coincides with the reflections of A over G₂G₃ and of B over G₃G₁,
/// is equidistant with B from G₁, and equals J.
pub fn check_reflection_device(bundle: &NapoleonBundle) -> CheckResult {
    let mut ck = Checker::new("reflection_device");
    let (a, b, c) = &bundle.base;
    let (g1, g2, g3) = &bundle.flank_centroids_out;

    let lines = (
        line_through(g1, g2),
        line_through(g2, g3),
        line_through(g3, g1),
    );
    let (l12, l23, l31) = match lines {
        (Ok(l12), Ok(l23), Ok(l31)) => (l12, l23, l31),
        _ => {
            ck.claim(
                "outer Napoleon sides exist",
                false,
                GeomError::DegenerateSegment.to_string(),
            );
            return ck.finish();
        }
    };
    let p = reflect_over_line(c, &l12);
    ck.eq_point("reflect(A, G2G3) = P", &reflect_over_line(a, &l23), &p);
    ck.eq_point("reflect(B, G3G1) = P", &reflect_over_line(b, &l31), &p);
    ck.eq_f3("dist2(G1,P) = dist2(G1,B)", &dist2(g1, &p), &dist2(g1, b));
    ck.eq_point("P = J", &p, &bundle.fermat);
    ck.finish()
}

/// The midpoint coincidences between the two configurations, the rhombus
/// AC₁BC₁′, the common centroids, and the mid-segment facts that locate
/// the side midpoints against the second-level points.
pub fn check_midpoints_and_centroids(bundle: &NapoleonBundle) -> CheckResult {
    let mut ck = Checker::new("midpoints_centroids");
    let (a, b, c) = &bundle.base;
    let (m1, m2, m3) = &bundle.side_midpoints;
    let (a1, b1, c1) = &bundle.outward_apexes;
    let (a1p, b1p, c1p) = &bundle.inward_apexes;
    let (a2, b2, c2) = &bundle.apex_midpoints_out;
    let (a2p, b2p, c2p) = &bundle.apex_midpoints_in;
    let g = &bundle.centroid;

    ck.eq_point("A2 = midpoint(A,A1')", a2, &midpoint(a, a1p));
    ck.eq_point("B2 = midpoint(B,B1')", b2, &midpoint(b, b1p));
    ck.eq_point("C2 = midpoint(C,C1')", c2, &midpoint(c, c1p));

    let s1 = dist2(a, c1);
    let s2 = dist2(c1, b);
    let s3 = dist2(b, c1p);
    let s4 = dist2(c1p, a);
    ck.eq_f3("rhombus AC1BC1': |AC1| = |C1B|", &s1, &s2);
    ck.eq_f3("rhombus AC1BC1': |C1B| = |BC1'|", &s2, &s3);
    ck.eq_f3("rhombus AC1BC1': |BC1'| = |C1'A|", &s3, &s4);

    ck.eq_point("centroid(A1,B1,C1) = G", &centroid3(a1, b1, c1), g);
    ck.eq_point("centroid(A2,B2,C2) = G", &centroid3(a2, b2, c2), g);

    ck.eq_point("A2' = midpoint(A,A1)", a2p, &midpoint(a, a1));
    ck.eq_point("B2' = midpoint(B,B1)", b2p, &midpoint(b, b1));
    ck.eq_point("C2' = midpoint(C,C1)", c2p, &midpoint(c, c1));
    ck.eq_point("centroid(A1',B1',C1') = G", &centroid3(a1p, b1p, c1p), g);

    // mid-segment facts: M₂C₂ ∥ C₁B with 2·M₂C₂ = C₁B, and cyclically
    for (mi, x2, y1, z, label) in [
        (m2, c2, c1, b, "M2C2 ~ C1B"),
        (m3, a2, a1, c, "M3A2 ~ A1C"),
        (m1, b2, b1, a, "M1B2 ~ B1A"),
    ] {
        let vx = &x2.x - &mi.x;
        let vy = &x2.y - &mi.y;
        let wx = &z.x - &y1.x;
        let wy = &z.y - &y1.y;
        let cross = &(&vx * &wy) - &(&vy * &wx);
        ck.is_true(&format!("{label} parallel"), cross.is_zero());
        ck.eq_f3(
            &format!("{label} half length"),
            &(&dist2(mi, x2) * &F3::from_int(4)),
            &dist2(y1, z),
        );
    }
    ck.finish()
}

/// The seven statements about the second-level configuration: the six
/// midpoint-flank triangles are equilateral, A/B/C sit as inward apexes of
/// A₂B₂C₂, both star triangles are equilateral with centroid G, the two
/// homothety correspondences with ratio −1/2 about G, and the four-fold
/// area identity.
pub fn check_grunbaum(bundle: &NapoleonBundle) -> CheckResult {
    let mut ck = Checker::new("grunbaum");
    // labeling note: the star centroids use the opposite-vertex pairing,
    // A* <-> AB2C2, B* <-> A2BC2, C* <-> A2B2C, and likewise for A**.
    ck.note("convention: A*,B*,C* are the centroids of AB2C2, A2BC2, A2B2C");
    let (a, b, c) = &bundle.base;
    let (a2, b2, c2) = &bundle.apex_midpoints_out;
    let (a2p, b2p, c2p) = &bundle.apex_midpoints_in;
    let (g1, g2, g3) = &bundle.flank_centroids_out;
    let (g1p, g2p, g3p) = &bundle.flank_centroids_in;
    let (astar, bstar, cstar) = &bundle.second_centroids_out;
    let (ass, bss, css) = &bundle.second_centroids_in;
    let g = &bundle.centroid;

    // (1) midpoint flanks of the outward configuration
    ck.is_true("A2B2C equilateral", is_equilateral(a2, b2, c));
    ck.is_true("AB2C2 equilateral", is_equilateral(a, b2, c2));
    ck.is_true("A2BC2 equilateral", is_equilateral(a2, b, c2));
    // (3) and of the inward configuration
    ck.is_true("A2'B2'C equilateral", is_equilateral(a2p, b2p, c));
    ck.is_true("AB2'C2' equilateral", is_equilateral(a, b2p, c2p));
    ck.is_true("A2'BC2' equilateral", is_equilateral(a2p, b, c2p));

    // A, B, C overlap △A2B2C2: each on the same side as the opposite vertex
    for (p, q, apex, opposite, label) in [
        (b2, c2, a, a2, "A overlaps side B2C2"),
        (c2, a2, b, b2, "B overlaps side C2A2"),
        (a2, b2, c, c2, "C overlaps side A2B2"),
    ] {
        let ok = signed_area(p, q, apex).sign() == signed_area(p, q, opposite).sign();
        ck.is_true(label, ok);
    }

    // (2), (4) star triangles: equilateral (or collapsed to G) with centroid G
    let star_ok =
        is_equilateral(astar, bstar, cstar) || (astar == bstar && bstar == cstar && cstar == g);
    ck.is_true("A*B*C* equilateral or collapsed to G", star_ok);
    ck.eq_point("centroid(A*,B*,C*) = G", &centroid3(astar, bstar, cstar), g);
    let ss_ok = is_equilateral(ass, bss, css) || (ass == bss && bss == css && css == g);
    ck.is_true("A**B**C** equilateral or collapsed to G", ss_ok);
    ck.eq_point("centroid(A**,B**,C**) = G", &centroid3(ass, bss, css), g);

    // (5), (6) homothety correspondences about G with ratio −1/2
    let ratio = F3::rational(-1, 2);
    ck.eq_point("A* = h(G,-1/2)(G1')", astar, &homothety(g, &ratio, g1p));
    ck.eq_point("B* = h(G,-1/2)(G2')", bstar, &homothety(g, &ratio, g2p));
    ck.eq_point("C* = h(G,-1/2)(G3')", cstar, &homothety(g, &ratio, g3p));
    ck.eq_point("A** = h(G,-1/2)(G1)", ass, &homothety(g, &ratio, g1));
    ck.eq_point("B** = h(G,-1/2)(G2)", bss, &homothety(g, &ratio, g2));
    ck.eq_point("C** = h(G,-1/2)(G3)", css, &homothety(g, &ratio, g3));

    // (7) S = 4 (second_outer + second_inner)
    let ledger = bundle.area_ledger();
    ck.eq_f3(
        "S = 4*(second_outer + second_inner)",
        &ledger.s,
        &(&(&ledger.second_outer + &ledger.second_inner) * &F3::from_int(4)),
    );
    ck.finish()
}

/// Build the configuration and run all five checks in order. Total over
/// all inputs: a degenerate triangle produces a report with a single
/// failed `construction` result.
pub fn run_all(a: &Point, b: &Point, c: &Point) -> Report {
    let input = TriangleInput { a: a.clone(), b: b.clone(), c: c.clone() };
    match build_bundle(a, b, c) {
        Err(e) => Report {
            input,
            results: vec![CheckResult {
                name: "construction".to_string(),
                passed: false,
                details: e.to_string(),
            }],
            all_passed: false,
            ledger: None,
            cevian_len2: None,
        },
        Ok(bundle) => {
            let results = run_checks(&bundle);
            let all_passed = results.iter().all(|r| r.passed);
            let (a0, _, _) = &bundle.base;
            let (a1, _, _) = &bundle.outward_apexes;
            Report {
                input,
                all_passed,
                ledger: Some(bundle.area_ledger()),
                cevian_len2: Some(dist2(a0, a1)),
                results,
            }
        }
    }
}

/// The five claim checks, in report order, over an existing bundle.
pub fn run_checks(bundle: &NapoleonBundle) -> Vec<CheckResult> {
    vec![
        check_basic_lemma(bundle),
        check_napoleon(bundle),
        check_reflection_device(bundle),
        check_midpoints_and_centroids(bundle),
        check_grunbaum(bundle),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsqrt3::Rat;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn canonical_bundle() -> NapoleonBundle {
        build_bundle(&pt(0, 0), &pt(4, 0), &pt(0, 3)).unwrap()
    }

    fn nudge(p: &mut Point) {
        p.x = &p.x + &F3::rational(1, 7);
    }

    #[test]
    fn all_checks_pass_on_the_canonical_triangle() {
        let report = run_all(&pt(0, 0), &pt(4, 0), &pt(0, 3));
        assert!(report.all_passed, "{report:?}");
        assert_eq!(report.results.len(), 5);
        let names: Vec<_> = report.results.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(
            names,
            ["basic_lemma", "napoleon", "reflection_device", "midpoints_centroids", "grunbaum"]
        );
        assert_eq!(
            report.cevian_len2.unwrap(),
            F3::new(Rat::from_int(25), Rat::from_int(12))
        );
    }

    #[test]
    fn all_checks_pass_on_an_equilateral_triangle() {
        let c = Point::new(F3::rational(1, 2), F3::sqrt3_scaled(1, 2));
        let report = run_all(&pt(0, 0), &pt(1, 0), &c);
        assert!(report.all_passed, "{report:?}");
        // equilateral side 2 at an arbitrary rational position
        let a = Point::new(F3::rational(22, 7), F3::rational(-3, 5));
        let b = Point::new(&a.x + &F3::from_int(2), a.y.clone());
        let c = Point::new(&a.x + &F3::from_int(1), &a.y + &F3::sqrt3());
        assert!(run_all(&a, &b, &c).all_passed);
    }

    #[test]
    fn degenerate_input_yields_a_construction_failure() {
        let report = run_all(&pt(0, 0), &pt(1, 0), &pt(2, 0));
        assert!(!report.all_passed);
        assert_eq!(report.results.len(), 1);
        assert_eq!(report.results[0].name, "construction");
        assert_eq!(report.results[0].details, "degenerate triangle");
        assert!(report.ledger.is_none());
    }

    #[test]
    fn tampered_apex_fails_the_basic_lemma() {
        let mut bundle = canonical_bundle();
        nudge(&mut bundle.outward_apexes.0);
        let result = check_basic_lemma(&bundle);
        assert!(!result.passed);
        assert!(result.details.contains("FAIL"));
        assert!(result.details.contains("dist2(A,A1)"));
    }

    #[test]
    fn tampered_centroid_fails_napoleon() {
        let mut bundle = canonical_bundle();
        nudge(&mut bundle.flank_centroids_out.1);
        assert!(!check_napoleon(&bundle).passed);
    }

    #[test]
    fn tampered_fermat_point_fails_the_reflection_device() {
        let mut bundle = canonical_bundle();
        bundle.fermat = bundle.centroid.clone();
        let result = check_reflection_device(&bundle);
        assert!(!result.passed);
        assert!(result.details.contains("FAIL P = J"));
    }

    #[test]
    fn tampered_apex_midpoint_fails_the_midpoint_lemma() {
        let mut bundle = canonical_bundle();
        nudge(&mut bundle.apex_midpoints_out.2);
        assert!(!check_midpoints_and_centroids(&bundle).passed);
    }

    #[test]
    fn tampered_second_centroid_fails_grunbaum() {
        let mut bundle = canonical_bundle();
        nudge(&mut bundle.second_centroids_in.0);
        let result = check_grunbaum(&bundle);
        assert!(!result.passed);
        assert!(result.details.contains("FAIL A** = h(G,-1/2)(G1)"));
    }

    #[test]
    fn report_serialization_shape() {
        let report = run_all(&pt(0, 0), &pt(4, 0), &pt(0, 3));
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["all_passed"], serde_json::json!(true));
        assert_eq!(v["input"]["B"]["x"]["a"], serde_json::json!("4"));
        assert_eq!(v["results"][0]["name"], serde_json::json!("basic_lemma"));
        assert_eq!(v["ledger"]["S"], serde_json::json!({"a": "6", "b": "0"}));
        assert_eq!(
            v["cevian_len2"],
            serde_json::json!({"a": "25", "b": "12"})
        );
        // degenerate reports omit the ledger entirely
        let v = serde_json::to_value(&run_all(&pt(0, 0), &pt(1, 0), &pt(2, 0))).unwrap();
        assert!(v.get("ledger").is_none());
    }

    #[test]
    fn obtuse_triangle_skips_angle_claims_but_passes() {
        // angle at A is well above 120°
        let report = run_all(&pt(0, 0), &pt(10, 1), &pt(-10, 2));
        assert!(report.all_passed, "{report:?}");
        let basic = &report.results[0];
        assert!(basic.details.contains("skipped"));
    }
}
