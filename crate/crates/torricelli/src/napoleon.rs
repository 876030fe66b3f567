//! Construction of Napoleon configurations.
//!
//! Given a non-degenerate base triangle ABC, [`build_bundle`] materializes
//! every point the classical statements name: the outward and inward
//! equilateral apexes, their midpoint triangles, the flank centroids (the
//! Napoleon triangles), the second-level centroids, the common point J of
//! the cevians, the three flank circumcircles and the centroid G.
//!
//! Outward/inward is decided per side by half-plane membership relative to
//! the remaining vertex, so triangles labeled clockwise work unchanged.

use serde::Serialize;
use serde::ser::{SerializeMap, Serializer};

use crate::geom::{
    Circle, GeomError, Point, Side, centroid3, circumcircle, collinear, equilateral_apex,
    intersect_lines, line_through, midpoint, signed_area,
};
use crate::qsqrt3::F3;

/// Every named object of a full Napoleon configuration for one base
/// triangle. Tuples are in label order: `base` is (A, B, C),
/// `outward_apexes` is (A₁, B₁, C₁), and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NapoleonBundle {
    /// A, B, C
    pub base: (Point, Point, Point),
    /// M₁, M₂, M₃ — midpoints of BC, CA, AB
    pub side_midpoints: (Point, Point, Point),
    /// A₁, B₁, C₁ — apexes erected away from the opposite vertex
    pub outward_apexes: (Point, Point, Point),
    /// A₁′, B₁′, C₁′ — apexes erected toward the opposite vertex
    pub inward_apexes: (Point, Point, Point),
    /// A₂, B₂, C₂ — midpoints of B₁C₁, C₁A₁, A₁B₁
    pub apex_midpoints_out: (Point, Point, Point),
    /// A₂′, B₂′, C₂′ — midpoints of B₁′C₁′, C₁′A₁′, A₁′B₁′
    pub apex_midpoints_in: (Point, Point, Point),
    /// G₁, G₂, G₃ — centroids of A₁BC, AB₁C, ABC₁ (outer Napoleon triangle)
    pub flank_centroids_out: (Point, Point, Point),
    /// G₁′, G₂′, G₃′ — inner Napoleon triangle
    pub flank_centroids_in: (Point, Point, Point),
    /// A*, B*, C* — centroids of AB₂C₂, A₂BC₂, A₂B₂C
    pub second_centroids_out: (Point, Point, Point),
    /// A**, B**, C** — centroids of AB₂′C₂′, A₂′BC₂′, A₂′B₂′C
    pub second_centroids_in: (Point, Point, Point),
    /// J — common point of the lines AA₁, BB₁, CC₁ and of the flank circles
    pub fermat: Point,
    /// K₁, K₂, K₃ — circumcircles of A₁BC, AB₁C, ABC₁
    pub flank_circles: (Circle, Circle, Circle),
    /// G — centroid of ABC
    pub centroid: Point,
}

/// The six signed areas the area identities quantify over, all by shoelace
/// on the fixed label orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AreaLedger {
    /// Signed area of ABC.
    #[serde(rename = "S")]
    pub s: F3,
    /// Sum of the unsigned flank areas; equals (√3/4)(a² + b² + c²).
    pub flank_sum: F3,
    /// Signed area of (G₁, G₂, G₃).
    pub outer_napoleon: F3,
    /// Signed area of (G₁′, G₂′, G₃′).
    pub inner_napoleon: F3,
    /// Signed area of (A*, B*, C*).
    pub second_outer: F3,
    /// Signed area of (A**, B**, C**).
    pub second_inner: F3,
}

/// Apex of the equilateral triangle on p→q lying on the chosen side of the
/// line pq: away from `reference` or toward it. Errors when the three
/// points are collinear (no side to speak of).
fn apex_relative(
    p: &Point,
    q: &Point,
    reference: &Point,
    toward: bool,
) -> Result<Point, GeomError> {
    let ref_sign = signed_area(p, q, reference).sign();
    if ref_sign == 0 {
        return Err(GeomError::DegenerateTriangle);
    }
    let want = if toward { ref_sign } else { -ref_sign };
    let left = equilateral_apex(p, q, Side::Left)?;
    if signed_area(p, q, &left).sign() == want {
        Ok(left)
    } else {
        equilateral_apex(p, q, Side::Right)
    }
}

/// Apex on side p→q on the far side from `reference`.
pub fn outward_apex(p: &Point, q: &Point, reference: &Point) -> Result<Point, GeomError> {
    apex_relative(p, q, reference, false)
}

/// Apex on side p→q on the same side as `reference`.
pub fn inward_apex(p: &Point, q: &Point, reference: &Point) -> Result<Point, GeomError> {
    apex_relative(p, q, reference, true)
}

/// Apexes (A₁, B₁, C₁) erected on BC, CA, AB away from the opposite vertex.
pub fn build_outward_apexes(
    a: &Point,
    b: &Point,
    c: &Point,
) -> Result<(Point, Point, Point), GeomError> {
    Ok((
        apex_relative(b, c, a, false)?,
        apex_relative(c, a, b, false)?,
        apex_relative(a, b, c, false)?,
    ))
}

/// Apexes (A₁′, B₁′, C₁′) erected toward the opposite vertex.
pub fn build_inward_apexes(
    a: &Point,
    b: &Point,
    c: &Point,
) -> Result<(Point, Point, Point), GeomError> {
    Ok((
        apex_relative(b, c, a, true)?,
        apex_relative(c, a, b, true)?,
        apex_relative(a, b, c, true)?,
    ))
}

/// Common point J of the cevian lines AA₁ and BB₁. The classical facts —
/// that CC₁ passes through it too and that it lies on all three flank
/// circles — are the caller's to certify.
pub fn fermat_point(
    a: &Point,
    a1: &Point,
    b: &Point,
    b1: &Point,
) -> Result<Point, GeomError> {
    if a == a1 || b == b1 {
        return Err(GeomError::DegenerateCevian);
    }
    let la = line_through(a, a1)?;
    let lb = line_through(b, b1)?;
    intersect_lines(&la, &lb).map_err(|_| GeomError::NoIntersection)
}

/// Build the full configuration for a non-degenerate base triangle.
pub fn build_bundle(a: &Point, b: &Point, c: &Point) -> Result<NapoleonBundle, GeomError> {
    if collinear(a, b, c) {
        return Err(GeomError::DegenerateTriangle);
    }
    let (a1, b1, c1) = build_outward_apexes(a, b, c)?;
    let (a1p, b1p, c1p) = build_inward_apexes(a, b, c)?;

    let side_midpoints = (midpoint(b, c), midpoint(c, a), midpoint(a, b));
    let apex_midpoints_out = (midpoint(&b1, &c1), midpoint(&c1, &a1), midpoint(&a1, &b1));
    let apex_midpoints_in = (
        midpoint(&b1p, &c1p),
        midpoint(&c1p, &a1p),
        midpoint(&a1p, &b1p),
    );
    let flank_centroids_out = (centroid3(&a1, b, c), centroid3(a, &b1, c), centroid3(a, b, &c1));
    let flank_centroids_in = (
        centroid3(&a1p, b, c),
        centroid3(a, &b1p, c),
        centroid3(a, b, &c1p),
    );
    let (a2, b2, c2) = &apex_midpoints_out;
    let second_centroids_out = (centroid3(a, b2, c2), centroid3(a2, b, c2), centroid3(a2, b2, c));
    let (a2p, b2p, c2p) = &apex_midpoints_in;
    let second_centroids_in = (
        centroid3(a, b2p, c2p),
        centroid3(a2p, b, c2p),
        centroid3(a2p, b2p, c),
    );
    let fermat = fermat_point(a, &a1, b, &b1)?;
    let flank_circles = (
        circumcircle(&a1, b, c)?,
        circumcircle(a, &b1, c)?,
        circumcircle(a, b, &c1)?,
    );
    let centroid = centroid3(a, b, c);

    Ok(NapoleonBundle {
        base: (a.clone(), b.clone(), c.clone()),
        side_midpoints,
        outward_apexes: (a1, b1, c1),
        inward_apexes: (a1p, b1p, c1p),
        apex_midpoints_out,
        apex_midpoints_in,
        flank_centroids_out,
        flank_centroids_in,
        second_centroids_out,
        second_centroids_in,
        fermat,
        flank_circles,
        centroid,
    })
}

impl NapoleonBundle {
    /// The six signed areas of the classical identities, by shoelace on
    /// the fixed label orders.
    pub fn area_ledger(&self) -> AreaLedger {
        let (a, b, c) = &self.base;
        let (a1, b1, c1) = &self.outward_apexes;
        let (g1, g2, g3) = &self.flank_centroids_out;
        let (g1p, g2p, g3p) = &self.flank_centroids_in;
        let (astar, bstar, cstar) = &self.second_centroids_out;
        let (ass, bss, css) = &self.second_centroids_in;
        AreaLedger {
            s: signed_area(a, b, c),
            flank_sum: signed_area(a1, b, c).abs()
                + signed_area(a, b1, c).abs()
                + signed_area(a, b, c1).abs(),
            outer_napoleon: signed_area(g1, g2, g3),
            inner_napoleon: signed_area(g1p, g2p, g3p),
            second_outer: signed_area(astar, bstar, cstar),
            second_inner: signed_area(ass, bss, css),
        }
    }

    /// All 32 named points in label order, with the names used by the JSON
    /// and SVG encodings (`p` suffix for primes, `star` for asterisks).
    pub fn point_entries(&self) -> Vec<(&'static str, &Point)> {
        let (a, b, c) = &self.base;
        let (m1, m2, m3) = &self.side_midpoints;
        let (a1, b1, c1) = &self.outward_apexes;
        let (a1p, b1p, c1p) = &self.inward_apexes;
        let (a2, b2, c2) = &self.apex_midpoints_out;
        let (a2p, b2p, c2p) = &self.apex_midpoints_in;
        let (g1, g2, g3) = &self.flank_centroids_out;
        let (g1p, g2p, g3p) = &self.flank_centroids_in;
        let (astar, bstar, cstar) = &self.second_centroids_out;
        let (ass, bss, css) = &self.second_centroids_in;
        vec![
            ("A", a),
            ("B", b),
            ("C", c),
            ("M1", m1),
            ("M2", m2),
            ("M3", m3),
            ("A1", a1),
            ("B1", b1),
            ("C1", c1),
            ("A1p", a1p),
            ("B1p", b1p),
            ("C1p", c1p),
            ("A2", a2),
            ("B2", b2),
            ("C2", c2),
            ("A2p", a2p),
            ("B2p", b2p),
            ("C2p", c2p),
            ("G1", g1),
            ("G2", g2),
            ("G3", g3),
            ("G1p", g1p),
            ("G2p", g2p),
            ("G3p", g3p),
            ("Astar", astar),
            ("Bstar", bstar),
            ("Cstar", cstar),
            ("Astarstar", ass),
            ("Bstarstar", bss),
            ("Cstarstar", css),
            ("J", &self.fermat),
            ("G", &self.centroid),
        ]
    }

    /// Mutable view of the same 32 points; the tamper-sensitivity harness
    /// perturbs each in turn.
    pub fn point_entries_mut(&mut self) -> Vec<(&'static str, &mut Point)> {
        let NapoleonBundle {
            base: (a, b, c),
            side_midpoints: (m1, m2, m3),
            outward_apexes: (a1, b1, c1),
            inward_apexes: (a1p, b1p, c1p),
            apex_midpoints_out: (a2, b2, c2),
            apex_midpoints_in: (a2p, b2p, c2p),
            flank_centroids_out: (g1, g2, g3),
            flank_centroids_in: (g1p, g2p, g3p),
            second_centroids_out: (astar, bstar, cstar),
            second_centroids_in: (ass, bss, css),
            fermat,
            flank_circles: _,
            centroid,
        } = self;
        vec![
            ("A", a),
            ("B", b),
            ("C", c),
            ("M1", m1),
            ("M2", m2),
            ("M3", m3),
            ("A1", a1),
            ("B1", b1),
            ("C1", c1),
            ("A1p", a1p),
            ("B1p", b1p),
            ("C1p", c1p),
            ("A2", a2),
            ("B2", b2),
            ("C2", c2),
            ("A2p", a2p),
            ("B2p", b2p),
            ("C2p", c2p),
            ("G1", g1),
            ("G2", g2),
            ("G3", g3),
            ("G1p", g1p),
            ("G2p", g2p),
            ("G3p", g3p),
            ("Astar", astar),
            ("Bstar", bstar),
            ("Cstar", cstar),
            ("Astarstar", ass),
            ("Bstarstar", bss),
            ("Cstarstar", css),
            ("J", fermat),
            ("G", centroid),
        ]
    }
}

impl Serialize for NapoleonBundle {
    /// Flat JSON object keyed by point name, plus the three circles as
    /// `{"center", "r2"}` objects.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let points = self.point_entries();
        let mut map = serializer.serialize_map(Some(points.len() + 3))?;
        for (name, p) in points {
            map.serialize_entry(name, p)?;
        }
        let (k1, k2, k3) = &self.flank_circles;
        map.serialize_entry("K1", k1)?;
        map.serialize_entry("K2", k2)?;
        map.serialize_entry("K3", k3)?;
        map.end()
    }
}
