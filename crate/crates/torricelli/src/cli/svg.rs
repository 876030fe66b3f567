//! Schematic SVG rendering of a configuration.
//!
//! Exact coordinates are converted to doubles only here, at the drawing
//! boundary. The y axis is flipped so figures appear in the usual
//! mathematical orientation. Output is SVG 1.1 with a viewBox that
//! encloses every primitive with at least a 5% margin, and style classes
//! `base`, `flank`, `napoleon`, `circle`, `label`.

use std::fmt::Write as _;

use clap::ValueEnum;

use crate::geom::Point;
use crate::napoleon::NapoleonBundle;

/// Which layers of the configuration to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayerSet {
    /// Base triangle, outward apexes and J.
    Config,
    /// Plus both Napoleon triangles and the flank circles.
    Napoleon,
    /// Plus the midpoint and second-level layers.
    Grunbaum,
}

/// A drawable primitive in scene coordinates (y already flipped).
#[derive(Debug, Clone, PartialEq)]
pub enum Drawable {
    Segment { x1: f64, y1: f64, x2: f64, y2: f64, class: &'static str },
    Disk { cx: f64, cy: f64, r: f64, class: &'static str },
    Label { x: f64, y: f64, text: String },
}

/// An assembled scene: viewBox plus ordered primitives.
#[derive(Debug, Clone)]
pub struct SvgScene {
    /// (min-x, min-y, width, height)
    pub viewbox: (f64, f64, f64, f64),
    pub layers: Vec<Drawable>,
}

fn flip(p: &Point) -> (f64, f64) {
    (p.x.to_f64(), -p.y.to_f64())
}

/// Point labels drawn for each layer set, in bundle order.
pub fn labels_for(layers: LayerSet) -> Vec<&'static str> {
    let config = vec!["A", "B", "C", "A1", "B1", "C1", "J"];
    let napoleon = ["A1p", "B1p", "C1p", "G1", "G2", "G3", "G1p", "G2p", "G3p", "G"];
    let grunbaum = [
        "M1", "M2", "M3", "A2", "B2", "C2", "A2p", "B2p", "C2p", "Astar", "Bstar", "Cstar",
        "Astarstar", "Bstarstar", "Cstarstar",
    ];
    let mut names = config;
    if layers != LayerSet::Config {
        names.extend(napoleon);
    }
    if layers == LayerSet::Grunbaum {
        names.extend(grunbaum);
    }
    names
}

/// Build the scene for a bundle.
pub fn scene(bundle: &NapoleonBundle, layers: LayerSet) -> SvgScene {
    let mut drawables = Vec::new();
    let segment = |p: &Point, q: &Point, class: &'static str| {
        let (x1, y1) = flip(p);
        let (x2, y2) = flip(q);
        Drawable::Segment { x1, y1, x2, y2, class }
    };

    let (a, b, c) = &bundle.base;
    let (a1, b1, c1) = &bundle.outward_apexes;
    let mut segments = vec![
        segment(a, b, "base"),
        segment(b, c, "base"),
        segment(c, a, "base"),
        // outward flanks
        segment(b, a1, "flank"),
        segment(c, a1, "flank"),
        segment(c, b1, "flank"),
        segment(a, b1, "flank"),
        segment(a, c1, "flank"),
        segment(b, c1, "flank"),
        // cevians through J
        segment(a, a1, "base"),
        segment(b, b1, "base"),
        segment(c, c1, "base"),
    ];
    if layers != LayerSet::Config {
        let (a1p, b1p, c1p) = &bundle.inward_apexes;
        let (g1, g2, g3) = &bundle.flank_centroids_out;
        let (g1p, g2p, g3p) = &bundle.flank_centroids_in;
        segments.extend([
            segment(b, a1p, "flank"),
            segment(c, a1p, "flank"),
            segment(c, b1p, "flank"),
            segment(a, b1p, "flank"),
            segment(a, c1p, "flank"),
            segment(b, c1p, "flank"),
            segment(g1, g2, "napoleon"),
            segment(g2, g3, "napoleon"),
            segment(g3, g1, "napoleon"),
            segment(g1p, g2p, "napoleon"),
            segment(g2p, g3p, "napoleon"),
            segment(g3p, g1p, "napoleon"),
        ]);
        let (k1, k2, k3) = &bundle.flank_circles;
        for k in [k1, k2, k3] {
            let (cx, cy) = flip(&k.center);
            drawables.push(Drawable::Disk { cx, cy, r: k.r2.to_f64().sqrt(), class: "circle" });
        }
    }
    if layers == LayerSet::Grunbaum {
        let (a2, b2, c2) = &bundle.apex_midpoints_out;
        let (a2p, b2p, c2p) = &bundle.apex_midpoints_in;
        let (astar, bstar, cstar) = &bundle.second_centroids_out;
        let (ass, bss, css) = &bundle.second_centroids_in;
        segments.extend([
            segment(a2, b2, "napoleon"),
            segment(b2, c2, "napoleon"),
            segment(c2, a2, "napoleon"),
            segment(a2p, b2p, "napoleon"),
            segment(b2p, c2p, "napoleon"),
            segment(c2p, a2p, "napoleon"),
            segment(astar, bstar, "napoleon"),
            segment(bstar, cstar, "napoleon"),
            segment(cstar, astar, "napoleon"),
            segment(ass, bss, "napoleon"),
            segment(bss, css, "napoleon"),
            segment(css, ass, "napoleon"),
        ]);
    }
    drawables.extend(segments);

    let wanted = labels_for(layers);
    for (name, p) in bundle.point_entries() {
        if wanted.contains(&name) {
            let (x, y) = flip(p);
            drawables.push(Drawable::Disk { cx: x, cy: y, r: 0.0, class: "dot" });
            drawables.push(Drawable::Label { x, y, text: name.to_string() });
        }
    }

    let viewbox = enclosing_viewbox(&drawables);
    let dot_r = viewbox.2.max(viewbox.3) * 0.008;
    for d in &mut drawables {
        if let Drawable::Disk { r, class: "dot", .. } = d {
            *r = dot_r;
        }
    }
    SvgScene { viewbox, layers: drawables }
}

/// Smallest box around all primitives, expanded by 5% of each extent.
fn enclosing_viewbox(drawables: &[Drawable]) -> (f64, f64, f64, f64) {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut cover = |x: f64, y: f64| {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    };
    for d in drawables {
        match d {
            Drawable::Segment { x1, y1, x2, y2, .. } => {
                cover(*x1, *y1);
                cover(*x2, *y2);
            }
            Drawable::Disk { cx, cy, r, .. } => {
                cover(cx - r, cy - r);
                cover(cx + r, cy + r);
            }
            Drawable::Label { x, y, .. } => cover(*x, *y),
        }
    }
    let w = (max_x - min_x).max(1e-9);
    let h = (max_y - min_y).max(1e-9);
    (min_x - 0.05 * w, min_y - 0.05 * h, 1.1 * w, 1.1 * h)
}

impl SvgScene {
    /// Serialize as an SVG 1.1 document.
    pub fn render(&self) -> String {
        let (vx, vy, vw, vh) = self.viewbox;
        let extent = vw.max(vh);
        let sw = extent * 0.004;
        let font = extent * 0.028;
        let label_off = extent * 0.012;
        let mut out = String::new();
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx:.6} {vy:.6} {vw:.6} {vh:.6}">"#
        )
        .unwrap();
        writeln!(
            out,
            "  <style>\n    .base {{ stroke: #1a1a1a; stroke-width: {sw:.6}; fill: none; }}\n    .flank {{ stroke: #7a7a7a; stroke-width: {thin:.6}; fill: none; }}\n    .napoleon {{ stroke: #c0392b; stroke-width: {sw:.6}; fill: none; }}\n    .circle {{ stroke: #2767b0; stroke-width: {thin:.6}; stroke-dasharray: {dash:.6} {dash:.6}; fill: none; }}\n    .dot {{ fill: #1a1a1a; stroke: none; }}\n    .label {{ font-family: sans-serif; font-size: {font:.6}px; fill: #1a1a1a; }}\n  </style>",
            thin = sw * 0.7,
            dash = sw * 3.0,
        )
        .unwrap();
        for d in &self.layers {
            match d {
                Drawable::Segment { x1, y1, x2, y2, class } => writeln!(
                    out,
                    r#"  <line class="{class}" x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}"/>"#
                )
                .unwrap(),
                Drawable::Disk { cx, cy, r, class } => writeln!(
                    out,
                    r#"  <circle class="{class}" cx="{cx:.6}" cy="{cy:.6}" r="{r:.6}"/>"#
                )
                .unwrap(),
                Drawable::Label { x, y, text } => writeln!(
                    out,
                    r#"  <text class="label" x="{lx:.6}" y="{ly:.6}">{text}</text>"#,
                    lx = x + label_off,
                    ly = y - label_off,
                )
                .unwrap(),
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::napoleon::build_bundle;

    fn canonical_scene(layers: LayerSet) -> SvgScene {
        let bundle = build_bundle(
            &Point::from_ints(0, 0),
            &Point::from_ints(4, 0),
            &Point::from_ints(0, 3),
        )
        .unwrap();
        scene(&bundle, layers)
    }

    fn label_texts(s: &SvgScene) -> Vec<String> {
        s.layers
            .iter()
            .filter_map(|d| match d {
                Drawable::Label { text, .. } => Some(text.clone()),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn config_layer_has_exactly_seven_labels() {
        let s = canonical_scene(LayerSet::Config);
        let labels = label_texts(&s);
        assert_eq!(labels.len(), 7);
        for want in ["A", "B", "C", "A1", "B1", "C1", "J"] {
            assert_eq!(labels.iter().filter(|l| *l == want).count(), 1, "{want}");
        }
    }

    #[test]
    fn wider_layers_label_each_point_once() {
        for (layers, expect) in [(LayerSet::Napoleon, 17), (LayerSet::Grunbaum, 32)] {
            let labels = label_texts(&canonical_scene(layers));
            assert_eq!(labels.len(), expect);
            let mut dedup = labels.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), expect);
        }
    }

    #[test]
    fn viewbox_has_margin_around_every_primitive() {
        let s = canonical_scene(LayerSet::Grunbaum);
        let (vx, vy, vw, vh) = s.viewbox;
        for d in &s.layers {
            let points: Vec<(f64, f64)> = match d {
                Drawable::Segment { x1, y1, x2, y2, .. } => vec![(*x1, *y1), (*x2, *y2)],
                Drawable::Disk { cx, cy, r, .. } => vec![(cx - r, cy - r), (cx + r, cy + r)],
                Drawable::Label { x, y, .. } => vec![(*x, *y)],
            };
            for (x, y) in points {
                assert!(x >= vx && x <= vx + vw, "x {x} outside viewbox");
                assert!(y >= vy && y <= vy + vh, "y {y} outside viewbox");
            }
        }
        // circles force the box to be noticeably larger than the triangle
        assert!(vw > 4.0 && vh > 3.0);
    }

    #[test]
    fn rendered_document_is_balanced_xml() {
        let svg = canonical_scene(LayerSet::Napoleon).render();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<svg").count(), 1);
        assert_eq!(svg.matches("</svg>").count(), 1);
        assert_eq!(svg.matches("<text").count(), svg.matches("</text>").count());
        // every element line is self-closed or closed on the same line
        for line in svg.lines().filter(|l| l.trim_start().starts_with('<')) {
            let t = line.trim();
            assert!(
                t.ends_with("/>") || t.ends_with('>'),
                "unterminated element: {t}"
            );
        }
        assert!(svg.contains(r#"class="circle""#));
        assert!(svg.contains(">G3p</text>"));
        assert!(!svg.contains(">A2</text>"));
    }
}
