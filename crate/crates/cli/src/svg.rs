//! Deterministic SVG rendering of layouts and detuned instances.
//!
//! One circle per atom with radius half the blockade radius, so two circles
//! overlap exactly when the atoms block each other. Unit-disk edges are gray
//! lines, atoms of special-vertex regions sit on a shaded square, and colors
//! follow the atom role or, for instances, a detuning ramp with a legend.

use rydberg_mis::compile::Compiled;
use rydberg_mis::layout::{AtomLayout, Region, Role};
use std::fmt::Write;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 40.0;
const LEGEND_WIDTH: f64 = 160.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Coloring {
    Roles(Vec<Role>),
    Detunings(Vec<f64>),
}

/// Everything the renderer needs, independent of where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub points: Vec<[f64; 2]>,
    pub edges: Vec<(usize, usize)>,
    pub radius: f64,
    pub shaded: Vec<bool>,
    pub coloring: Coloring,
}

impl Scene {
    pub fn empty() -> Self {
        Scene { points: Vec::new(), edges: Vec::new(), radius: 1.0, shaded: Vec::new(), coloring: Coloring::Roles(Vec::new()) }
    }

    pub fn from_layout(l: &AtomLayout) -> Self {
        Scene {
            points: l.points(),
            edges: l.unit_disk_graph().edges().to_vec(),
            radius: l.radius(),
            shaded: l.region_of.iter().map(|r| matches!(r, Region::A(_))).collect(),
            coloring: Coloring::Roles(l.atoms.iter().map(|a| a.role).collect()),
        }
    }

    pub fn from_instance(c: &Compiled) -> Self {
        let mut s = Scene::from_layout(&c.instance.layout);
        s.coloring = Coloring::Detunings(c.instance.detunings.clone());
        s
    }
}

fn role_color(r: Role) -> &'static str {
    match r {
        Role::OriginalVertex => "#d62728",
        Role::GridAncilla => "#1f77b4",
        Role::LegAncilla => "#2ca02c",
        Role::IrregularVertex => "#9467bd",
        Role::SegmentAncilla => "#17becf",
    }
}

/// Linear ramp from dark blue through teal to yellow.
fn ramp(t: f64) -> String {
    let stops = [(0.0, [68.0, 1.0, 84.0]), (0.5, [33.0, 145.0, 140.0]), (1.0, [253.0, 231.0, 37.0])];
    let t = t.clamp(0.0, 1.0);
    let (a, b) = if t <= 0.5 { (stops[0], stops[1]) } else { (stops[1], stops[2]) };
    let u = (t - a.0) / (b.0 - a.0);
    let c: Vec<u8> = (0..3).map(|i| (a.1[i] + u * (b.1[i] - a.1[i])).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn f(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Renders the scene; `provenance` goes into a leading comment.
pub fn render_svg(scene: &Scene, provenance: &str) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(p) = scene.points.first() {
        (x0, x1, y0, y1) = (p[0], p[0], p[1], p[1]);
    }
    for p in &scene.points {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let has_legend = matches!(scene.coloring, Coloring::Detunings(ref d) if !d.is_empty());
    let width = (x1 - x0) * SCALE + 2.0 * MARGIN + if has_legend { LEGEND_WIDTH } else { 0.0 };
    let height = ((y1 - y0) * SCALE + 2.0 * MARGIN).max(if has_legend { 220.0 } else { 0.0 });
    // y grows upward in the layout and downward in SVG
    let tx = |x: f64| (x - x0) * SCALE + MARGIN;
    let ty = |y: f64| (y1 - y) * SCALE + MARGIN;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, "<!-- {} -->", provenance.replace("--", "- -"));
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(width),
        f(height),
        f(width),
        f(height)
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, f(width), f(height));

    let half = 0.5 * SCALE;
    let _ = writeln!(s, r##"<g id="regions" fill="#e8e0f0" stroke="none">"##);
    for (i, p) in scene.points.iter().enumerate() {
        if scene.shaded.get(i).copied().unwrap_or(false) {
            let _ = writeln!(s, r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#, f(tx(p[0]) - half), f(ty(p[1]) - half), f(SCALE), f(SCALE));
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="blockade" stroke="#999999" stroke-width="1.5">"##);
    for &(a, b) in &scene.edges {
        let (p, q) = (scene.points[a], scene.points[b]);
        let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, f(tx(p[0])), f(ty(p[1])), f(tx(q[0])), f(ty(q[1])));
    }
    let _ = writeln!(s, "</g>");

    let (lo, hi) = match &scene.coloring {
        Coloring::Detunings(d) if !d.is_empty() => {
            (d.iter().copied().fold(f64::INFINITY, f64::min), d.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        }
        _ => (0.0, 1.0),
    };
    let span = if hi > lo { hi - lo } else { 1.0 };
    let r = 0.5 * scene.radius * SCALE;
    let _ = writeln!(s, r##"<g id="atoms" stroke="#333333" stroke-width="1" fill-opacity="0.55">"##);
    for (i, p) in scene.points.iter().enumerate() {
        let color = match &scene.coloring {
            Coloring::Roles(roles) => roles.get(i).map_or("#777777", |&r| role_color(r)).to_string(),
            Coloring::Detunings(d) => ramp((d[i] - lo) / span),
        };
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#, f(tx(p[0])), f(ty(p[1])), f(r), color);
    }
    let _ = writeln!(s, "</g>");

    if has_legend {
        let lx = (x1 - x0) * SCALE + 2.0 * MARGIN + 20.0;
        let steps = 20;
        let bar = 160.0 / steps as f64;
        let _ = writeln!(s, r#"<g id="legend" font-family="monospace" font-size="11">"#);
        let _ = writeln!(s, r#"<text x="{}" y="{}">detuning</text>"#, f(lx), f(MARGIN - 12.0));
        for j in 0..steps {
            let t = 1.0 - j as f64 / (steps - 1) as f64;
            let _ = writeln!(s, r#"<rect x="{}" y="{}" width="20" height="{}" fill="{}"/>"#, f(lx), f(MARGIN + j as f64 * bar), f(bar), ramp(t));
        }
        let _ = writeln!(s, r#"<text x="{}" y="{}">{:.6}</text>"#, f(lx + 26.0), f(MARGIN + 8.0), hi);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{:.6}</text>"#, f(lx + 26.0), f(MARGIN + 160.0), lo);
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_scene_is_a_document() {
        let s = render_svg(&Scene::empty(), "x");
        assert!(s.contains("<svg") && s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<circle").count(), 0);
    }

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp(0.0), "#440154");
        assert_eq!(ramp(1.0), "#fde725");
    }
}
