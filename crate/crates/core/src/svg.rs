//! Deterministic SVG rendering.

use std::fmt::Write as _;

use crate::drawing::{partition_edges, Drawing};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub mark_crossings: bool,
    /// length of the longer side of the viewBox
    pub size: f64,
    pub margin: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { mark_crossings: true, size: 1000.0, margin: 20.0 }
    }
}

/// Crossing-free edges get class `planar`, crossed edges class `crossed`,
/// vertices class `vertex` and crossing markers class `crossing`.
pub fn render_svg(d: &Drawing, opts: &SvgOptions) -> String {
    let pts = d.vertices().iter().map(|v| v.point).chain(d.edges().iter().flat_map(|e| e.polyline.iter().copied()));
    let (mut x0, mut y0, mut x1, mut y1) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    if x0 > x1 {
        (x0, y0, x1, y1) = (0, 0, 0, 0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1) as f64;
    let scale = opts.size / span;
    let width = (x1 - x0) as f64 * scale + 2.0 * opts.margin;
    let height = (y1 - y0) as f64 * scale + 2.0 * opts.margin;
    let tx = |x: f64| (x - x0 as f64) * scale + opts.margin;
    let ty = |y: f64| (y1 as f64 - y) * scale + opts.margin;
    let radius = opts.size / 250.0;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {width:.3} {height:.3}" width="{width:.3}" height="{height:.3}">"#
    );
    let _ = writeln!(
        out,
        "<style>.planar{{stroke:#1f4e9c;stroke-width:2;fill:none}} .crossed{{stroke:#c0392b;stroke-width:1;fill:none}} .vertex{{fill:#000}} .crossing{{fill:none;stroke:#2e8b57;stroke-width:1}}</style>"
    );
    let p = partition_edges(d, d.crossings());
    for (i, e) in d.edges().iter().enumerate() {
        let class = if p.is_planar(i) { "planar" } else { "crossed" };
        let coords: Vec<String> =
            e.polyline.iter().map(|q| format!("{:.3},{:.3}", tx(q.x as f64), ty(q.y as f64))).collect();
        let _ = writeln!(out, r#"<polyline class="{class}" data-edge="{}" points="{}"/>"#, e.id, coords.join(" "));
    }
    for v in d.vertices() {
        let _ = writeln!(
            out,
            r#"<circle class="vertex" data-vertex="{}" cx="{:.3}" cy="{:.3}" r="{radius:.3}"/>"#,
            v.id,
            tx(v.point.x as f64),
            ty(v.point.y as f64)
        );
    }
    if opts.mark_crossings {
        for c in d.crossings().all_points() {
            let (x, y) = c.to_f64();
            let _ = writeln!(
                out,
                r#"<circle class="crossing" cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#,
                tx(x),
                ty(y),
                radius * 1.5
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{validate_drawing, RawDrawing};

    #[test]
    fn empty_drawing_renders() {
        let d = validate_drawing(&RawDrawing::new()).unwrap();
        let s = render_svg(&d, &SvgOptions::default());
        assert!(s.contains("<svg") && s.ends_with("</svg>\n"));
        assert!(!s.contains("<polyline"));
    }

    #[test]
    fn y_axis_is_flipped() {
        let mut r = RawDrawing::new();
        r.add_vertex(0, 0, 0).add_vertex(1, 0, 10);
        r.add_straight(0, 0, 1);
        let d = validate_drawing(&r).unwrap();
        let s = render_svg(&d, &SvgOptions { mark_crossings: false, size: 100.0, margin: 0.0 });
        assert!(s.contains(r#"points="0.000,100.000 0.000,0.000""#));
    }
}
