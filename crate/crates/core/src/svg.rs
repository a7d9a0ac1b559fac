//! Static SVG output.

use std::fmt::Write;

use crate::geometry::{LatticePoint, LatticePolygon};

const SCALE: i32 = 20;

/// Draws the polygon outline, and the graph labels when `coord_of` is given.
/// The output depends only on the arguments.
pub fn render_svg(poly: &LatticePolygon, coord_of: Option<&[LatticePoint]>) -> String {
    let (lo, hi) = poly.bounding_box();
    // Lattice to picture coordinates, y pointing down.
    let px = |p: LatticePoint| ((p.x - lo.x + 1) * SCALE, (hi.y - p.y + 1) * SCALE);
    let (w, h) = ((hi.x - lo.x + 2) * SCALE, (hi.y - lo.y + 2) * SCALE);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#).unwrap();
    let mut d = String::new();
    for (i, &p) in poly.vertices().iter().enumerate() {
        let (x, y) = px(p);
        write!(d, "{}{x} {y} ", if i == 0 { "M" } else { "L" }).unwrap();
    }
    d.push('Z');
    writeln!(out, r##"<path d="{d}" fill="#dde6f0" stroke="#1f3b57" stroke-width="2"/>"##).unwrap();
    if let Some(coords) = coord_of {
        for (label, &p) in coords.iter().enumerate() {
            let (x, y) = px(p);
            writeln!(out, r##"<circle cx="{x}" cy="{y}" r="3" fill="#1f3b57"/>"##).unwrap();
            writeln!(out, r#"<text x="{}" y="{}" font-size="10" font-family="monospace">{label}</text>"#, x + 4, y - 4).unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
