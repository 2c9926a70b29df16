//! Text and SVG pictures of a lattice polygon.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{LatticePolygon, Point};

const PITCH: i64 = 32;
const MARGIN: i64 = 24;

/// Grid of `.` for lattice points of the polygon, `*` for `support`,
/// blank outside. Row `y = max` first.
pub fn render_ascii(polygon: &LatticePolygon, support: &[Point]) -> String {
    let marks: BTreeSet<Point> = support.iter().copied().collect();
    let w = polygon.max_x().max(marks.iter().map(|p| p.0).max().unwrap_or(0));
    let h = polygon.max_y().max(marks.iter().map(|p| p.1).max().unwrap_or(0));
    let mut out = String::new();
    for y in (0..=h).rev() {
        let mut line = String::new();
        for x in 0..=w {
            let c = if marks.contains(&(x, y)) {
                '*'
            } else if polygon.contains((x, y)) {
                '.'
            } else {
                ' '
            };
            line.push(c);
            if x < w {
                line.push(' ');
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Standalone SVG: axes, the filled hull, lattice points, support points
/// and good edges drawn heavier.
pub fn render_svg(polygon: &LatticePolygon, support: &[Point]) -> String {
    let w = polygon.max_x().max(support.iter().map(|p| p.0).max().unwrap_or(0)) + 1;
    let h = polygon.max_y().max(support.iter().map(|p| p.1).max().unwrap_or(0)) + 1;
    let width = w * PITCH + 2 * MARGIN;
    let height = h * PITCH + 2 * MARGIN;
    let sx = |x: i64| MARGIN + x * PITCH;
    let sy = |y: i64| height - MARGIN - y * PITCH;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        sx(0),
        sy(0),
        sx(w),
        sy(0)
    );
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        sx(0),
        sy(0),
        sx(0),
        sy(h)
    );
    let pts: Vec<String> = polygon
        .vertices()
        .iter()
        .map(|&(x, y)| format!("{},{}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polygon points="{}" fill="steelblue" fill-opacity="0.2" stroke="steelblue" stroke-width="1"/>"#,
        pts.join(" ")
    );
    for e in polygon.good_edges() {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="darkred" stroke-width="3"/>"#,
            sx(e.start.0),
            sy(e.start.1),
            sx(e.end.0),
            sy(e.end.1)
        );
    }
    for (x, y) in polygon.lattice_points() {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="2" fill="gray"/>"#, sx(x), sy(y));
    }
    for &(x, y) in support {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="5" fill="black"/>"#, sx(x), sy(y));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_triangle() {
        let t = LatticePolygon::dense_triangle(2);
        let pic = render_ascii(&t, &[(2, 0), (0, 2)]);
        assert_eq!(pic, "*\n. .\n. . *\n");
    }

    #[test]
    fn svg_shape() {
        let t = LatticePolygon::dense_triangle(3);
        let svg = render_svg(&t, &[(0, 0)]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("r=\"2\"").count(), 10);
        assert_eq!(svg.matches("stroke-width=\"3\"").count(), t.good_edges().len());
    }
}
