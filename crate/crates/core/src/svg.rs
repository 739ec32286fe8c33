//! SVG rendering of an arrangement and, optionally, a cover.

use std::fmt::Write as _;

use crate::arrangement::Arrangement;
use crate::cover::Cover;
use crate::geom::Point;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

struct View {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl View {
    fn new(arr: &Arrangement) -> View {
        let pts: Vec<(f64, f64)> = arr.vertices().iter().map(Point::to_f64).collect();
        let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let span = (max_x - min_x).max(max_y - min_y);
        let scale = if span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };
        View { min_x, max_y, scale }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        (MARGIN + (x - self.min_x) * self.scale, MARGIN + (self.max_y - y) * self.scale)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

/// Bounded cells are shaded (holes cut out with the even-odd rule),
/// rectangular cells hatched on top, segments stroked black, and the
/// segments of `cover` drawn thicker in red.
pub fn render(arr: &Arrangement, cover: Option<&Cover>) -> String {
    let view = View::new(arr);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    out.push_str(concat!(
        "<defs><pattern id=\"hatch\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" ",
        "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#888\" stroke-width=\"2\"/>",
        "</pattern></defs>\n"
    ));
    for cell in arr.cells().iter().filter(|c| c.bounded) {
        let mut d = String::new();
        for cycle in &cell.boundary {
            for (i, p) in arr.cycle_vertices(cycle).iter().enumerate() {
                let (x, y) = view.map(p);
                write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(x), num(y)).unwrap();
            }
            d.push_str("Z ");
        }
        let d = d.trim_end();
        writeln!(
            out,
            r##"<path class="cell" data-cell="{}" d="{d}" fill="#e8e8e8" fill-rule="evenodd"/>"##,
            cell.id
        )
        .unwrap();
        if cell.rectangular {
            writeln!(
                out,
                r#"<path class="rect" data-cell="{}" d="{d}" fill="url(#hatch)" fill-rule="evenodd"/>"#,
                cell.id
            )
            .unwrap();
        }
    }
    for s in arr.segments() {
        let (x1, y1) = view.map(&s.a);
        let (x2, y2) = view.map(&s.b);
        let chosen = cover.is_some_and(|c| c.chosen.contains(&s.id));
        let (class, stroke, width) = if chosen { ("chosen", "#d62728", 4) } else { ("segment", "black", 2) };
        writeln!(
            out,
            r#"<line class="{class}" data-segment="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{width}" stroke-linecap="round"/>"#,
            s.id,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
