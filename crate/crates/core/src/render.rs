//! Pictures of arc diagrams: fixed-width text and SVG with arcs drawn as
//! semicircles above a baseline.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::diagram::{ArcDiagram, End};
use crate::rational::{format_rational, Rational};

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// One row per arc in left order, drawn over `width` columns, followed by the
/// exact endpoint coordinates.
pub fn ascii(d: &ArcDiagram, width: usize) -> String {
    let width = width.max(8);
    let pts = d.endpoints();
    let lo = to_f64(&pts[0].x);
    let hi = to_f64(&pts[pts.len() - 1].x);
    let scale = if hi > lo { (width - 1) as f64 / (hi - lo) } else { 0.0 };
    let col = |x: &Rational| ((to_f64(x) - lo) * scale).round() as usize;
    let label_width = d.arcs().iter().map(|a| a.id.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for id in d.left_order() {
        let a = d.arc(id);
        let (l, r) = (col(&a.left), col(&a.right).max(col(&a.left) + 1));
        let mut row = vec![' '; width.max(r + 1)];
        for c in row.iter_mut().take(r).skip(l + 1) {
            *c = '-';
        }
        row[l] = '(';
        row[r] = ')';
        let line: String = row.into_iter().collect();
        let _ = writeln!(out, "{id:>label_width$} |{}", line.trim_end());
    }
    let _ = writeln!(out, "{} +{}", " ".repeat(label_width), "=".repeat(width));
    for p in &pts {
        let _ = writeln!(
            out,
            "{} {}{}  {}",
            " ".repeat(label_width),
            p.id,
            p.end.letter(),
            format_rational(&p.x)
        );
    }
    out
}

/// SVG picture: arcs as semicircles in the upper half-plane over a baseline,
/// endpoints labeled with arc id and exact coordinate.
pub fn svg(d: &ArcDiagram) -> String {
    let pts = d.endpoints();
    let lo = to_f64(&pts[0].x);
    let hi = to_f64(&pts[pts.len() - 1].x);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let (w, margin) = (800.0, 40.0);
    let scale = (w - 2.0 * margin) / span;
    let x = |v: &Rational| margin + (to_f64(v) - lo) * scale;
    let max_r = d
        .arcs()
        .iter()
        .map(|a| (x(&a.right) - x(&a.left)) / 2.0)
        .fold(0.0, f64::max);
    let base = margin + max_r;
    let h = base + 40.0 + 16.0 * pts.len() as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h:.1}" viewBox="0 0 {w} {h:.1}">"#
    );
    let _ = writeln!(
        s,
        r#"  <line x1="{:.3}" y1="{base:.3}" x2="{:.3}" y2="{base:.3}" stroke="black"/>"#,
        margin / 2.0,
        w - margin / 2.0
    );
    for a in d.arcs() {
        let (x1, x2) = (x(&a.left), x(&a.right));
        let r = (x2 - x1) / 2.0;
        let _ = writeln!(
            s,
            r#"  <path d="M {x1:.3} {base:.3} A {r:.3} {r:.3} 0 0 1 {x2:.3} {base:.3}" fill="none" stroke="steelblue"/>"#
        );
    }
    for (i, p) in pts.iter().enumerate() {
        let px = x(&p.x);
        let _ = writeln!(s, r#"  <circle cx="{px:.3}" cy="{base:.3}" r="2.5"/>"#);
        let anchor = if p.end == End::Left { "start" } else { "end" };
        let _ = writeln!(
            s,
            r#"  <text x="{px:.3}" y="{:.3}" font-size="11" text-anchor="{anchor}">{}{} = {}</text>"#,
            base + 18.0 + 16.0 * i as f64,
            p.id,
            p.end.letter(),
            format_rational(&p.x)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{new_diagram, Arc};
    use crate::rational::int;

    fn caravan() -> ArcDiagram {
        new_diagram(
            vec![Arc::from_ints(1, 0, 2, &[1, 0]), Arc::from_ints(2, 1, 3, &[0, 1])],
            vec![int(2), int(2)],
        )
        .unwrap()
    }

    #[test]
    fn ascii_rows_follow_left_order() {
        let text = ascii(&caravan(), 13);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "1 |(-------)");
        assert_eq!(lines[1], "2 |    (-------)");
        assert!(text.contains("2R  3"));
    }

    #[test]
    fn svg_has_one_semicircle_per_arc() {
        let pic = svg(&caravan());
        assert_eq!(pic.matches("<path").count(), 2);
        assert!(pic.contains("1L = 0"));
        assert!(pic.trim_end().ends_with("</svg>"));
    }
}
