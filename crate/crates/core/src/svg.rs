//! SVG plot of an interval exchange on `[0, 1]`.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::iet::IetSpec;
use crate::rational::{self, Rational};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 60.0;
const PLOT: f64 = SIZE - 2.0 * MARGIN;

fn sx(x: &Rational) -> f64 {
    MARGIN + PLOT * x.to_f64().unwrap_or(0.0)
}

fn sy(y: &Rational) -> f64 {
    SIZE - MARGIN - PLOT * y.to_f64().unwrap_or(0.0)
}

/// Graph of `T`: oriented segments rise in blue, flipped ones fall in red
/// and are dashed. Separation points get ticks on both axes and the orbit
/// `(y, T(y))` is marked.
pub fn iet_svg(spec: &IetSpec, orbit: &[Rational]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    out.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
    let (x0, x1) = (MARGIN, SIZE - MARGIN);
    let _ = writeln!(
        out,
        r#"<rect x="{x0}" y="{x0}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black" stroke-width="1.5"/>"#
    );
    let _ = writeln!(
        out,
        r##"<line x1="{x0}" y1="{x1}" x2="{x1}" y2="{x0}" stroke="#bbbbbb" stroke-dasharray="4 4"/>"##
    );

    let seps = spec.separation_points();
    for s in seps {
        let (x, y) = (sx(s), sy(s));
        let label = rational::format(s);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{x1}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            x1 + 6.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle">{label}</text>"#,
            x1 + 22.0
        );
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#,
            x0 - 6.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">{label}</text>"#,
            x0 - 10.0,
            y + 4.0
        );
    }

    for (i, slot) in spec.image_starts().iter().enumerate() {
        let (lo, hi) = (seps[i], seps[i + 1]);
        let top = slot + (hi - lo);
        let (ylo, yhi, style) = if spec.is_flipped(i) {
            (top, *slot, r##"stroke="#c0392b" stroke-dasharray="10 5""##)
        } else {
            (*slot, top, r##"stroke="#1f5fa8""##)
        };
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style} stroke-width="3"/>"#,
            sx(&lo),
            sy(&ylo),
            sx(&hi),
            sy(&yhi)
        );
    }

    if !orbit.is_empty() {
        for (k, y) in orbit.iter().enumerate() {
            let next = &orbit[(k + 1) % orbit.len()];
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"/>"#,
                sx(y),
                sy(next)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn flipped_segments_are_dashed() {
        let spec = IetSpec::new(vec![frac(1, 3); 3], vec![-3, -1, 2]).unwrap();
        let svg = iet_svg(&spec, &[frac(1, 6), frac(5, 6), frac(1, 2)]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("stroke-dasharray=\"10 5\"").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains(">2/3</text>"));
    }
}
