//! SVG drawing of a representation: two horizontal baselines and one
//! labeled quadrilateral per element. Output is a pure function of the input.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::rational::{to_f64, Rational};
use crate::representation::TrapezoidRepresentation;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;
const BAND: f64 = 240.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Maps representation coordinates to SVG user space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    min: f64,
    scale: f64,
}

impl Viewport {
    pub fn fit(rep: &TrapezoidRepresentation) -> Self {
        let coords: Vec<f64> = rep
            .trapezoids()
            .iter()
            .flat_map(|t| [&t.top.lo, &t.top.hi, &t.bottom.lo, &t.bottom.hi])
            .map(to_f64)
            .collect();
        let min = coords.iter().copied().fold(f64::INFINITY, f64::min);
        let max = coords.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !min.is_finite() {
            return Viewport { min: 0.0, scale: 1.0 };
        }
        let span = if max > min { max - min } else { 1.0 };
        Viewport {
            min,
            scale: (WIDTH - 2.0 * MARGIN) / span,
        }
    }

    pub fn x(&self, v: &Rational) -> f64 {
        MARGIN + (to_f64(v) - self.min) * self.scale
    }

    /// Height 1 is the top baseline, 0 the bottom one.
    pub fn y(&self, height: u8) -> f64 {
        if height >= 1 {
            MARGIN
        } else {
            MARGIN + BAND
        }
    }
}

pub fn to_svg(rep: &TrapezoidRepresentation) -> String {
    let vp = Viewport::fit(rep);
    let height = BAND + 2.0 * MARGIN;
    let (yt, yb) = (vp.y(1), vp.y(0));
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    )
    .unwrap();
    for y in [yt, yb] {
        writeln!(
            out,
            r#"  <line class="baseline" x1="0" y1="{y:.2}" x2="{WIDTH}" y2="{y:.2}" stroke="black" stroke-width="1"/>"#
        )
        .unwrap();
    }
    for (k, (name, t)) in rep.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts = [
            (vp.x(&t.top.lo), yt),
            (vp.x(&t.top.hi), yt),
            (vp.x(&t.bottom.hi), yb),
            (vp.x(&t.bottom.lo), yb),
        ];
        let points: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        writeln!(
            out,
            r#"  <polygon data-name="{}" points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="1.5"/>"#,
            escape(name),
            points.join(" ")
        )
        .unwrap();
        let cx = pts.iter().map(|p| p.0).sum::<f64>() / 4.0;
        // Stagger labels vertically so neighbours stay readable.
        let cy = yt + (yb - yt) * (0.3 + 0.4 * ((k % 5) as f64) / 4.0);
        writeln!(
            out,
            r#"  <text x="{cx:.2}" y="{cy:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            escape(name)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_svg(rep: &TrapezoidRepresentation, out: &Path) -> Result<()> {
    std::fs::write(out, to_svg(rep))?;
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::Trapezoid;

    #[test]
    fn empty_has_only_baselines() {
        let svg = to_svg(&TrapezoidRepresentation::empty());
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<polygon").count(), 0);
    }

    #[test]
    fn single_trapezoid_corners() {
        let t = Trapezoid::from_ints(1, 3, 0, 4).unwrap();
        let rep = TrapezoidRepresentation::new(vec![("x".into(), t.clone())]).unwrap();
        let vp = Viewport::fit(&rep);
        let svg = to_svg(&rep);
        let expected = format!(
            "points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\"",
            vp.x(&t.top.lo),
            vp.y(1),
            vp.x(&t.top.hi),
            vp.y(1),
            vp.x(&t.bottom.hi),
            vp.y(0),
            vp.x(&t.bottom.lo),
            vp.y(0)
        );
        assert!(svg.contains(&expected), "{svg}");
        assert_eq!(vp.x(&t.bottom.lo), MARGIN);
        assert_eq!(vp.x(&t.bottom.hi), WIDTH - MARGIN);
    }

    #[test]
    fn output_is_deterministic() {
        let t = Trapezoid::from_ints(0, 1, 2, 3).unwrap();
        let rep = TrapezoidRepresentation::new(vec![("a<b".into(), t)]).unwrap();
        assert_eq!(to_svg(&rep), to_svg(&rep.clone()));
        assert!(to_svg(&rep).contains("a&lt;b"));
    }
}
