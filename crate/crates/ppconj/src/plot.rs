//! Minimal SVG rendering of a map's graph: the curve, the diagonal for
//! reference, and markers at the breakpoints.

use crate::batch::sample_curve;
use crate::pmap::PiecewiseProjMap;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;
pub const DEFAULT_SAMPLES: usize = 512;

/// Render the graph of `f` over `[lo, hi]` as a standalone SVG document.
pub fn render_svg(f: &PiecewiseProjMap, lo: f64, hi: f64, samples: usize) -> String {
    let pts = sample_curve(f, lo, hi, samples);
    let mut y_lo = lo;
    let mut y_hi = hi;
    for &(_, y) in &pts {
        if y.is_finite() {
            y_lo = y_lo.min(y);
            y_hi = y_hi.max(y);
        }
    }
    if y_hi - y_lo < 1e-9 {
        y_hi = y_lo + 1.0;
    }
    let span = SIZE - 2.0 * MARGIN;
    let sx = |t: f64| MARGIN + (t - lo) / (hi - lo) * span;
    let sy = |v: f64| SIZE - MARGIN - (v - y_lo) / (y_hi - y_lo) * span;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
    ));
    // Diagonal reference.
    let d0 = lo.max(y_lo);
    let d1 = hi.min(y_hi);
    if d1 > d0 {
        out.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
             stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n",
            sx(d0),
            sy(d0),
            sx(d1),
            sy(d1)
        ));
    }
    // The curve.
    let path: Vec<String> = pts
        .iter()
        .filter(|(_, y)| y.is_finite())
        .enumerate()
        .map(|(i, (t, y))| {
            format!(
                "{}{:.2},{:.2}",
                if i == 0 { "M" } else { "L" },
                sx(*t),
                sy(*y)
            )
        })
        .collect();
    out.push_str(&format!(
        "  <path d=\"{}\" fill=\"none\" stroke=\"#1f4fa0\" stroke-width=\"1.5\"/>\n",
        path.join(" ")
    ));
    // Breakpoint markers.
    for b in f.breakpoints() {
        let t = b.to_f64();
        if t < lo || t > hi {
            continue;
        }
        let v = crate::oracle::apply_f64(f, t);
        out.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#c03030\"/>\n",
            sx(t),
            sy(v)
        ));
    }
    out.push_str("</svg>\n");
    out
}
