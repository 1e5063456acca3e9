//! Independent double-precision evaluation, used to cross-check exact
//! results: every claimed exact equality of maps should also hold to within
//! floating-point error when both sides are evaluated in `f64` arithmetic
//! from scratch.

use crate::exactnum::QuadExt;
use crate::moebius::MoebiusMap;
use crate::pmap::PiecewiseProjMap;

/// Evaluate a single piece in `f64` arithmetic.
pub fn moebius_f64(m: &MoebiusMap, t: f64) -> f64 {
    let (a, b, c, d) = m.coeffs();
    (a.to_f64() * t + b.to_f64()) / (c.to_f64() * t + d.to_f64())
}

/// Evaluate the whole map in `f64` arithmetic, choosing the piece by
/// floating-point comparison against the breakpoints.
pub fn apply_f64(f: &PiecewiseProjMap, t: f64) -> f64 {
    let mut i = 0;
    for b in f.breakpoints() {
        if b.to_f64() <= t {
            i += 1;
        } else {
            break;
        }
    }
    moebius_f64(&f.pieces()[i], t)
}

/// Sample grid for comparing two maps: evenly spaced across the union of
/// their breakpoint ranges (padded), shifted by a small irrationally-acting
/// offset so no sample hits a breakpoint of either map.
pub fn sample_grid(f: &PiecewiseProjMap, g: &PiecewiseProjMap, samples: usize) -> Vec<f64> {
    let mut lo = -5.0f64;
    let mut hi = 5.0f64;
    for b in f.breakpoints().iter().chain(g.breakpoints()) {
        let x = b.to_f64();
        lo = lo.min(x - 2.0);
        hi = hi.max(x + 2.0);
    }
    let eps = (hi - lo) / (3.0 * samples as f64 + 7.0);
    let step = (hi - lo) / samples.max(1) as f64;
    (0..samples)
        .map(|i| lo + eps + i as f64 * step)
        .collect()
}

/// Largest pointwise deviation `|f(t) - g(t)|` over the grid, in `f64`.
pub fn max_deviation(f: &PiecewiseProjMap, g: &PiecewiseProjMap, samples: usize) -> f64 {
    crate::batch::max_deviation_on(f, g, &sample_grid(f, g, samples))
}

/// Deviation between exact evaluation (converted at the end) and pure `f64`
/// evaluation of the same map; a sanity bound on conditioning of the data.
pub fn self_consistency(f: &PiecewiseProjMap, samples: usize) -> f64 {
    sample_grid(f, f, samples)
        .into_iter()
        .map(|t| {
            let exact = f
                .apply(&approx_to_exact(f, t))
                .to_f64();
            (apply_f64(f, t) - exact).abs()
        })
        .fold(0.0, f64::max)
    }

/// Nearest exact rational with a modest denominator, for feeding `f64` grid
/// points into exact evaluation.
fn approx_to_exact(f: &PiecewiseProjMap, t: f64) -> QuadExt {
    let denom = 1i64 << 32;
    let num = (t * denom as f64).round() as i64;
    QuadExt::from_rational(
        crate::exactnum::rational(num, denom),
        f.spec(),
    )
}
