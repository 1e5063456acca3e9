//! Data-parallel helpers for the embarrassingly parallel parts of the crate:
//! oracle grids, curve sampling for plots, and seeded random sweeps.
//!
//! Every operation has an always-available sequential form (`*_seq`) and a
//! rayon-backed form (`*_par`) compiled under the `parallel` feature; the
//! unsuffixed entry points dispatch to the parallel form when available.

use crate::oracle::apply_f64;
use crate::pmap::PiecewiseProjMap;
use crate::random::{random_map, rng_from_seed, RandomClass};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Max of `|f - g|` over explicit sample points, sequentially.
pub fn max_deviation_on_seq(f: &PiecewiseProjMap, g: &PiecewiseProjMap, points: &[f64]) -> f64 {
    points
        .iter()
        .map(|&t| (apply_f64(f, t) - apply_f64(g, t)).abs())
        .fold(0.0, f64::max)
}

#[cfg(feature = "parallel")]
pub fn max_deviation_on_par(f: &PiecewiseProjMap, g: &PiecewiseProjMap, points: &[f64]) -> f64 {
    points
        .par_iter()
        .map(|&t| (apply_f64(f, t) - apply_f64(g, t)).abs())
        .reduce(|| 0.0, f64::max)
}

pub fn max_deviation_on(f: &PiecewiseProjMap, g: &PiecewiseProjMap, points: &[f64]) -> f64 {
    #[cfg(feature = "parallel")]
    {
        max_deviation_on_par(f, g, points)
    }
    #[cfg(not(feature = "parallel"))]
    {
        max_deviation_on_seq(f, g, points)
    }
}

/// Sample a curve `(t, f(t))` at `n` evenly spaced points of `[lo, hi]`.
pub fn sample_curve_seq(f: &PiecewiseProjMap, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let step = (hi - lo) / (n.max(2) - 1) as f64;
    (0..n.max(2))
        .map(|i| {
            let t = lo + i as f64 * step;
            (t, apply_f64(f, t))
        })
        .collect()
}

#[cfg(feature = "parallel")]
pub fn sample_curve_par(f: &PiecewiseProjMap, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let step = (hi - lo) / (n.max(2) - 1) as f64;
    (0..n.max(2))
        .into_par_iter()
        .map(|i| {
            let t = lo + i as f64 * step;
            (t, apply_f64(f, t))
        })
        .collect()
}

pub fn sample_curve(f: &PiecewiseProjMap, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    #[cfg(feature = "parallel")]
    {
        sample_curve_par(f, lo, hi, n)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sample_curve_seq(f, lo, hi, n)
    }
}

/// One seeded consistency trial: draw a map and a conjugator, and check the
/// germ homomorphism plus an inverse round trip exactly. Returns `true` when
/// everything holds.
pub fn sweep_trial(seed: u64, class: RandomClass) -> bool {
    let spec = crate::exactnum::FieldSpec::rational();
    let mut rng = rng_from_seed(seed);
    let z = random_map(&mut rng, spec, class);
    let g = crate::random::random_element(&mut rng, spec);
    let w = z.conjugate_by(&g);
    let inv_ok = w.compose(&w.inverse()).is_identity();
    let germ_ok = {
        use crate::affgroup::{germ_at_neg, germ_at_pos};
        let lhs = germ_at_neg(&w);
        let rhs = germ_at_neg(&g)
            .inverse()
            .compose(&germ_at_neg(&z))
            .compose(&germ_at_neg(&g));
        let lhs2 = germ_at_pos(&w);
        let rhs2 = germ_at_pos(&g)
            .inverse()
            .compose(&germ_at_pos(&z))
            .compose(&germ_at_pos(&g));
        lhs == rhs && lhs2 == rhs2
    };
    inv_ok && germ_ok
}

pub fn sweep_seq(seeds: &[u64], class: RandomClass) -> usize {
    seeds.iter().filter(|&&s| sweep_trial(s, class)).count()
}

#[cfg(feature = "parallel")]
pub fn sweep_par(seeds: &[u64], class: RandomClass) -> usize {
    seeds.par_iter().filter(|&&s| sweep_trial(s, class)).count()
}

pub fn sweep(seeds: &[u64], class: RandomClass) -> usize {
    #[cfg(feature = "parallel")]
    {
        sweep_par(seeds, class)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_seq(seeds, class)
    }
}
