//! Seeded random generation of maps, used for property tests, batch sweeps
//! and the CLI `random` subcommand.
//!
//! Everything is generated from small integers, so coefficients stay modest
//! and all arithmetic is exact. One-bump maps are produced as piecewise
//! affine interpolations strictly on one side of the diagonal with
//! translation ends, then conjugated by random group elements to introduce
//! genuinely projective pieces.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{FieldSpec, QuadExt};
use crate::moebius::MoebiusMap;
use crate::pmap::PiecewiseProjMap;

/// Which slice of the group to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomClass {
    /// Arbitrary products of elementary maps.
    General,
    /// Strictly below the diagonal.
    Below,
    /// Strictly above the diagonal.
    Above,
    /// Strictly above the diagonal with translation germs at both ends.
    TranslationGerms,
}

impl RandomClass {
    pub fn parse(s: &str) -> Option<RandomClass> {
        match s.to_ascii_lowercase().as_str() {
            "general" => Some(RandomClass::General),
            "below" | "hless" => Some(RandomClass::Below),
            "above" | "hgreater" => Some(RandomClass::Above),
            "translation" | "translationgerms" => Some(RandomClass::TranslationGerms),
            _ => None,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn qi(n: i64, spec: FieldSpec) -> QuadExt {
    QuadExt::from_int(n, spec)
}

/// A one-bump piecewise-affine map with translation germs: above the
/// diagonal when `above`, below otherwise.
pub fn random_affine_bump(rng: &mut ChaCha8Rng, spec: FieldSpec, above: bool) -> PiecewiseProjMap {
    let k = rng.gen_range(0..=3usize);
    // Strictly increasing integer breakpoints.
    let mut bks: Vec<i64> = Vec::with_capacity(k);
    let mut next = rng.gen_range(-4..=0i64);
    for _ in 0..k {
        bks.push(next);
        next += rng.gen_range(1..=3i64);
    }
    // Values strictly on one side of the diagonal, strictly increasing.
    let sign = if above { 1 } else { -1 };
    let mut vals: Vec<i64> = Vec::with_capacity(k);
    for (i, b) in bks.iter().enumerate() {
        let mut v = b + sign * rng.gen_range(1..=3i64);
        if i > 0 {
            let prev = vals[i - 1];
            if v <= prev {
                v = prev + 1;
            }
        }
        // Keep the value on the correct side after the monotonicity fix.
        if sign > 0 {
            v = v.max(b + 1);
        } else if v >= *b {
            // Rare: forced above the diagonal; drop into a translation by
            // pushing subsequent breakpoints instead. Clamp to b - 1 only if
            // monotone.
            v = b - 1;
            if i > 0 && v <= vals[i - 1] {
                // Give up on this breakpoint: reuse the previous slope by
                // placing the point collinearly one step up.
                v = vals[i - 1] + 1;
                // It may now touch the diagonal; handled by the caller loop
                // retrying. Keep as-is; validation below filters.
            }
        }
        vals.push(v);
    }
    // Reject degenerate draws (value touching the diagonal) by retrying.
    if bks.iter().zip(vals.iter()).any(|(b, v)| {
        if above {
            v <= b
        } else {
            v >= b
        }
    }) {
        return random_affine_bump(rng, spec, above);
    }
    if bks.is_empty() {
        let off = sign * rng.gen_range(1..=3i64);
        return PiecewiseProjMap::translation(qi(off, spec));
    }
    let mut pieces: Vec<MoebiusMap> = Vec::with_capacity(bks.len() + 1);
    pieces.push(MoebiusMap::translation(qi(vals[0] - bks[0], spec)));
    for i in 1..bks.len() {
        pieces.push(
            MoebiusMap::affine_through(
                &qi(bks[i - 1], spec),
                &qi(vals[i - 1], spec),
                &qi(bks[i], spec),
                &qi(vals[i], spec),
            )
            .expect("strictly increasing integer data"),
        );
    }
    pieces.push(MoebiusMap::translation(qi(
        vals[bks.len() - 1] - bks[bks.len() - 1],
        spec,
    )));
    let bk_q: Vec<QuadExt> = bks.iter().map(|b| qi(*b, spec)).collect();
    PiecewiseProjMap::new(bk_q, pieces).expect("interpolated data is valid")
}

/// A random elementary group element: a translation, a two-piece affine map,
/// or a projective bridge supported on an integer interval.
pub fn random_elementary(rng: &mut ChaCha8Rng, spec: FieldSpec) -> PiecewiseProjMap {
    match rng.gen_range(0..3u8) {
        0 => PiecewiseProjMap::translation(qi(rng.gen_range(-3..=3i64), spec)),
        1 => {
            // Two affine pieces meeting at an integer point.
            let p = qi(rng.gen_range(-3..=3i64), spec);
            let s0 = qi(rng.gen_range(1..=3i64), spec);
            let s1 = qi(rng.gen_range(1..=3i64), spec);
            let i0 = &p - &(&s0 * &p);
            let i1 = &p - &(&s1 * &p);
            PiecewiseProjMap::new(
                vec![p],
                vec![
                    MoebiusMap::affine(s0, i0).expect("positive slope"),
                    MoebiusMap::affine(s1, i1).expect("positive slope"),
                ],
            )
            .expect("continuous at the meeting point")
        }
        _ => {
            // Translation by 1 outside [m, m+1], projective bridge inside:
            // the shift of a fixed valid bridge by an integer.
            let m = rng.gen_range(-3..=2i64);
            let up = MoebiusMap::translation(qi(1, spec));
            let bridge = MoebiusMap::new(
                qi(1, spec),
                QuadExt::from_rational(crate::exactnum::rational(-2, 1), spec),
                QuadExt::from_rational(crate::exactnum::rational(3, 2), spec),
                qi(-2, spec),
            )
            .expect("fixed bridge data");
            let base = PiecewiseProjMap::new(
                vec![qi(0, spec), qi(1, spec)],
                vec![up.clone(), bridge, up],
            )
            .expect("fixed bridge map");
            let t = PiecewiseProjMap::translation(qi(m, spec));
            t.compose(&base).compose(&t.inverse())
        }
    }
}

/// A random group element: product of a few elementary maps.
pub fn random_element(rng: &mut ChaCha8Rng, spec: FieldSpec) -> PiecewiseProjMap {
    let n = rng.gen_range(1..=3usize);
    let mut acc = PiecewiseProjMap::identity(spec);
    for _ in 0..n {
        let e = random_elementary(rng, spec);
        let e = if rng.gen_bool(0.5) { e.inverse() } else { e };
        acc = acc.compose(&e);
    }
    acc
}

/// Draw a map from the requested class.
pub fn random_map(rng: &mut ChaCha8Rng, spec: FieldSpec, class: RandomClass) -> PiecewiseProjMap {
    match class {
        RandomClass::General => random_element(rng, spec),
        RandomClass::Below => {
            let base = random_affine_bump(rng, spec, false);
            let c = random_element(rng, spec);
            base.conjugate_by(&c)
        }
        RandomClass::Above => {
            let base = random_affine_bump(rng, spec, true);
            let c = random_element(rng, spec);
            base.conjugate_by(&c)
        }
        RandomClass::TranslationGerms => {
            // Conjugation by a general element may change germ slopes; use
            // conjugators with translation germs (translations and bridges).
            let base = random_affine_bump(rng, spec, true);
            let mut acc = base;
            for _ in 0..rng.gen_range(1..=2usize) {
                let e = loop {
                    let cand = random_elementary(rng, spec);
                    let (s0, _) = cand.germ_neg();
                    let (s1, _) = cand.germ_pos();
                    if s0.is_one() && s1.is_one() {
                        break cand;
                    }
                };
                acc = acc.conjugate_by(&e);
            }
            acc
        }
    }
}
