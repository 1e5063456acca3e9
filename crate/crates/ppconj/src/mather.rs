//! Circle-map invariants for one-bump maps with translation germs.
//!
//! A map `z` strictly above the diagonal whose germs at both ends are
//! translations is, after an exact piecewise-affine rescaling `s` built from
//! the orbit of its initial affinity edge, conjugate to a map `s z s^{-1}`
//! that equals `u + 1` near both ends. Its `N`-th power then descends to a
//! degree-one circle map, captured here as the canonical lift on `[-1, 0]`.
//! Two such maps with identical germs are conjugate iff their circle maps are
//! conjugate by a rigid rotation, which is decidable exactly: rotations must
//! align the circle breakpoints, leaving finitely many candidates (or every
//! rotation, when both lifts are plain rotations themselves).

use crate::affgroup::AffGerm;
use crate::conjugacy::{stair, StairResult};
use crate::error::{Error, Result};
use crate::exactnum::{rational, QuadExt};
use crate::moebius::MoebiusMap;
use crate::pmap::{DisplacementClass, PiecewiseProjMap};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Canonical lift on `[-1, 0]` of the circle map induced by `z`.
///
/// Invariants: breakpoints lie in the open interval `(-1, 0)`; adjacent
/// pieces differ; the value at `-1` lies in `(0, 1]`; the lift increases and
/// satisfies `F(0) = F(-1) + 1` (degree one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatherInvariant {
    breakpoints: Vec<QuadExt>,
    pieces: Vec<MoebiusMap>,
    /// The power of the rescaled map that was restricted; diagnostic only,
    /// not part of equality.
    n: u32,
}

impl MatherInvariant {
    fn from_pieces(
        mut breakpoints: Vec<QuadExt>,
        mut pieces: Vec<MoebiusMap>,
        n: u32,
    ) -> Result<Self> {
        if pieces.is_empty() || pieces.len() != breakpoints.len() + 1 {
            return Err(Error::LengthMismatch);
        }
        let spec = pieces[0].spec();
        let minus_one = -&QuadExt::one(spec);
        // Canonical value normalization: slide by an integer so that the
        // value at -1 lands in (0, 1].
        let v = pieces[0].apply(&minus_one)?;
        let k = v.ceil_int() - BigInt::from(1);
        if k != BigInt::from(0) {
            let k_q = QuadExt::from_rational(
                num_rational::BigRational::from(k).into(),
                spec,
            );
            let shift = MoebiusMap::translation(-&k_q);
            for p in pieces.iter_mut() {
                *p = shift.compose(p);
            }
        }
        // Minimality.
        let mut bk = Vec::with_capacity(breakpoints.len());
        let mut ps: Vec<MoebiusMap> = vec![pieces[0].clone()];
        for (b, p) in breakpoints.drain(..).zip(pieces.into_iter().skip(1)) {
            if ps.last().unwrap() == &p {
                continue;
            }
            bk.push(b);
            ps.push(p);
        }
        Ok(MatherInvariant {
            breakpoints: bk,
            pieces: ps,
            n,
        })
    }

    pub fn breakpoints(&self) -> &[QuadExt] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[MoebiusMap] {
        &self.pieces
    }

    pub fn power(&self) -> u32 {
        self.n
    }

    fn spec(&self) -> crate::exactnum::FieldSpec {
        self.pieces[0].spec()
    }

    /// Piece in charge of `u` for `u` in `(-1, 0]`, resolving a tie at an
    /// interior breakpoint to the left piece.
    fn piece_in_domain(&self, u: &QuadExt) -> &MoebiusMap {
        let i = self.breakpoints.partition_point(|b| b < u);
        &self.pieces[i]
    }

    /// Piece of the periodic extension `F(u + k) = F(u) + k` at any `u`.
    fn lift_piece_at(&self, u: &QuadExt) -> MoebiusMap {
        let spec = self.spec();
        let k = u.ceil_int();
        if k == BigInt::from(0) {
            return self.piece_in_domain(u).clone();
        }
        let k_q = QuadExt::from_rational(num_rational::BigRational::from(k.clone()).into(), spec);
        let u0 = u - &k_q;
        let inner = self.piece_in_domain(&u0);
        MoebiusMap::translation(k_q.clone())
            .compose(inner)
            .compose(&MoebiusMap::translation(-&k_q))
    }

    pub fn value_at(&self, u: &QuadExt) -> QuadExt {
        self.lift_piece_at(u)
            .apply(u)
            .expect("lift pieces have no pole on their interval")
    }

    /// Is the circle map smooth across the seam `0 ≡ -1`?
    fn seam_smooth(&self) -> bool {
        let one = QuadExt::one(self.spec());
        let t1 = MoebiusMap::translation(one.clone());
        let t_1 = MoebiusMap::translation(-&one);
        *self.pieces.last().unwrap() == t1.compose(self.pieces.first().unwrap()).compose(&t_1)
    }

    /// Breakpoints of the circle map, as representatives in `(-1, 0]`; the
    /// seam is represented by `0`.
    pub fn circle_breakpoints(&self) -> Vec<QuadExt> {
        let mut out = self.breakpoints.clone();
        if !self.seam_smooth() {
            out.push(QuadExt::zero(self.spec()));
        }
        out
    }

    /// A lift with no circle breakpoints is a rigid rotation `u + c`.
    pub fn is_rotation(&self) -> bool {
        self.circle_breakpoints().is_empty()
    }

    /// Conjugate the circle map by the rotation `u -> u + l` and return the
    /// canonical lift of the result.
    pub fn rotate(&self, l: &QuadExt) -> MatherInvariant {
        let spec = self.spec();
        let l = reduce_to_unit(l);
        // New breakpoints: circle breakpoints shifted by -l, reduced.
        let mut cuts: Vec<QuadExt> = Vec::new();
        for b in self.circle_breakpoints() {
            let c = reduce_to_unit(&(&b - &l));
            if !c.is_zero() {
                cuts.push(c);
            }
        }
        cuts.sort();
        cuts.dedup();
        let minus_one = -&QuadExt::one(spec);
        let zero = QuadExt::zero(spec);
        let mut points = vec![minus_one];
        points.extend(cuts.iter().cloned());
        points.push(zero);
        let tl = MoebiusMap::translation(l.clone());
        let tl_inv = MoebiusMap::translation(-&l);
        let half = QuadExt::from_rational(rational(1, 2), spec);
        let mut pieces = Vec::with_capacity(points.len() - 1);
        for w in points.windows(2) {
            let mid = &(&w[0] + &w[1]) * &half;
            let inner = self.lift_piece_at(&(&mid + &l));
            pieces.push(tl_inv.compose(&inner).compose(&tl));
        }
        MatherInvariant::from_pieces(cuts, pieces, self.n)
            .expect("rotation of a valid lift is valid")
    }

    /// All rotations conjugating this circle map to `other`.
    pub fn match_rotations(&self, other: &MatherInvariant) -> RotationMatch {
        let a = self.circle_breakpoints();
        let b = other.circle_breakpoints();
        if a.is_empty() && b.is_empty() {
            return if self.pieces == other.pieces {
                RotationMatch::AllRotations
            } else {
                RotationMatch::Discrete(vec![])
            };
        }
        if a.len() != b.len() {
            return RotationMatch::Discrete(vec![]);
        }
        let mut found: Vec<QuadExt> = Vec::new();
        for cand in &a {
            // Rotation aligning this candidate breakpoint of self with the
            // first breakpoint of other.
            let l = reduce_to_unit(&(cand - &b[0]));
            if found.contains(&l) {
                continue;
            }
            if &self.rotate(&l) == other {
                found.push(l);
            }
        }
        found.sort();
        RotationMatch::Discrete(found)
    }
}

/// Reduce a rotation amount into the representative interval `(-1, 0]`.
fn reduce_to_unit(l: &QuadExt) -> QuadExt {
    let k = l.ceil_int();
    if k == BigInt::from(0) {
        return l.clone();
    }
    let k_q = QuadExt::from_rational(
        num_rational::BigRational::from(k).into(),
        l.spec(),
    );
    l - &k_q
}

/// Outcome of rotation matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RotationMatch {
    /// Both circle maps are the same rigid rotation: every rotation works.
    AllRotations,
    /// The (possibly empty) finite set of working rotations in `(-1, 0]`.
    Discrete(Vec<QuadExt>),
}

impl RotationMatch {
    pub fn is_empty(&self) -> bool {
        matches!(self, RotationMatch::Discrete(v) if v.is_empty())
    }

    /// Representative rotations to try for reconstruction.
    pub fn representatives(&self, spec: crate::exactnum::FieldSpec) -> Vec<QuadExt> {
        match self {
            RotationMatch::AllRotations => vec![QuadExt::zero(spec)],
            RotationMatch::Discrete(v) => v.clone(),
        }
    }
}

fn require_translation_class(z: &PiecewiseProjMap, name: &str) -> Result<(QuadExt, QuadExt)> {
    match z.displacement_class()? {
        DisplacementClass::Above => {}
        other => {
            return Err(Error::PreconditionViolated(format!(
                "{name} must lie strictly above the diagonal, found {other:?}"
            )))
        }
    }
    let (s0, b0) = z.germ_neg();
    let (s1, b1) = z.germ_pos();
    if !s0.is_one() || !s1.is_one() {
        return Err(Error::NotTranslationGerms);
    }
    Ok((b0, b1))
}

/// The exact rescaler `s` with `s(z^k(L)) = k`, affine of slope `1/b0` far
/// left and `1/b1` far right.
pub fn build_rescaler(z: &PiecewiseProjMap) -> Result<(PiecewiseProjMap, u32)> {
    let (b0, b1) = require_translation_class(z, "z")?;
    let spec = z.spec();
    let l = z.initial_box();
    let r = z.final_box();
    // Minimal N >= 1 with z^{N-1}(L) >= R.
    let mut orbit = vec![l.clone()];
    while *orbit.last().unwrap() < r {
        let next = z.apply(orbit.last().unwrap());
        orbit.push(next);
        if orbit.len() > 10_000 {
            return Err(Error::IterationCapExceeded(10_000));
        }
    }
    let n = orbit.len() as u32;
    let mut pieces: Vec<MoebiusMap> = Vec::with_capacity(orbit.len() + 1);
    let inv_b0 = b0.inverse()?;
    pieces.push(MoebiusMap::affine(
        inv_b0.clone(),
        -&(&inv_b0 * &l),
    )?);
    for (k, w) in orbit.windows(2).enumerate() {
        let k_q = QuadExt::from_int(k as i64, spec);
        let k1_q = QuadExt::from_int(k as i64 + 1, spec);
        pieces.push(MoebiusMap::affine_through(&w[0], &k_q, &w[1], &k1_q)?);
    }
    let inv_b1 = b1.inverse()?;
    let last = orbit.last().unwrap();
    let n_1 = QuadExt::from_int(n as i64 - 1, spec);
    pieces.push(MoebiusMap::affine(
        inv_b1.clone(),
        &n_1 - &(&inv_b1 * last),
    )?);
    let s = PiecewiseProjMap::new(orbit, pieces)?;
    Ok((s, n))
}

/// Canonical circle-map invariant of `z`.
pub fn invariant(z: &PiecewiseProjMap) -> Result<MatherInvariant> {
    let (s, n) = build_rescaler(z)?;
    let zbar = s.compose(z).compose(&s.inverse());
    let f = zbar.pow(n as i64);
    let spec = z.spec();
    let minus_one = -&QuadExt::one(spec);
    let zero = QuadExt::zero(spec);
    let cuts = f.breakpoints_in_open(&minus_one, &zero);
    let mut points = vec![minus_one];
    points.extend(cuts.iter().cloned());
    points.push(zero);
    let half = QuadExt::from_rational(rational(1, 2), spec);
    let mut pieces = Vec::with_capacity(points.len() - 1);
    for w in points.windows(2) {
        let mid = &(&w[0] + &w[1]) * &half;
        pieces.push(f.pieces()[f.piece_index_at(&mid)].clone());
    }
    MatherInvariant::from_pieces(cuts, pieces, n)
}

/// Result of the full conjugacy decision for translation-germ one-bump maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslationConjugacy {
    Conjugate {
        g: PiecewiseProjMap,
        /// The rotation used for the reconstruction, in `(-1, 0]`.
        rotation: QuadExt,
        /// Whether every rotation works (rigid-rotation circle maps).
        all_rotations: bool,
    },
    NotConjugate,
}

/// Decide conjugacy of two one-bump maps above the diagonal with translation
/// germs, returning an exact, verified conjugator when one exists.
pub fn decide_conjugacy_translation_class(
    y: &PiecewiseProjMap,
    z: &PiecewiseProjMap,
    cap: u32,
) -> Result<TranslationConjugacy> {
    let (yb0, yb1) = require_translation_class(y, "y")?;
    let (zb0, zb1) = require_translation_class(z, "z")?;
    let spec = y.spec();
    // Normalize the germ offsets of z onto those of y by an explicit
    // two-piece affine conjugation fixing 0.
    let s0 = zb0.checked_div(&yb0)?;
    let s1 = zb1.checked_div(&yb1)?;
    let zero = QuadExt::zero(spec);
    let h = PiecewiseProjMap::new(
        vec![zero.clone()],
        vec![
            MoebiusMap::affine(s0, zero.clone())?,
            MoebiusMap::affine(s1, zero.clone())?,
        ],
    )?;
    let z_norm = z.conjugate_by(&h);
    debug_assert_eq!(z_norm.germ_neg(), (QuadExt::one(spec), yb0.clone()));
    debug_assert_eq!(z_norm.germ_pos(), (QuadExt::one(spec), yb1.clone()));

    let fy = invariant(y)?;
    let fz = invariant(&z_norm)?;
    let matched = fy.match_rotations(&fz);
    if matched.is_empty() {
        return Ok(TranslationConjugacy::NotConjugate);
    }
    let all_rotations = matched == RotationMatch::AllRotations;
    let y_inv = y.inverse();
    let z_norm_inv = z_norm.inverse();
    let h_inv = h.inverse();
    for l in matched.representatives(spec) {
        // Conjugator germ at -inf prescribed by the rotation amount.
        let germ = AffGerm::new(QuadExt::one(spec), &l * &yb0)?;
        if let StairResult::Conjugator { g: gp, .. } =
            stair(&y_inv, &z_norm_inv, &germ, cap)?
        {
            let g = gp.compose(&h_inv);
            if y.conjugate_by(&g) == *z {
                return Ok(TranslationConjugacy::Conjugate {
                    g,
                    rotation: l,
                    all_rotations,
                });
            }
        }
    }
    Err(Error::InternalInvariantViolation(
        "matched rotation produced no verified conjugator".into(),
    ))
}

/// Helper exposing `N` and the rescaled map for diagnostics.
pub fn rescaled(z: &PiecewiseProjMap) -> Result<(PiecewiseProjMap, u32)> {
    let (s, n) = build_rescaler(z)?;
    Ok((s.compose(z).compose(&s.inverse()), n))
}

/// Number of discrete self-rotations; `None` when every rotation works.
pub fn self_symmetry(z: &PiecewiseProjMap) -> Result<Option<Vec<QuadExt>>> {
    let f = invariant(z)?;
    match f.match_rotations(&f) {
        RotationMatch::AllRotations => Ok(None),
        RotationMatch::Discrete(v) => Ok(Some(v)),
    }
}

/// Convert a `QuadExt` integer count to i64 (small values only).
pub fn small_int(x: &QuadExt) -> Option<i64> {
    if !x.is_rational() {
        return None;
    }
    let r = x.rational_part();
    if !r.is_integer() {
        return None;
    }
    r.to_integer().to_i64()
}
