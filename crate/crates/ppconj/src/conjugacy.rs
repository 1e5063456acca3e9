//! Conjugacy for one-bump maps via the stair construction.
//!
//! Given `y` and `z` strictly below the diagonal and a prescribed affine germ
//! `g0` for the conjugator at `-inf`, the algorithm pushes the germ through
//! high powers: the candidate conjugator agrees with `y^{-N} ∘ g0 ∘ z^N` far
//! to the left, and for `N` large enough that window reaches past the final
//! affinity box, where the candidate must straighten into a single affine
//! piece. The resulting map is then verified exactly, so a returned
//! conjugator is always correct; the completeness direction (an obstruction
//! really means no conjugator with that germ exists) is the underlying
//! rigidity theory.

use crate::affgroup::{germ_at_neg, AffGerm};
use crate::error::{Error, Result};
use crate::exactnum::QuadExt;
use crate::pmap::{DisplacementClass, PiecewiseProjMap};

/// Why the stair construction rejected the pair for the prescribed germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StairObstruction {
    /// The germ does not even conjugate the `-inf` germs of the two maps.
    GermMismatch,
    /// The maps sit on different sides of the diagonal (or only one is the
    /// identity), so they are not conjugate at all.
    DisplacementClassMismatch,
    /// The candidate fails to be a single affine piece across the final box.
    NonAffineInFinalBox,
    /// The candidate extends to a well-formed map that is not a conjugator.
    VerificationFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StairResult {
    Conjugator { g: PiecewiseProjMap, n: u32 },
    NotConjugateWithGerm(StairObstruction),
}

impl StairResult {
    pub fn conjugator(&self) -> Option<&PiecewiseProjMap> {
        match self {
            StairResult::Conjugator { g, .. } => Some(g),
            StairResult::NotConjugateWithGerm(_) => None,
        }
    }
}

/// Joint affinity box: both maps agree with their end germs on
/// `(-inf, L]` and `[R, +inf)`.
pub fn boxes(y: &PiecewiseProjMap, z: &PiecewiseProjMap) -> (QuadExt, QuadExt) {
    let l = match (y.breakpoints().first(), z.breakpoints().first()) {
        (Some(a), Some(b)) => a.min(b).clone(),
        (Some(a), None) => a.clone(),
        (None, Some(b)) => b.clone(),
        (None, None) => QuadExt::zero(y.spec()),
    };
    let r = match (y.breakpoints().last(), z.breakpoints().last()) {
        (Some(a), Some(b)) => a.max(b).clone(),
        (Some(a), None) => a.clone(),
        (None, Some(b)) => b.clone(),
        (None, None) => QuadExt::zero(y.spec()),
    };
    (l, r)
}

fn require_below(m: &PiecewiseProjMap, name: &str) -> Result<()> {
    match m.displacement_class()? {
        DisplacementClass::Below => Ok(()),
        other => Err(Error::PreconditionViolated(format!(
            "{name} must lie strictly below the diagonal, found {other:?}"
        ))),
    }
}

/// The raw candidate data for a forced power `N`, before any affinity check.
#[derive(Debug, Clone)]
pub struct StairData {
    pub l: QuadExt,
    pub r: QuadExt,
    pub n: u32,
    /// `z^{-N}(L)`: the candidate is trustworthy on `(-inf, cut]`.
    pub cut: QuadExt,
    /// `y^{-N} ∘ g0 ∘ z^N` as a full map.
    pub candidate: PiecewiseProjMap,
}

/// Minimal `N` with `z^{-N}(L) > R` and `y^{-N}(g0(L)) > R`.
pub fn minimal_n(
    y: &PiecewiseProjMap,
    z: &PiecewiseProjMap,
    g0: &PiecewiseProjMap,
    cap: u32,
) -> Result<u32> {
    let (l, r) = boxes(y, z);
    let y_inv = y.inverse();
    let z_inv = z.inverse();
    let mut p = l.clone();
    let mut q = g0.apply(&l);
    for n in 1..=cap {
        p = z_inv.apply(&p);
        q = y_inv.apply(&q);
        if p > r && q > r {
            return Ok(n);
        }
    }
    Err(Error::IterationCapExceeded(cap))
}

/// Build the candidate for a forced `N` (diagnostic entry point).
pub fn stair_candidate(
    y: &PiecewiseProjMap,
    z: &PiecewiseProjMap,
    g0: &PiecewiseProjMap,
    n: u32,
) -> Result<StairData> {
    require_below(y, "y")?;
    require_below(z, "z")?;
    let (l, r) = boxes(y, z);
    let zn = z.pow(n as i64);
    let candidate = y.pow(-(n as i64)).compose(g0).compose(&zn);
    let cut = zn.inverse().apply(&l);
    Ok(StairData {
        l,
        r,
        n,
        cut,
        candidate,
    })
}

/// Extract a conjugator from candidate data: across `[R, cut]` the candidate
/// must be one affine piece, which is then extended to `+inf` and the result
/// verified exactly against `g^{-1} y g = z`.
fn extract_and_verify(
    y: &PiecewiseProjMap,
    z: &PiecewiseProjMap,
    data: &StairData,
) -> Result<StairResult> {
    if data.cut <= data.r {
        return Err(Error::PreconditionViolated(format!(
            "N = {} does not push the window past the final box",
            data.n
        )));
    }
    let h = &data.candidate;
    if !h.breakpoints_in_open(&data.r, &data.cut).is_empty() {
        return Ok(StairResult::NotConjugateWithGerm(
            StairObstruction::NonAffineInFinalBox,
        ));
    }
    let mid = &(&data.r + &data.cut)
        * &QuadExt::from_rational(crate::exactnum::rational(1, 2), data.r.spec());
    let j = h.piece_index_at(&mid);
    if !h.pieces()[j].is_affine() {
        return Ok(StairResult::NotConjugateWithGerm(
            StairObstruction::NonAffineInFinalBox,
        ));
    }
    let g = PiecewiseProjMap::new(
        h.breakpoints()[..j].to_vec(),
        h.pieces()[..=j].to_vec(),
    )?;
    if y.conjugate_by(&g) == *z {
        Ok(StairResult::Conjugator { g, n: data.n })
    } else {
        Ok(StairResult::NotConjugateWithGerm(
            StairObstruction::VerificationFailed,
        ))
    }
}

/// Stair construction with a forced power `N` (must reach past the final
/// box); used to demonstrate independence of the choice of `N`.
pub fn stair_with_n(
    y: &PiecewiseProjMap,
    z: &PiecewiseProjMap,
    germ: &AffGerm,
    n: u32,
) -> Result<StairResult> {
    let g0 = match prepare_germ(y, z, germ)? {
        Ok(g0) => g0,
        Err(obstruction) => return Ok(StairResult::NotConjugateWithGerm(obstruction)),
    };
    let data = stair_candidate(y, z, &g0, n)?;
    extract_and_verify(y, z, &data)
}

/// Full stair run for maps below the diagonal: minimal `N`, then extraction
/// and exact verification.
pub fn stair(
    y: &PiecewiseProjMap,
    z: &PiecewiseProjMap,
    germ: &AffGerm,
    cap: u32,
) -> Result<StairResult> {
    let g0 = match prepare_germ(y, z, germ)? {
        Ok(g0) => g0,
        Err(obstruction) => return Ok(StairResult::NotConjugateWithGerm(obstruction)),
    };
    let n = minimal_n(y, z, &g0, cap)?;
    let data = stair_candidate(y, z, &g0, n)?;
    extract_and_verify(y, z, &data)
}

/// Germ screening: the prescribed germ must at least conjugate the
/// negative-end germ of `y` to that of `z` inside the affine group, or no
/// conjugator with that germ can exist. Returns the germ as a map.
fn prepare_germ(
    y: &PiecewiseProjMap,
    z: &PiecewiseProjMap,
    germ: &AffGerm,
) -> Result<std::result::Result<PiecewiseProjMap, StairObstruction>> {
    require_below(y, "y")?;
    require_below(z, "z")?;
    let gy = germ_at_neg(y);
    let gz = germ_at_neg(z);
    if gy.conjugate_by(germ) != gz {
        return Ok(Err(StairObstruction::GermMismatch));
    }
    Ok(Ok(germ.to_map()))
}

/// Decide conjugacy by a given germ for one-bump maps on either side of the
/// diagonal: pairs above the diagonal are handled through their inverses
/// (`g^{-1} y g = z` iff `g^{-1} y^{-1} g = z^{-1}`).
pub fn stair_auto(
    y: &PiecewiseProjMap,
    z: &PiecewiseProjMap,
    germ: &AffGerm,
    cap: u32,
) -> Result<StairResult> {
    let cy = y.displacement_class()?;
    let cz = z.displacement_class()?;
    if cy != cz {
        return Ok(StairResult::NotConjugateWithGerm(
            StairObstruction::DisplacementClassMismatch,
        ));
    }
    match cy {
        DisplacementClass::Identity => Ok(StairResult::Conjugator {
            g: germ.to_map(),
            n: 0,
        }),
        DisplacementClass::Below => stair(y, z, germ, cap),
        DisplacementClass::Above => stair(&y.inverse(), &z.inverse(), germ, cap),
        DisplacementClass::Mixed => Err(Error::MixedSign),
    }
}
