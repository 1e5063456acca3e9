//! Centralizer classification.
//!
//! The centralizer of `z` splits as a direct product over the decomposition
//! of the line induced by the fixed set of `z`: every fixed component with
//! nonempty interior contributes a full copy of the whole group (elements
//! supported there), and every fixed-point-free interval contributes either a
//! one-parameter (`R`) factor or an infinite cyclic (`Z`) factor, decided by
//! transporting the restriction of `z` to a one-bump map of the line and
//! examining its germs and, for translation germs, the rigidity of its
//! circle-map invariant.

use crate::error::{Error, Result};
use crate::exactnum::{rational, QuadExt};
use crate::mather::self_symmetry;
use crate::moebius::MoebiusMap;
use crate::pmap::{sample_between, DisplacementClass, EndPoint, PiecewiseProjMap};

/// Exact change of coordinates from an open interval onto the whole line,
/// piecewise Möbius with entries in the ambient field.
#[derive(Debug, Clone)]
pub struct Transport {
    lo: EndPoint,
    hi: EndPoint,
    /// Interior cut points, strictly increasing, inside the domain.
    cuts: Vec<QuadExt>,
    /// One piece per subinterval of the domain, `cuts.len() + 1` of them.
    pieces: Vec<MoebiusMap>,
    /// Images of the cut points, for inversion.
    cut_values: Vec<QuadExt>,
}

impl Transport {
    /// Canonical transport for the open interval `(lo, hi)`.
    pub fn for_interval(lo: &EndPoint, hi: &EndPoint) -> Result<Transport> {
        let spec = match (lo.finite(), hi.finite()) {
            (Some(x), _) => x.spec(),
            (_, Some(x)) => x.spec(),
            _ => {
                // Whole line: identity transport with no spec to hand; the
                // caller owns a map, so default to the rational field only
                // when truly unavoidable.
                crate::exactnum::FieldSpec::rational()
            }
        };
        let one = QuadExt::one(spec);
        let pieces_and_cuts: (Vec<QuadExt>, Vec<MoebiusMap>) = match (lo, hi) {
            (EndPoint::NegInf, EndPoint::PosInf) => {
                (vec![], vec![MoebiusMap::identity(spec)])
            }
            (EndPoint::Finite(p), EndPoint::PosInf) => {
                // 1 - 1/(t - p) on (p, p+1], then t - (p + 1).
                let anchor = p + &one;
                let left = MoebiusMap::new(
                    one.clone(),
                    -&(p + &one),
                    one.clone(),
                    -p,
                )?;
                let right = MoebiusMap::affine(one.clone(), -&anchor)?;
                (vec![anchor], vec![left, right])
            }
            (EndPoint::NegInf, EndPoint::Finite(q)) => {
                // t - q + 1, then 1/(q - t) - 1 on [q-1, q).
                let anchor = q - &one;
                let left = MoebiusMap::affine(one.clone(), &one - q)?;
                let right = MoebiusMap::new(
                    one.clone(),
                    &one - q,
                    -&one,
                    q.clone(),
                )?;
                (vec![anchor], vec![left, right])
            }
            (EndPoint::Finite(p), EndPoint::Finite(q)) => {
                if p >= q {
                    return Err(Error::PreconditionViolated(
                        "transport needs a nonempty open interval".into(),
                    ));
                }
                let third = &(q - p) * &QuadExt::from_rational(rational(1, 3), spec);
                let m1 = p + &third;
                let m2 = &m1 + &third;
                // 1 - third/(t - p) on (p, m1]
                let left = MoebiusMap::new(
                    one.clone(),
                    -&(p + &third),
                    one.clone(),
                    -p,
                )?;
                // affine through (m1, 0), (m2, 1)
                let mid = MoebiusMap::affine_through(&m1, &QuadExt::zero(spec), &m2, &one)?;
                // third/(q - t) on [m2, q)
                let right = MoebiusMap::new(
                    QuadExt::zero(spec),
                    third,
                    -&one,
                    q.clone(),
                )?;
                (vec![m1, m2], vec![left, mid, right])
            }
            _ => {
                return Err(Error::PreconditionViolated(
                    "interval endpoints out of order".into(),
                ))
            }
        };
        let (cuts, pieces) = pieces_and_cuts;
        let cut_values = cuts
            .iter()
            .enumerate()
            .map(|(i, c)| pieces[i].apply(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Transport {
            lo: lo.clone(),
            hi: hi.clone(),
            cuts,
            pieces,
            cut_values,
        })
    }

    fn piece_index_at(&self, t: &QuadExt) -> usize {
        self.cuts.partition_point(|c| c <= t)
    }

    pub fn apply(&self, t: &QuadExt) -> QuadExt {
        self.pieces[self.piece_index_at(t)]
            .apply(t)
            .expect("transport pieces have no pole inside the domain")
    }

    pub fn inverse_apply(&self, u: &QuadExt) -> QuadExt {
        let j = self.cut_values.partition_point(|v| v <= u);
        self.pieces[j]
            .inverse()
            .apply(u)
            .expect("transport pieces are invertible on their range")
    }

    /// Conjugate the restriction of `z` (which must leave the interval
    /// invariant) to a map of the whole line: `w = τ ∘ z ∘ τ^{-1}`.
    pub fn conjugate(&self, z: &PiecewiseProjMap) -> Result<PiecewiseProjMap> {
        if self.lo == EndPoint::NegInf && self.hi == EndPoint::PosInf {
            return Ok(z.clone());
        }
        let inside = |t: &QuadExt| -> bool {
            let e = EndPoint::Finite(t.clone());
            e > self.lo && e < self.hi
        };
        let z_inv = z.inverse();
        let mut t_cuts: Vec<QuadExt> = Vec::new();
        for b in z.breakpoints() {
            if inside(b) {
                t_cuts.push(b.clone());
            }
        }
        for c in &self.cuts {
            t_cuts.push(c.clone());
            let pre = z_inv.apply(c);
            if inside(&pre) {
                t_cuts.push(pre);
            }
        }
        t_cuts.sort();
        t_cuts.dedup();
        let u_cuts: Vec<QuadExt> = t_cuts.iter().map(|t| self.apply(t)).collect();
        let mut pieces = Vec::with_capacity(u_cuts.len() + 1);
        for i in 0..=u_cuts.len() {
            let lo = if i == 0 {
                EndPoint::NegInf
            } else {
                EndPoint::Finite(u_cuts[i - 1].clone())
            };
            let hi = if i == u_cuts.len() {
                EndPoint::PosInf
            } else {
                EndPoint::Finite(u_cuts[i].clone())
            };
            let u0 = if lo == EndPoint::NegInf && hi == EndPoint::PosInf {
                QuadExt::zero(z.spec())
            } else {
                sample_between(&lo, &hi)
            };
            let t0 = self.inverse_apply(&u0);
            let tau_in = &self.pieces[self.piece_index_at(&t0)];
            let z_piece = &z.pieces()[z.piece_index_at(&t0)];
            let zt0 = z.apply(&t0);
            let tau_out = &self.pieces[self.piece_index_at(&zt0)];
            pieces.push(tau_out.compose(z_piece).compose(&tau_in.inverse()));
        }
        PiecewiseProjMap::new(u_cuts, pieces)
    }
}

/// The abstract isomorphism type of one direct factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Cyclic,
    Line,
    WholeGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalFactor {
    pub lo: EndPoint,
    pub hi: EndPoint,
    pub kind: FactorKind,
    /// Set for fixed-end-slope-free discrete cases decided by germ shape
    /// rather than by the circle invariant.
    pub caveat: bool,
}

/// `C(z) ≅ Z^n x R^m x G^k` where `G` is the whole group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerSignature {
    pub factors: Vec<IntervalFactor>,
}

impl CentralizerSignature {
    pub fn ranks(&self) -> (usize, usize, usize) {
        let n = self
            .factors
            .iter()
            .filter(|f| f.kind == FactorKind::Cyclic)
            .count();
        let m = self
            .factors
            .iter()
            .filter(|f| f.kind == FactorKind::Line)
            .count();
        let k = self
            .factors
            .iter()
            .filter(|f| f.kind == FactorKind::WholeGroup)
            .count();
        (n, m, k)
    }
}

/// Classify one fixed-point-free interval of `z`.
fn classify_bump(z: &PiecewiseProjMap, lo: &EndPoint, hi: &EndPoint) -> Result<IntervalFactor> {
    // A single Möbius restriction embeds in a one-parameter flow.
    let interior_breaks = z.breakpoints().iter().any(|b| {
        let e = EndPoint::Finite(b.clone());
        e > *lo && e < *hi
    });
    if !interior_breaks {
        return Ok(IntervalFactor {
            lo: lo.clone(),
            hi: hi.clone(),
            kind: FactorKind::Line,
            caveat: false,
        });
    }
    let tau = Transport::for_interval(lo, hi)?;
    let mut w = tau.conjugate(z)?;
    match w.displacement_class()? {
        DisplacementClass::Above => {}
        DisplacementClass::Below => w = w.inverse(),
        other => {
            return Err(Error::InternalInvariantViolation(format!(
                "transported bump must be one-bump, found {other:?}"
            )))
        }
    }
    let (s0, _) = w.germ_neg();
    let (s1, _) = w.germ_pos();
    if s0.is_one() && s1.is_one() {
        let kind = match self_symmetry(&w)? {
            None => FactorKind::Line,
            Some(_) => FactorKind::Cyclic,
        };
        return Ok(IntervalFactor {
            lo: lo.clone(),
            hi: hi.clone(),
            kind,
            caveat: false,
        });
    }
    // Non-translation germ with interior breakpoints: discrete. Decided by
    // the germ shape, hence flagged.
    Ok(IntervalFactor {
        lo: lo.clone(),
        hi: hi.clone(),
        kind: FactorKind::Cyclic,
        caveat: true,
    })
}

/// Full centralizer signature of `z`.
pub fn classify_centralizer(z: &PiecewiseProjMap) -> Result<CentralizerSignature> {
    if z.is_identity() {
        return Ok(CentralizerSignature {
            factors: vec![IntervalFactor {
                lo: EndPoint::NegInf,
                hi: EndPoint::PosInf,
                kind: FactorKind::WholeGroup,
                caveat: false,
            }],
        });
    }
    let mut factors: Vec<IntervalFactor> = Vec::new();
    for c in z.fixed_components()? {
        if c.lo < c.hi {
            factors.push(IntervalFactor {
                lo: c.lo,
                hi: c.hi,
                kind: FactorKind::WholeGroup,
                caveat: false,
            });
        }
    }
    for b in z.bumps()? {
        factors.push(classify_bump(z, &b.lo, &b.hi)?);
    }
    factors.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(CentralizerSignature { factors })
}

/// Constructive evidence that an interior breakpoint of a power of `z`
/// straddles the affinity boxes: for `z` strictly below the diagonal and a
/// step `s >= 1` large enough that `z^s(R) < L`, either `z^{-s}` has a
/// breakpoint in `[z^s(R), L]` or `z^{-2s}` has one in `[z^{2s}(R), L]`.
pub fn straddling_evidence(
    z: &PiecewiseProjMap,
    s: u32,
) -> Result<(i64, QuadExt)> {
    match z.displacement_class()? {
        DisplacementClass::Below => {}
        other => {
            return Err(Error::PreconditionViolated(format!(
                "straddling analysis needs a map below the diagonal, found {other:?}"
            )))
        }
    }
    let l = z.initial_box();
    let r = z.final_box();
    let s = s as i64;
    let low1 = z.pow(s).apply(&r);
    if low1 >= l {
        return Err(Error::PreconditionViolated(
            "step does not push the final box below the initial box".into(),
        ));
    }
    for mult in [1i64, 2] {
        let p = s * mult;
        let low = z.pow(p).apply(&r);
        let inv = z.pow(-p);
        if let Some(b) = inv
            .breakpoints()
            .iter()
            .find(|b| **b >= low && **b <= l)
        {
            return Ok((p, b.clone()));
        }
    }
    Err(Error::InternalInvariantViolation(
        "no straddling breakpoint in either window".into(),
    ))
}
