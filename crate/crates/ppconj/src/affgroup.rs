//! The group of orientation-preserving affine maps `t -> a t + b` with
//! `a > 0`, used as the group of germs at either end of the line.
//!
//! Conjugacy and centralizers here are classical and fully explicit; they are
//! both the base case of the general algorithms and an independent oracle for
//! them.

use crate::error::{Error, Result};
use crate::exactnum::{FieldSpec, QuadExt};
use crate::moebius::MoebiusMap;
use crate::pmap::PiecewiseProjMap;

/// An affine germ `(slope, intercept)`, slope positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffGerm {
    slope: QuadExt,
    intercept: QuadExt,
}

impl AffGerm {
    pub fn new(slope: QuadExt, intercept: QuadExt) -> Result<Self> {
        slope.spec().require_same(&intercept.spec())?;
        if slope.sign() <= 0 {
            return Err(Error::OrientationReversing);
        }
        Ok(AffGerm { slope, intercept })
    }

    pub fn identity(spec: FieldSpec) -> Self {
        AffGerm {
            slope: QuadExt::one(spec),
            intercept: QuadExt::zero(spec),
        }
    }

    pub fn translation(offset: QuadExt) -> Self {
        let spec = offset.spec();
        AffGerm {
            slope: QuadExt::one(spec),
            intercept: offset,
        }
    }

    pub fn slope(&self) -> &QuadExt {
        &self.slope
    }

    pub fn intercept(&self) -> &QuadExt {
        &self.intercept
    }

    pub fn spec(&self) -> FieldSpec {
        self.slope.spec()
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.intercept.is_zero()
    }

    pub fn is_translation(&self) -> bool {
        self.slope.is_one()
    }

    pub fn apply(&self, t: &QuadExt) -> QuadExt {
        &(&self.slope * t) + &self.intercept
    }

    /// Group law: `(self ∘ rhs)(t) = self(rhs(t))`.
    pub fn compose(&self, rhs: &AffGerm) -> AffGerm {
        AffGerm {
            slope: &self.slope * &rhs.slope,
            intercept: &(&self.slope * &rhs.intercept) + &self.intercept,
        }
    }

    pub fn inverse(&self) -> AffGerm {
        let inv = self.slope.inverse().expect("slope is positive");
        AffGerm {
            intercept: -&(&inv * &self.intercept),
            slope: inv,
        }
    }

    pub fn pow(&self, n: i64) -> AffGerm {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = AffGerm::identity(self.spec());
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// `g^{-1} ∘ self ∘ g`.
    pub fn conjugate_by(&self, g: &AffGerm) -> AffGerm {
        g.inverse().compose(self).compose(g)
    }

    pub fn commutes_with(&self, other: &AffGerm) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Fixed point `b / (1 - a)` of a non-translation.
    pub fn fixed_point(&self) -> Option<QuadExt> {
        if self.slope.is_one() {
            return None;
        }
        Some(&self.intercept / &(&QuadExt::one(self.spec()) - &self.slope))
    }

    pub fn to_moebius(&self) -> MoebiusMap {
        MoebiusMap::affine(self.slope.clone(), self.intercept.clone())
            .expect("slope is positive")
    }

    pub fn to_map(&self) -> PiecewiseProjMap {
        PiecewiseProjMap::from_affine(self.to_moebius()).expect("affine map is valid")
    }
}

/// Germ of a piecewise map at `-inf`.
pub fn germ_at_neg(f: &PiecewiseProjMap) -> AffGerm {
    let (s, i) = f.germ_neg();
    AffGerm::new(s, i).expect("validated maps are increasing")
}

/// Germ of a piecewise map at `+inf`.
pub fn germ_at_pos(f: &PiecewiseProjMap) -> AffGerm {
    let (s, i) = f.germ_pos();
    AffGerm::new(s, i).expect("validated maps are increasing")
}

/// Decide conjugacy in the affine group, returning a witness `g` with
/// `g^{-1} y g = z` when one exists.
pub fn aff_conjugator(y: &AffGerm, z: &AffGerm) -> Option<AffGerm> {
    let spec = y.spec();
    if !y.slope().is_one() {
        // Non-translations are conjugate iff slopes agree; translate the
        // fixed point of y onto that of z.
        if y.slope() != z.slope() {
            return None;
        }
        let shift = &(z.intercept() - y.intercept())
            / &(y.slope() - &QuadExt::one(spec));
        let g = AffGerm::translation(shift);
        debug_assert_eq!(y.conjugate_by(&g), *z);
        return Some(g);
    }
    if !z.slope().is_one() {
        return None;
    }
    // Two translations: conjugation by (c, 0) scales the offset by 1/c, so
    // the offsets must share their sign.
    let sy = y.intercept().sign();
    let sz = z.intercept().sign();
    if sy != sz {
        return None;
    }
    if sy == 0 {
        return Some(AffGerm::identity(spec));
    }
    let c = y.intercept().checked_div(z.intercept()).ok()?;
    let g = AffGerm::new(c, QuadExt::zero(spec)).ok()?;
    debug_assert_eq!(y.conjugate_by(&g), *z);
    Some(g)
}

/// Shape of the centralizer of an affine map inside the affine group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffCentralizer {
    /// The identity commutes with everything.
    Full,
    /// A non-translation: all maps fixing the same point, one per slope.
    FixedPointLine { fixed_point: QuadExt },
    /// A nontrivial translation: exactly the translations.
    Translations,
}

pub fn aff_centralizer(y: &AffGerm) -> AffCentralizer {
    if y.is_identity() {
        AffCentralizer::Full
    } else if let Some(p) = y.fixed_point() {
        AffCentralizer::FixedPointLine { fixed_point: p }
    } else {
        AffCentralizer::Translations
    }
}

/// Produce the centralizer element with the given parameter: for `Full` the
/// parameter pair is used as `(slope, intercept)` directly; for a line it is
/// the slope; for translations it is the offset.
pub fn aff_centralizer_element(
    c: &AffCentralizer,
    slope: &QuadExt,
    offset: &QuadExt,
) -> Result<AffGerm> {
    match c {
        AffCentralizer::Full => AffGerm::new(slope.clone(), offset.clone()),
        AffCentralizer::FixedPointLine { fixed_point } => {
            // t -> s (t - p) + p
            let one = QuadExt::one(slope.spec());
            let intercept = &(&one - slope) * fixed_point;
            AffGerm::new(slope.clone(), intercept)
        }
        AffCentralizer::Translations => Ok(AffGerm::translation(offset.clone())),
    }
}
