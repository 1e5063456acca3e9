//! Orientation-preserving Möbius transformations `t -> (a t + b)/(c t + d)`
//! with coefficients in the ambient quadratic field and positive determinant.
//!
//! Matrices are kept in a canonical form — the first nonzero coefficient in
//! the order `a, b, c, d` is scaled to `1` — so that equal transformations
//! have equal coefficient tuples. (Scaling to determinant one would require a
//! square root that can leave the field.)

use crate::error::{Error, Result};
use crate::exactnum::{FieldSpec, QuadExt};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoebiusMap {
    a: QuadExt,
    b: QuadExt,
    c: QuadExt,
    d: QuadExt,
}

/// Dynamical type of a non-identity Möbius transformation, decided by the
/// sign of `tr^2 - 4 det`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoebiusClass {
    Identity,
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl MoebiusMap {
    /// Build from matrix entries; requires a positive determinant.
    pub fn new(a: QuadExt, b: QuadExt, c: QuadExt, d: QuadExt) -> Result<Self> {
        let spec = a.spec();
        spec.require_same(&b.spec())?;
        spec.require_same(&c.spec())?;
        spec.require_same(&d.spec())?;
        let det = &(&a * &d) - &(&b * &c);
        match det.sign() {
            0 => return Err(Error::SingularMatrix),
            s if s < 0 => return Err(Error::OrientationReversing),
            _ => {}
        }
        let mut m = MoebiusMap { a, b, c, d };
        m.canonicalize();
        Ok(m)
    }

    fn canonicalize(&mut self) {
        let lead = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("nonsingular matrix has a nonzero entry")
            .clone();
        let inv = lead.inverse().expect("nonzero leading coefficient");
        self.a = &self.a * &inv;
        self.b = &self.b * &inv;
        self.c = &self.c * &inv;
        self.d = &self.d * &inv;
    }

    pub fn identity(spec: FieldSpec) -> Self {
        MoebiusMap {
            a: QuadExt::one(spec),
            b: QuadExt::zero(spec),
            c: QuadExt::zero(spec),
            d: QuadExt::one(spec),
        }
    }

    /// The affine map `t -> slope * t + intercept`; the slope must be
    /// positive.
    pub fn affine(slope: QuadExt, intercept: QuadExt) -> Result<Self> {
        let spec = slope.spec();
        MoebiusMap::new(
            slope,
            intercept,
            QuadExt::zero(spec),
            QuadExt::one(spec),
        )
    }

    pub fn translation(offset: QuadExt) -> Self {
        let spec = offset.spec();
        MoebiusMap::affine(QuadExt::one(spec), offset).expect("slope one is positive")
    }

    /// The affine map sending `(x0, y0)` and `(x1, y1)`; needs `x0 < x1` and
    /// `y0 < y1` (orientation).
    pub fn affine_through(
        x0: &QuadExt,
        y0: &QuadExt,
        x1: &QuadExt,
        y1: &QuadExt,
    ) -> Result<Self> {
        let dx = x1.checked_sub(x0)?;
        let dy = y1.checked_sub(y0)?;
        if dx.sign() <= 0 || dy.sign() <= 0 {
            return Err(Error::PreconditionViolated(
                "affine interpolation needs increasing point pairs".into(),
            ));
        }
        let slope = dy.checked_div(&dx)?;
        let intercept = y0 - &(&slope * x0);
        MoebiusMap::affine(slope, intercept)
    }

    pub fn spec(&self) -> FieldSpec {
        self.a.spec()
    }

    pub fn coeffs(&self) -> (&QuadExt, &QuadExt, &QuadExt, &QuadExt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn det(&self) -> QuadExt {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    /// `(slope, intercept)` of an affine map, normalised so `d = 1`.
    pub fn affine_parts(&self) -> Result<(QuadExt, QuadExt)> {
        if !self.is_affine() {
            return Err(Error::PreconditionViolated(
                "map is not affine".into(),
            ));
        }
        let inv = self.d.inverse()?;
        Ok((&self.a * &inv, &self.b * &inv))
    }

    /// Denominator `c t + d` at `t`.
    pub fn denom_at(&self, t: &QuadExt) -> QuadExt {
        &(&self.c * t) + &self.d
    }

    /// Evaluate at a finite point; errors at the pole.
    pub fn apply(&self, t: &QuadExt) -> Result<QuadExt> {
        let den = self.denom_at(t);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = &(&self.a * t) + &self.b;
        Ok(&num / &den)
    }

    /// The pole `-d/c` of a non-affine map.
    pub fn pole(&self) -> Option<QuadExt> {
        if self.c.is_zero() {
            None
        } else {
            Some(-&(&self.d / &self.c))
        }
    }

    /// Composition `self ∘ rhs` (matrix product).
    pub fn compose(&self, rhs: &MoebiusMap) -> MoebiusMap {
        let mut m = MoebiusMap {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        };
        m.canonicalize();
        m
    }

    pub fn inverse(&self) -> MoebiusMap {
        let mut m = MoebiusMap {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        };
        m.canonicalize();
        m
    }

    pub fn pow(&self, n: i64) -> MoebiusMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = MoebiusMap::identity(self.spec());
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// Classify by `tr^2` versus `4 det` (scale-invariant).
    pub fn classify(&self) -> MoebiusClass {
        if self.is_identity() {
            return MoebiusClass::Identity;
        }
        let tr = &self.a + &self.d;
        let disc = &(&tr * &tr) - &(&self.det() * &QuadExt::from_int(4, self.spec()));
        match disc.sign() {
            s if s > 0 => MoebiusClass::Hyperbolic,
            0 => MoebiusClass::Parabolic,
            _ => MoebiusClass::Elliptic,
        }
    }

    /// Finite fixed points, solving `c t^2 + (d - a) t - b = 0`.
    ///
    /// Returns the sorted finite fixed points. Errors with [`Error::FieldEscape`]
    /// when the fixed points are real but irrational over the ambient field.
    pub fn fixed_points(&self) -> Result<Vec<QuadExt>> {
        let spec = self.spec();
        if self.c.is_zero() {
            // Affine: (a/d) t + b/d = t.
            let (s, i) = self.affine_parts()?;
            if s.is_one() {
                return Ok(vec![]); // translation or identity: no finite fixed point
            }
            let t = &i / &(&QuadExt::one(spec) - &s);
            return Ok(vec![t]);
        }
        let qa = self.c.clone();
        let qb = &self.d - &self.a;
        let qc = -&self.b;
        let disc = &(&qb * &qb) - &(&(&qa * &qc) * &QuadExt::from_int(4, spec));
        match disc.sign() {
            s if s < 0 => Ok(vec![]),
            0 => Ok(vec![-&(&qb / &(&qa * &QuadExt::from_int(2, spec)))]),
            _ => {
                let root = disc
                    .sqrt_in_field()
                    .ok_or_else(|| Error::FieldEscape(format!("sqrt({disc})")))?;
                let two_a = &qa * &QuadExt::from_int(2, spec);
                let neg_b = -&qb;
                let mut r1 = &(&neg_b - &root) / &two_a;
                let mut r2 = &(&neg_b + &root) / &two_a;
                if r1 > r2 {
                    std::mem::swap(&mut r1, &mut r2);
                }
                Ok(vec![r1, r2])
            }
        }
    }
}

impl std::fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_affine() {
            let (s, i) = self.affine_parts().map_err(|_| std::fmt::Error)?;
            if s.is_one() && i.is_zero() {
                return write!(f, "t");
            }
            if s.is_one() {
                return if i.is_negative() {
                    write!(f, "t-{}", i.abs())
                } else {
                    write!(f, "t+{i}")
                };
            }
            if i.is_zero() {
                return write!(f, "({s})t");
            }
            return if i.is_negative() {
                write!(f, "({s})t-{}", i.abs())
            } else {
                write!(f, "({s})t+{i}")
            };
        }
        write!(
            f,
            "(({})t+({}))/(({})t+({}))",
            self.a, self.b, self.c, self.d
        )
    }
}
