//! Exact arithmetic in a fixed real quadratic field Q(sqrt(d)).
//!
//! Every value is a pair `p + q*sqrt(d)` of reduced rationals tagged with the
//! ambient [`FieldSpec`]. `d = 1` encodes plain Q (the sqrt part is forced to
//! zero), which covers every worked example in the domain literature while
//! leaving room for genuinely irrational breakpoints when `d > 1`.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parse a rational from `"num/den"` or `"n"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |m: &str| Error::ParseError(s.to_string(), m.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Format a rational as `"num/den"`, or just `"n"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The ambient quadratic field Q(sqrt(d)); `d = 1` means plain Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    d: u64,
}

impl FieldSpec {
    /// `d` must be positive and squarefree.
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ParseError(
                d.to_string(),
                "field discriminant must be positive".into(),
            ));
        }
        let mut m = d;
        let mut k = 2u64;
        while k * k <= m {
            if m % (k * k) == 0 {
                return Err(Error::ParseError(
                    d.to_string(),
                    "field discriminant must be squarefree".into(),
                ));
            }
            while m % k == 0 {
                m /= k;
            }
            k += 1;
        }
        Ok(FieldSpec { d })
    }

    pub fn rational() -> Self {
        FieldSpec { d: 1 }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    /// Check that two values live in the same field.
    pub fn require_same(&self, other: &FieldSpec) -> Result<()> {
        if self != other {
            Err(Error::FieldMismatch(self.d, other.d))
        } else {
            Ok(())
        }
    }
}

/// An element `p + q*sqrt(d)` of the ambient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    spec: FieldSpec,
}

impl QuadExt {
    pub fn new(p: Rational, q: Rational, spec: FieldSpec) -> Self {
        let q = if spec.is_rational() {
            debug_assert!(q.is_zero(), "q must vanish over plain Q");
            Rational::zero()
        } else {
            q
        };
        QuadExt { p, q, spec }
    }

    pub fn from_rational(p: Rational, spec: FieldSpec) -> Self {
        QuadExt {
            p,
            q: Rational::zero(),
            spec,
        }
    }

    pub fn from_int(n: i64, spec: FieldSpec) -> Self {
        Self::from_rational(rational(n, 1), spec)
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Self::from_int(0, spec)
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::from_int(1, spec)
    }

    pub fn sqrt_d(spec: FieldSpec) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), spec)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn sqrt_part(&self) -> &Rational {
        &self.q
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    fn same(&self, other: &QuadExt) {
        assert_eq!(
            self.spec, other.spec,
            "mixed field specs in arithmetic; use checked_* at API boundaries"
        );
    }

    pub fn checked_add(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.spec.require_same(&rhs.spec)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.spec.require_same(&rhs.spec)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.spec.require_same(&rhs.spec)?;
        Ok(self * rhs)
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.spec.require_same(&rhs.spec)?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }

    /// Multiplicative inverse via the conjugate: the norm `p^2 - d q^2` is a
    /// nonzero rational for any nonzero element.
    pub fn inverse(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = BigInt::from(self.spec.d);
        let norm = &self.p * &self.p - &self.q * &self.q * BigRational::from(d);
        debug_assert!(!norm.is_zero());
        Ok(QuadExt::new(&self.p / &norm, -&self.q / &norm, self.spec))
    }

    /// Exact sign of the represented real number.
    pub fn sign(&self) -> i32 {
        let sp = rat_sign(&self.p);
        let sq = rat_sign(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        if sp == sq {
            return sp;
        }
        // Opposite signs: the larger of p^2 and d q^2 decides.
        let d = BigRational::from(BigInt::from(self.spec.d));
        let pp = &self.p * &self.p;
        let qq = &self.q * &self.q * d;
        match pp.cmp(&qq) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            // p^2 = d q^2 with p,q nonzero is impossible for squarefree d>1.
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> QuadExt {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Decimal expansion with `precision` digits after the point, rounded to
    /// nearest.
    pub fn to_decimal(&self, precision: u32) -> String {
        let pow = BigInt::from(10u32).pow(precision);
        let scaled = self.scaled_round(&pow);
        let neg = scaled.sign() == Sign::Minus;
        let mag = scaled.magnitude().to_string();
        let digits = precision as usize;
        let padded = if mag.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag)
        } else {
            mag
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        let body = if digits == 0 {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// round(self * pow) as an integer, with guard digits for the sqrt part.
    fn scaled_round(&self, pow: &BigInt) -> BigInt {
        let approx = self.approx_rational(pow.to_string().len() as u32 + 30);
        let scaled = approx * BigRational::from(pow.clone());
        round_rational(&scaled)
    }

    /// A rational within 10^-(guard) of the represented value.
    fn approx_rational(&self, guard: u32) -> BigRational {
        if self.q.is_zero() {
            return self.p.clone();
        }
        let scale = BigInt::from(10u32).pow(guard);
        let s = (BigInt::from(self.spec.d) * &scale * &scale).sqrt();
        let root = BigRational::new(s, scale);
        &self.p + &self.q * root
    }

    /// Largest integer not exceeding the value, computed exactly.
    pub fn floor_int(&self) -> BigInt {
        if self.q.is_zero() {
            return self.p.floor().to_integer();
        }
        let mut cand = self.approx_rational(40).floor().to_integer();
        loop {
            let lo = QuadExt::from_rational(BigRational::from(cand.clone()), self.spec);
            let hi = QuadExt::from_rational(BigRational::from(&cand + 1), self.spec);
            if (self - &lo).sign() >= 0 {
                if (self - &hi).sign() < 0 {
                    return cand;
                }
                cand += 1;
            } else {
                cand -= 1;
            }
        }
    }

    pub fn ceil_int(&self) -> BigInt {
        -(-self).floor_int()
    }

    /// Square root inside the field, if it exists there.
    ///
    /// For `x = p + q*sqrt(d) >= 0` this searches for `u + v*sqrt(d)` with
    /// `(u + v*sqrt(d))^2 = x`; returns `None` when the root is real but
    /// escapes the field.
    pub fn sqrt_in_field(&self) -> Option<QuadExt> {
        if self.sign() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(QuadExt::zero(self.spec));
        }
        let d = BigRational::from(BigInt::from(self.spec.d));
        if self.q.is_zero() {
            // Rational radicand: either sqrt(p) is rational or p = r^2 * d.
            if let Some(r) = rational_sqrt(&self.p) {
                return Some(QuadExt::from_rational(r, self.spec));
            }
            if self.spec.d > 1 {
                let over_d = &self.p / &d;
                if let Some(r) = rational_sqrt(&over_d) {
                    return Some(QuadExt::new(Rational::zero(), r, self.spec));
                }
            }
            return None;
        }
        // (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d; the norm p^2 - d q^2
        // must be a rational square and u^2 = (p +- sqrt(norm))/2.
        let norm = &self.p * &self.p - &self.q * &self.q * &d;
        let root_norm = rational_sqrt(&norm)?;
        for sgn in [1i64, -1] {
            let half = (&self.p + BigRational::from(BigInt::from(sgn)) * &root_norm)
                / BigRational::from(BigInt::from(2));
            if let Some(u) = rational_sqrt(&half) {
                if !u.is_zero() {
                    let v = &self.q / (BigRational::from(BigInt::from(2)) * &u);
                    let cand = QuadExt::new(u, v, self.spec);
                    let cand = if cand.sign() >= 0 { cand } else { -&cand };
                    if &(&cand * &cand) == self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    /// Double-precision approximation (for the differential oracle and plots).
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        if self.q.is_zero() {
            return p;
        }
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * (self.spec.d as f64).sqrt()
    }
}

fn rat_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Round half away from zero.
fn round_rational(r: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let shifted = if r.is_negative() { r - half } else { r + half };
    if r.is_negative() {
        shifted.ceil().to_integer()
    } else {
        shifted.floor().to_integer()
    }
}

/// Exact rational square root, if the reduced fraction is a perfect square.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                QuadExt::$method(self, rhs)
            }
        }
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                QuadExt::$method(&self, &rhs)
            }
        }
    };
}

impl QuadExt {
    fn add(&self, rhs: &QuadExt) -> QuadExt {
        self.same(rhs);
        QuadExt::new(&self.p + &rhs.p, &self.q + &rhs.q, self.spec)
    }

    fn sub(&self, rhs: &QuadExt) -> QuadExt {
        self.same(rhs);
        QuadExt::new(&self.p - &rhs.p, &self.q - &rhs.q, self.spec)
    }

    fn mul(&self, rhs: &QuadExt) -> QuadExt {
        self.same(rhs);
        let d = BigRational::from(BigInt::from(self.spec.d));
        QuadExt::new(
            &self.p * &rhs.p + &self.q * &rhs.q * d,
            &self.p * &rhs.q + &self.q * &rhs.p,
            self.spec,
        )
    }

    fn div(&self, rhs: &QuadExt) -> QuadExt {
        self.mul(&rhs.inverse().expect("division by zero"))
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-&self.p, -&self.q, self.spec)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", format_rational(&self.p));
        }
        if self.p.is_zero() {
            return write!(f, "{}*sqrt({})", format_rational(&self.q), self.spec.d);
        }
        write!(
            f,
            "{}{}{}*sqrt({})",
            format_rational(&self.p),
            if self.q.is_negative() { "" } else { "+" },
            format_rational(&self.q),
            self.spec.d
        )
    }
}

/// The four field operations behind one entry point, with checked errors.
pub fn field_arith(x: &QuadExt, y: &QuadExt, op: ArithOp) -> Result<QuadExt> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}
