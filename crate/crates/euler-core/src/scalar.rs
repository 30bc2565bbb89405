//! Exact coefficient arithmetic over the rationals or an odd prime field.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a presented ring: `QQ` or `F_p` for an odd
/// prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rationals,
    Prime(u64),
}

impl CoefficientField {
    /// The field of rational numbers.
    pub fn rationals() -> Self {
        CoefficientField::Rationals
    }

    /// The prime field `F_p`; rejects 2, composites, and oversized moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(CoefficientField::Prime(p))
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::Prime(p) => *p,
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u128;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// An element of the coefficient field, tagged with its field so that
/// mixed-field arithmetic is caught immediately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: CoefficientField) -> Self {
        match field {
            CoefficientField::Rationals => Scalar::Rat(BigRational::zero()),
            CoefficientField::Prime(p) => Scalar::Fp { value: 0, modulus: p },
        }
    }

    pub fn one(field: CoefficientField) -> Self {
        match field {
            CoefficientField::Rationals => Scalar::Rat(BigRational::one()),
            CoefficientField::Prime(p) => Scalar::Fp { value: 1, modulus: p },
        }
    }

    pub fn from_integer(n: i64, field: CoefficientField) -> Self {
        match field {
            CoefficientField::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            CoefficientField::Prime(p) => {
                let m = p as i128;
                let v = ((n as i128 % m) + m) % m;
                Scalar::Fp { value: v as u64, modulus: p }
            }
        }
    }

    /// Builds `numer/denom` in the given field; fails when the denominator
    /// is zero (or divisible by `p` over `F_p`).
    pub fn from_ratio(numer: &BigInt, denom: &BigInt, field: CoefficientField) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::NonInvertible);
        }
        match field {
            CoefficientField::Rationals => {
                Ok(Scalar::Rat(BigRational::new(numer.clone(), denom.clone())))
            }
            CoefficientField::Prime(p) => {
                let m = BigInt::from(p);
                let red = |x: &BigInt| -> u64 {
                    let r = ((x % &m) + &m) % &m;
                    // r is in [0, p), and p < 2^31 fits in u64.
                    r.to_string().parse::<u64>().unwrap()
                };
                let d = red(denom);
                if d == 0 {
                    return Err(Error::NonInvertible);
                }
                let n = red(numer);
                let inv = mod_pow(d, p - 2, p);
                Ok(Scalar::Fp { value: (n as u128 * inv as u128 % p as u128) as u64, modulus: p })
            }
        }
    }

    pub fn field(&self) -> CoefficientField {
        match self {
            Scalar::Rat(_) => CoefficientField::Rationals,
            Scalar::Fp { modulus, .. } => CoefficientField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Fp { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Fp { value: (*a as u128 * *b as u128 % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, modulus } => {
                Scalar::Fp { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    /// Multiplicative inverse; panics on zero, which callers rule out.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { value, modulus } => {
                Scalar::Fp { value: mod_pow(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        }
    }

    /// True for rationals strictly below zero; `F_p` values display as
    /// their canonical representative and never count as negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(a) => a.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.abs()),
            Scalar::Fp { .. } => self.clone(),
        }
    }

    /// Total order on elements of one field, used for canonical tie-breaks.
    pub fn cmp_same_field(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Fp { value: a, .. }, Scalar::Fp { value: b, .. }) => a.cmp(b),
            _ => panic!("mixed coefficient fields"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}
