//! Ground fields and their elements.
//!
//! Two kinds of exact fields are supported: the rationals, backed by
//! arbitrary-precision fractions, and prime fields `F_p` with `p < 2^61`.
//! A [`Scalar`] carries enough information to do arithmetic on its own; a
//! [`Field`] is needed to create constants and to parse text.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 61;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`. Fails unless `p` is a prime below `2^61`.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(LinalgError::InvalidField(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = (n as i128).rem_euclid(*p as i128) as u64;
                Scalar::Mod { r, p: *p }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or(LinalgError::DivisionByZero)?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// True when `s` is an element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rat(_)) => true,
            (Field::Prime(p), Scalar::Mod { r, p: q }) => p == q && r < p,
            _ => false,
        }
    }

    /// Parses `"p/q"`, `"p"` (rationals) or a residue `"r"` (prime fields).
    /// Negative or unreduced residues are reduced mod `p`.
    pub fn parse(&self, text: &str) -> Result<Scalar, LinalgError> {
        let text = text.trim();
        let bad = || LinalgError::ParseScalar(text.to_string());
        match self {
            Field::Rationals => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (text, "1"),
                };
                let n = BigInt::from_str(n).map_err(|_| bad())?;
                let d = BigInt::from_str(d).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(LinalgError::DivisionByZero);
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n.trim(), Some(d.trim())),
                    None => (text, None),
                };
                let reduce = |s: &str| -> Result<Scalar, LinalgError> {
                    let v = BigInt::from_str(s).map_err(|_| bad())?;
                    let r = v.mod_floor(&BigInt::from(*p)).to_u64().ok_or_else(bad)?;
                    Ok(Scalar::Mod { r, p: *p })
                };
                let n = reduce(n)?;
                match d {
                    None => Ok(n),
                    Some(d) => {
                        let d = reduce(d)?.inv().ok_or(LinalgError::DivisionByZero)?;
                        Ok(&n * &d)
                    }
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An element of a [`Field`].
///
/// Rationals are always kept in lowest terms with positive denominator
/// (`BigRational` normalizes on construction); residues satisfy `r < p`.
/// Arithmetic between scalars of different fields is a logic error and
/// panics; matrix-level operations check fields and report
/// [`LinalgError::FieldMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { r: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { r, .. } => *r == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { r, p } => Scalar::Mod { r: pow_mod(*r, p - 2, *p), p: *p },
        })
    }

    /// Integer value if this is an integral rational (or any residue).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Rat(_) => None,
            Scalar::Mod { r, .. } => i64::try_from(*r).ok(),
        }
    }

    /// Size of the numerator and denominator, used to pick sparse pivots.
    pub(crate) fn height(&self) -> u64 {
        match self {
            Scalar::Rat(q) => q.numer().bits() + q.denom().bits(),
            Scalar::Mod { .. } => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_negative())
    }

    fn expect_same(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!("scalar field mismatch: {} vs {}", self.field(), other.field());
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Mod { r, .. } => write!(f, "{r}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { r: a, p }, Scalar::Mod { r: b, p: q }) if p == q => {
                let s = a + b;
                Scalar::Mod { r: if s >= *p { s - p } else { s }, p: *p }
            }
            _ => {
                self.expect_same(rhs);
                unreachable!()
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { r: a, p }, Scalar::Mod { r: b, p: q }) if p == q => {
                Scalar::Mod { r: if a >= b { a - b } else { a + p - b }, p: *p }
            }
            _ => {
                self.expect_same(rhs);
                unreachable!()
            }
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { r: a, p }, Scalar::Mod { r: b, p: q }) if p == q => {
                Scalar::Mod { r: mul_mod(*a, *b, *p), p: *p }
            }
            _ => {
                self.expect_same(rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { r, p } => Scalar::Mod { r: if *r == 0 { 0 } else { p - r }, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(1));
        assert!(!is_prime(561));
        assert!(Field::prime(2_305_843_009_213_693_951).is_ok());
        assert!(Field::prime(4_611_686_018_427_387_847).is_err()); // prime, but above 2^61
        assert!(Field::prime(15).is_err());
    }

    #[test]
    fn rational_lowest_terms() {
        let q = Field::Rationals;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse("10/5").unwrap().to_string(), "2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("abc").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Mod { r: 6, p: 7 });
        assert_eq!(&a * &a, f.one());
        let three = f.from_i64(3);
        assert_eq!(&three * &three.inv().unwrap(), f.one());
        assert_eq!(f.parse("1/3").unwrap(), three.inv().unwrap());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn large_prime_multiplication_does_not_overflow() {
        let p = 2_305_843_009_213_693_951u64 - 2; // odd, not necessarily prime
        let a = Scalar::Mod { r: p - 1, p };
        let b = &a * &a;
        assert_eq!(b, Scalar::Mod { r: 1, p });
    }
}
