//! Exact ground fields.
//!
//! Two families are supported: the rationals (arbitrary precision, always in
//! lowest terms) and prime fields `F_p` with `p < 2^31`. All algebra code is
//! generic over [`Field`]; the field value carries whatever runtime data the
//! arithmetic needs (the modulus, for prime fields).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest modulus accepted for prime fields; keeps products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field tags differ: {0} vs {1}")]
    MixedFieldTags(FieldTag, FieldTag),
}

/// Runtime identity of a ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A single exact field element tagged with its field.
///
/// This is the exchange type used at API boundaries (parsing, reports). Inner
/// loops work on [`Field::Elem`] directly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

impl Scalar {
    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rational,
            Scalar::Prime { p, .. } => FieldTag::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic of an exact field.
///
/// Elements are plain values; every operation goes through the field value so
/// that runtime parameters (the modulus) never have to be stored per element.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, FieldError>;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn format(&self, a: &Self::Elem) -> String;

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.add(a, &self.mul(b, c));
    }

    /// `a -= b * c`
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        let inv = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, FieldError> {
        if s.tag() != self.tag() {
            return Err(FieldError::MixedFieldTags(self.tag(), s.tag()));
        }
        match s {
            Scalar::Rational(r) => self.from_rational(r),
            Scalar::Prime { value, .. } => Ok(self.from_i64(*value as i64)),
        }
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational, FieldError> {
        Ok(r.clone())
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn add_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        if b.is_zero() || c.is_zero() {
            return;
        }
        *a += b * c;
    }
    fn sub_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        if b.is_zero() || c.is_zero() {
            return;
        }
        *a -= b * c;
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

/// The prime field `F_p`, elements stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, r: &BigRational) -> Result<u64, FieldError> {
        let num = self.reduce_bigint(r.numer());
        let den = self.reduce_bigint(r.denom());
        let inv = self.inv(&den).ok_or(FieldError::DivisionByZero)?;
        Ok(num * inv % self.p)
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Prime { value: *a, p: self.p }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn add_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        *a = (*a + b * c % self.p) % self.p;
    }
    fn sub_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        let t = b * c % self.p;
        *a = if *a >= t { *a - t } else { *a + self.p - t };
    }
}

/// Parses a signed integer or `p/q` fraction.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return None;
            }
            d.parse().ok()?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Renders a rational the way [`parse_rational`] reads it.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(PrimeField::new(4), Err(FieldError::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(MAX_PRIME).is_ok());
    }

    #[test]
    fn prime_inverse_and_rational_images() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
        let two_thirds = parse_rational("2/3").unwrap();
        // 3 * 3 = 9 = 2 mod 7, so 2/3 = 3.
        assert_eq!(f.from_rational(&two_thirds), Ok(3));
        let bad = parse_rational("1/7").unwrap();
        assert_eq!(f.from_rational(&bad), Err(FieldError::DivisionByZero));
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Rationals;
        let a = parse_rational("2/4").unwrap();
        assert_eq!(format_rational(&a), "1/2");
        let b = q.add(&a, &a);
        assert!(q.is_one(&b));
        assert_eq!(q.div(&a, &q.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn parse_rational_rejects_garbage() {
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert!(parse_rational("1/-2").is_none());
        assert_eq!(format_rational(&parse_rational("-3").unwrap()), "-3");
    }

    #[test]
    fn scalar_tags_are_checked() {
        let f = PrimeField::new(5).unwrap();
        let s = Scalar::Rational(parse_rational("1").unwrap());
        assert_eq!(f.from_scalar(&s), Err(FieldError::MixedFieldTags(FieldTag::Prime(5), FieldTag::Rational)));
        assert_eq!(f.from_scalar(&f.to_scalar(&3)), Ok(3));
    }
}
