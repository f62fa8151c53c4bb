//! Exact scalars over the rationals and over prime fields.
//!
//! Every [`Scalar`] carries its field, and the representation is always
//! canonical: reduced fractions with positive denominator over ℚ, residues in
//! `[0, p)` over F_p. Equality is therefore structural equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// The ground field: ℚ or F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum FieldRepr {
    Q,
    Fp { p: u64 },
}

impl TryFrom<FieldRepr> for FieldSpec {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self> {
        match repr {
            FieldRepr::Q => Ok(FieldSpec::Rationals),
            FieldRepr::Fp { p } => FieldSpec::prime(p),
        }
    }
}

impl From<FieldSpec> for FieldRepr {
    fn from(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => FieldRepr::Q,
            FieldSpec::Prime(p) => FieldRepr::Fp { p },
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// F_p, checking that `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// True iff the characteristic divides `m`. Characteristic zero divides only 0.
    pub fn char_divides(&self, m: i64) -> bool {
        match self {
            FieldSpec::Rationals => m == 0,
            FieldSpec::Prime(p) => m.rem_euclid(*p as i64) == 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(k))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: k.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, k: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(k.clone())),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: reduce_bigint(k, *p),
                p: *p,
            },
        }
    }

    /// The canonical scalar `num/den`.
    pub fn scalar(&self, num: i64, den: i64) -> Result<Scalar> {
        self.scalar_big(&BigInt::from(num), &BigInt::from(den))
    }

    pub fn scalar_big(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(p) => {
                let d = reduce_bigint(den, *p);
                if d == 0 {
                    return Err(Error::NonInvertibleDenominator {
                        den: den.to_string(),
                        p: *p,
                    });
                }
                let n = reduce_bigint(num, *p);
                Ok(Scalar::Residue {
                    value: mul_mod(n, inv_mod(d, *p), *p),
                    p: *p,
                })
            }
        }
    }

    /// Parses `"k"` or `"num/den"` into this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = |what: &str| Error::parse("scalar", format!("{what} in {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
        let den: BigInt = den.parse().map_err(|_| bad("invalid denominator"))?;
        self.scalar_big(&num, &den)
    }

    /// All elements of a finite field in residue order; `None` over ℚ.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..*p).map(|v| Scalar::Residue { value: v, p: *p }).collect()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn reduce_bigint(k: &BigInt, p: u64) -> u64 {
    k.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); a is nonzero mod p
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: inv_mod(*value, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inverse()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.spec().one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Re-canonicalizes; the identity on every value this module constructs.
    pub fn canonical(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(BigRational::new(r.numer().clone(), r.denom().clone())),
            Scalar::Residue { value, p } => Scalar::Residue { value: value % p, p: *p },
        }
    }

    /// Numerator and denominator of the canonical form (denominator 1 over F_p).
    pub fn parts(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Residue { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    /// Reinterprets an element of ℚ in `target` (reduction mod p for F_p).
    pub fn convert(&self, target: FieldSpec) -> Result<Scalar> {
        match (self, target) {
            (Scalar::Rational(r), _) => target.scalar_big(r.numer(), r.denom()),
            (Scalar::Residue { p, .. }, FieldSpec::Prime(q)) if *p == q => Ok(self.clone()),
            _ => Err(Error::FieldMismatch(self.spec().to_string(), target.to_string())),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.spec(), b.spec())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, p: q }) if p == q => Scalar::Residue {
                value: (a + b) % p,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, p: q }) if p == q => Scalar::Residue {
                value: (a + p - b) % p,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, p: q }) if p == q => Scalar::Residue {
                value: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    // independent oracle: brute-force search for the multiplicative inverse
    fn brute_inverse(a: u64, p: u64) -> u64 {
        (1..p).find(|b| (a * b) % p == 1).unwrap()
    }

    #[test]
    fn scalar_construction() {
        assert_eq!(q().scalar(2, 4).unwrap(), q().scalar(1, 2).unwrap());
        assert_eq!(q().scalar(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(q().scalar(3, -6).unwrap().to_string(), "-1/2");
        assert_eq!(f(5).scalar(7, 1).unwrap().to_string(), "2");
        assert_eq!(f(5).scalar(1, 2).unwrap().to_string(), brute_inverse(2, 5).to_string());
        assert_eq!(f(5).scalar(-1, 1).unwrap().to_string(), "4");
    }

    #[test]
    fn scalar_errors() {
        assert_eq!(q().scalar(1, 0), Err(Error::ZeroDenominator));
        assert!(matches!(f(5).scalar(1, 10), Err(Error::NonInvertibleDenominator { .. })));
        assert_eq!(q().zero().inverse(), Err(Error::DivisionByZero));
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(MAX_PRIME + 11).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(q().one().inverse().unwrap(), q().one());
        assert_eq!(q().scalar(3, 7).unwrap().inverse().unwrap(), q().scalar(7, 3).unwrap());
        assert_eq!(f(7).from_i64(3).inverse().unwrap(), f(7).from_i64(brute_inverse(3, 7) as i64));
        assert_eq!(f(7).from_i64(3).inverse().unwrap().to_string(), "5");
        for p in [2u64, 3, 5, 7, 101] {
            for a in 1..p {
                let x = f(p).from_i64(a as i64);
                assert_eq!(x.inverse().unwrap(), f(p).from_i64(brute_inverse(a, p) as i64));
            }
        }
    }

    #[test]
    fn characteristic_divides() {
        assert!(f(2).char_divides(2));
        assert!(!q().char_divides(2));
        assert!(q().char_divides(0));
        assert!(f(3).char_divides(3));
        assert!(!f(2).char_divides(3));
    }

    #[test]
    fn powers() {
        let two = q().from_i64(2);
        assert_eq!(two.pow(-2).unwrap(), q().scalar(1, 4).unwrap());
        assert_eq!(two.pow(0).unwrap(), q().one());
        assert_eq!(f(7).from_i64(3).pow(6).unwrap(), f(7).one());
        assert_eq!(q().zero().pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(q().parse_scalar("-6/4").unwrap().to_string(), "-3/2");
        assert_eq!(f(5).parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(q().parse_scalar("x").is_err());
        let spec: FieldSpec = serde_json::from_str(r#"{"type":"Fp","p":5}"#).unwrap();
        assert_eq!(spec, f(5));
        assert_eq!(serde_json::to_string(&q()).unwrap(), r#"{"type":"Q"}"#);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"type":"Fp","p":6}"#).is_err());
    }

    #[test]
    fn char_two_signs_collapse() {
        assert_eq!(-f(2).one(), f(2).one());
    }
}
