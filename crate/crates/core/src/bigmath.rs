//! Exact integer and rational arithmetic, plus the maps from rationals to
//! integers used throughout: floor, ceiling, fractional part and sawtooth.
//!
//! Unbounded naturals and integers are `num-bigint` values. [`Rational`] is a
//! thin wrapper around `BigRational` that pins down the floor-based
//! semantics (`num-rational`'s own `fract` truncates toward zero) and the
//! textual format `p/q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;
/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Exact fraction kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<Integer>, denominator: impl Into<Integer>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    /// `numerator / denominator` for a denominator known to be nonzero.
    pub fn ratio(numerator: impl Into<Integer>, denominator: impl Into<Integer>) -> Self {
        Rational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Rational::ratio(1, 2)
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Greatest integer not exceeding `self`.
    pub fn floor(&self) -> Integer {
        self.numer().div_floor(self.denom())
    }

    /// Least integer not below `self`.
    pub fn ceil(&self) -> Integer {
        -((-self.numer()).div_floor(self.denom()))
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn frac(&self) -> Rational {
        Rational::ratio(self.numer().mod_floor(self.denom()), self.denom().clone())
    }

    /// `frac(self) - 1/2` off the integers, `0` on them.
    pub fn sawtooth(&self) -> Rational {
        if self.is_integer() {
            Rational::zero()
        } else {
            self.frac() - Rational::half()
        }
    }

    /// Converts to a natural if `self` is a nonnegative integer.
    pub fn to_natural(&self) -> Option<Natural> {
        if self.is_integer() {
            self.numer().to_biguint()
        } else {
            None
        }
    }
}

impl From<Integer> for Rational {
    fn from(z: Integer) -> Self {
        Rational(BigRational::from_integer(z))
    }
}

impl From<Natural> for Rational {
    fn from(n: Natural) -> Self {
        Rational::from(Integer::from(n))
    }
}

impl From<&Natural> for Rational {
    fn from(n: &Natural) -> Self {
        Rational::from(Integer::from(n.clone()))
    }
}

impl From<i64> for Rational {
    fn from(z: i64) -> Self {
        Rational::from(Integer::from(z))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from(Integer::from(n))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, q| acc + q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_error(input: &str, reason: &'static str) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason,
    }
}

fn parse_integer(input: &str, part: &str) -> Result<Integer> {
    let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(parse_error(input, "expected decimal digits"));
    }
    Integer::from_str(part).map_err(|_| parse_error(input, "expected decimal digits"))
}

/// Accepts `p`, `p/q` (with `q > 0`) and terminating decimals `d.ddd`,
/// each with an optional sign. Decimals convert exactly.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let input = s.trim();
        if let Some((num, den)) = input.split_once('/') {
            let num = parse_integer(s, num)?;
            if den.starts_with(['-', '+']) {
                return Err(parse_error(s, "denominator must be an unsigned integer"));
            }
            let den = parse_integer(s, den)?;
            if den.is_zero() {
                return Err(parse_error(s, "zero denominator"));
            }
            return Ok(Rational::ratio(num, den));
        }
        if let Some((whole, fraction)) = input.split_once('.') {
            if fraction.is_empty() || !fraction.bytes().all(|c| c.is_ascii_digit()) {
                return Err(parse_error(s, "expected a terminating decimal"));
            }
            let negative = whole.starts_with('-');
            let unsigned = whole.strip_prefix(['-', '+']).unwrap_or(whole);
            let whole = if unsigned.is_empty() {
                Integer::zero()
            } else {
                parse_integer(s, unsigned)?
            };
            let scale = Integer::from(10u32).pow(fraction.len() as u32);
            let magnitude = whole * &scale + Integer::from_str(fraction).expect("ascii digits");
            let numer = if negative { -magnitude } else { magnitude };
            return Ok(Rational::ratio(numer, scale));
        }
        Ok(Rational::from(parse_integer(s, input)?))
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact `base^exp`.
pub fn pow(base: &Natural, exp: u64) -> Natural {
    Pow::pow(base, exp)
}

/// Fails unless `base >= 2`.
pub fn check_base(base: &Natural) -> Result<()> {
    if *base < Natural::from(2u32) {
        Err(Error::BaseTooSmall(base.to_string()))
    } else {
        Ok(())
    }
}

/// The unique `K` with `base^K <= q < base^(K+1)`, found by exact
/// comparison against successive powers.
pub fn ilog(base: &Natural, q: &Rational) -> Result<u64> {
    check_base(base)?;
    if *q < Rational::one() {
        return Err(Error::BelowOne(q.to_string()));
    }
    // base^K is an integer, so base^K <= q iff base^K <= floor(q).
    let bound = q.floor();
    let base = Integer::from(base.clone());
    let mut power = Integer::one();
    let mut k = 0u64;
    loop {
        let next = &power * &base;
        if next.cmp(&bound) == Ordering::Greater {
            return Ok(k);
        }
        power = next;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn z(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn floor_examples() {
        assert_eq!(q("7/2").floor(), z(3));
        assert_eq!(q("3").floor(), z(3));
        assert_eq!(q("-1/2").floor(), z(-1));
    }

    #[test]
    fn ceil_examples() {
        assert_eq!(q("7/2").ceil(), z(4));
        assert_eq!(q("3/1").ceil(), z(3));
        assert_eq!(q("-1/2").ceil(), z(0));
    }

    #[test]
    fn frac_examples() {
        assert_eq!(q("9/8").frac(), q("1/8"));
        assert_eq!(q("3").frac(), Rational::zero());
        assert_eq!(q("-1/2").frac(), q("1/2"));
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(q("3").sawtooth(), Rational::zero());
        assert_eq!(q("7/4").sawtooth(), q("1/4"));
        assert_eq!(q("9/8").sawtooth(), q("-3/8"));
    }

    #[test]
    fn ilog_examples() {
        assert_eq!(ilog(&Natural::from(2u32), &q("15/2")).unwrap(), 2);
        assert_eq!(ilog(&Natural::from(3u32), &q("1")).unwrap(), 0);
        assert_eq!(ilog(&Natural::from(2u32), &q("8")).unwrap(), 3);
    }

    #[test]
    fn ilog_rejects_bad_input() {
        assert!(matches!(
            ilog(&Natural::from(2u32), &q("1/2")),
            Err(Error::BelowOne(_))
        ));
        assert!(matches!(
            ilog(&Natural::from(1u32), &q("5")),
            Err(Error::BaseTooSmall(_))
        ));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(pow(&Natural::from(3u32), 7), Natural::from(2187u32));
        assert_eq!(pow(&Natural::from(2u32), 0), Natural::from(1u32));
        assert_eq!(pow(&Natural::from(10u32), 3), Natural::from(1000u32));
    }

    #[test]
    fn parses_and_prints_canonically() {
        assert_eq!(q("7.5"), Rational::ratio(15, 2));
        assert_eq!(q("-0.25").to_string(), "-1/4");
        assert_eq!(q(".5").to_string(), "1/2");
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("12/4").to_string(), "3");
        assert_eq!(q("+3").to_string(), "3");
        for bad in ["", "1/0", "1/-2", "0.(3)", "1e5", "3.", "a/b", "1//2", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }
}
