use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// An exact rational number kept in canonical form (positive denominator,
/// numerator and denominator coprime).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, reducing to canonical form.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(num.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `2^-bits`.
    pub fn dyadic_unit(bits: u32) -> Self {
        Rational(BigRational::new(
            BigInt::one(),
            BigInt::one() << (bits as usize),
        ))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    /// Nearest integer, ties rounded up.
    pub fn round_half_up(&self) -> BigInt {
        (self + &Rational::new(1, 2)).floor()
    }

    /// `k / 2^bits` in canonical form; the only common factors are twos.
    fn from_dyadic(k: BigInt, bits: u32) -> Self {
        let shift = k.trailing_zeros().map_or(bits as u64, |z| z.min(bits as u64));
        let den = BigInt::one() << (bits as u64 - shift) as usize;
        Rational(BigRational::new_raw(k >> shift as usize, den))
    }

    /// Largest multiple of `2^-bits` not above `self`.
    pub fn floor_dyadic(&self, bits: u32) -> Self {
        let k = (self.0.numer() << bits as usize).div_floor(self.0.denom());
        Self::from_dyadic(k, bits)
    }

    /// Smallest multiple of `2^-bits` not below `self`.
    pub fn ceil_dyadic(&self, bits: u32) -> Self {
        let k = -((-(self.0.numer() << bits as usize)).div_floor(self.0.denom()));
        Self::from_dyadic(k, bits)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub(crate) fn numer_magnitude(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub(crate) fn denom_magnitude(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<Rational> for BigRational {
    fn from(value: Rational) -> Self {
        value.0
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(text: &str, original: &str) -> Result<BigInt, ExactError> {
    let digits = text
        .strip_prefix('-')
        .or_else(|| text.strip_prefix('+'))
        .unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ExactError::Parse(original.to_string()));
    }
    text.trim_start_matches('+')
        .parse::<BigInt>()
        .map_err(|_| ExactError::Parse(original.to_string()))
}

/// Accepts `p/q` or `p`, with an optional sign on `p`. Decimals are rejected.
impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        match trimmed.split_once('/') {
            None => Ok(Rational::from_integer(parse_integer(trimmed, s)?)),
            Some((p, q)) => {
                let num = parse_integer(p.trim(), s)?;
                let q = q.trim();
                if q.starts_with(['-', '+']) {
                    return Err(ExactError::Parse(s.to_string()));
                }
                let den = parse_integer(q, s)?;
                if den.is_zero() {
                    return Err(ExactError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational::new(num, den))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
// Panics on a zero divisor, like the integer types; use `checked_div` when
// the divisor is not known to be nonzero.
forward_binop!(Div, div, /);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Shorthand for building rationals in tests and fixtures.
///
/// Panics if `den` is zero.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::new(8, 4).to_string(), "2");
    }

    #[test]
    fn dyadic_rounding_brackets_and_is_canonical() {
        for (n, d) in [(1, 3), (-1, 3), (5, 8), (-5, 8), (0, 1), (7, 1), (-22, 7)] {
            let x = q(n, d);
            for bits in [0, 1, 3, 10] {
                let lo = x.floor_dyadic(bits);
                let hi = x.ceil_dyadic(bits);
                let cell = Rational::dyadic_unit(bits);
                assert!(lo <= x && x <= hi && &hi - &lo <= cell);
                assert_eq!(lo, Rational::new(lo.numer().clone(), lo.denom().clone()));
                assert_eq!(hi, Rational::new(hi.numer().clone(), hi.denom().clone()));
            }
        }
        assert_eq!(q(5, 8).floor_dyadic(3), q(5, 8));
        assert_eq!(q(1, 3).ceil_dyadic(2), q(1, 2));
    }

    #[test]
    fn parses_fractions() {
        assert_eq!("3/5".parse::<Rational>().unwrap(), q(3, 5));
        assert_eq!("-3/5".parse::<Rational>().unwrap(), q(-3, 5));
        assert_eq!("+7".parse::<Rational>().unwrap(), q(7, 1));
        assert_eq!(" 6/8 ".parse::<Rational>().unwrap(), q(3, 4));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "0.5", "1/0", "1/-2", "a/b", "1//2", "--1", "1e3", "/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn floor_ceil_round() {
        assert_eq!(q(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(q(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(q(7, 2).round_half_up(), BigInt::from(4));
        assert_eq!(q(5, 3).floor_dyadic(2), q(6, 4));
        assert_eq!(q(5, 3).ceil_dyadic(2), q(7, 4));
        assert_eq!(q(3, 4).ceil_dyadic(2), q(3, 4));
    }

    #[test]
    fn serde_as_string() {
        let v = vec![q(1, 2), q(-3, 1)];
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"["1/2","-3"]"#);
        let back: Vec<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn recip_of_zero_is_error() {
        assert_eq!(Rational::zero().recip(), Err(ExactError::DivisionByZero));
    }
}
