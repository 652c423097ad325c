//! Exact rational scalars and rational-endpoint interval enclosures.
//!
//! Everything irrational that shows up later (norms, `1/sqrt(1-v^2)`, unit
//! directions) is carried as a [`RationalInterval`] whose endpoints come from
//! integer square roots, so no floating point enters a certificate.

mod interval;
mod rational;

pub use interval::RationalInterval;
pub use rational::{q, Rational};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("square root of negative value {0}")]
    NegativeSqrt(Rational),
    #[error("enclosure width must be positive, got {0}")]
    NonPositiveWidth(Rational),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed fraction {0:?}; expected p/q or p")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("interval lower end {lo} exceeds upper end {hi}")]
    InvertedInterval { lo: Rational, hi: Rational },
    #[error("interval {0} contains zero")]
    ContainsZero(RationalInterval),
}

fn exact_isqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Returns `r` with `r^2 = x` when `x` is the square of a rational.
pub fn rational_sqrt(x: &Rational) -> Result<Option<Rational>, ExactError> {
    if x.is_negative() {
        return Err(ExactError::NegativeSqrt(x.clone()));
    }
    let num = exact_isqrt(&x.numer_magnitude());
    let den = exact_isqrt(&x.denom_magnitude());
    Ok(match (num, den) {
        (Some(n), Some(d)) => Some(Rational::new(BigInt::from(n), BigInt::from(d))),
        _ => None,
    })
}

/// Smallest `k` with `2^-k <= width`.
pub(crate) fn bits_for_width(width: &Rational) -> u32 {
    let mut k = 0u32;
    let mut unit = Rational::one();
    while &unit > width {
        k += 1;
        unit = Rational::dyadic_unit(k);
    }
    k
}

/// Dyadic bracket `[a/2^k, (a+1)/2^k]` around `sqrt(x)`, `a = isqrt(floor(x*4^k))`.
pub(crate) fn sqrt_bracket(x: &Rational, bits: u32) -> RationalInterval {
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (x * &Rational::from_integer(scale)).floor();
    let a = scaled.sqrt();
    let den = BigInt::one() << (bits as usize);
    RationalInterval::new_unchecked(
        Rational::new(a.clone(), den.clone()),
        Rational::new(a + 1, den),
    )
}

/// Certified enclosure of `sqrt(x)` no wider than `width`; degenerate when
/// `x` is a perfect rational square.
pub fn sqrt_enclosure(x: &Rational, width: &Rational) -> Result<RationalInterval, ExactError> {
    if !width.is_positive() {
        return Err(ExactError::NonPositiveWidth(width.clone()));
    }
    if let Some(r) = rational_sqrt(x)? {
        return Ok(RationalInterval::point(r));
    }
    Ok(sqrt_bracket(x, bits_for_width(width)))
}

/// `sqrt_enclosure` at a fixed dyadic resolution `2^-bits`.
pub fn sqrt_enclosure_bits(x: &Rational, bits: u32) -> Result<RationalInterval, ExactError> {
    if x.is_negative() {
        return Err(ExactError::NegativeSqrt(x.clone()));
    }
    if let Some(r) = rational_sqrt(x)? {
        return Ok(RationalInterval::point(r));
    }
    Ok(sqrt_bracket(x, bits))
}

/// Certified rational upper bound on `sqrt(x)` at resolution `2^-bits`.
pub fn sqrt_upper(x: &Rational, bits: u32) -> Result<Rational, ExactError> {
    Ok(sqrt_enclosure_bits(x, bits)?.hi().clone())
}
