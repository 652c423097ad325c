use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{sqrt_enclosure_bits, ExactError, Rational};

/// Closed interval `[lo, hi]` with rational endpoints.
///
/// All operations are inclusion-isotone and never lose the true value: the
/// result of an operation contains every real result on members of the
/// operands.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        if lo > hi {
            return Err(ExactError::InvertedInterval { lo, hi });
        }
        Ok(RationalInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Largest absolute value of a member.
    pub fn magnitude(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn square(&self) -> Self {
        let a = self.lo.square();
        let b = self.hi.square();
        if self.contains_zero() {
            RationalInterval::new_unchecked(Rational::zero(), a.max(b))
        } else if a <= b {
            RationalInterval::new_unchecked(a, b)
        } else {
            RationalInterval::new_unchecked(b, a)
        }
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.contains_zero() {
            return Err(ExactError::ContainsZero(self.clone()));
        }
        Ok(RationalInterval::new_unchecked(
            self.hi.recip()?,
            self.lo.recip()?,
        ))
    }

    pub fn checked_div(&self, rhs: &RationalInterval) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self * &RationalInterval::point(k.clone())
    }

    pub fn add_scalar(&self, k: &Rational) -> Self {
        RationalInterval::new_unchecked(&self.lo + k, &self.hi + k)
    }

    /// Enclosure of `sqrt` of every member, each endpoint refined to `2^-bits`.
    pub fn sqrt(&self, bits: u32) -> Result<Self, ExactError> {
        if self.lo.is_negative() {
            return Err(ExactError::NegativeSqrt(self.lo.clone()));
        }
        let lo = sqrt_enclosure_bits(&self.lo, bits)?.into_bounds().0;
        let hi = sqrt_enclosure_bits(&self.hi, bits)?.into_bounds().1;
        Ok(RationalInterval::new_unchecked(lo, hi))
    }

    /// Widens both ends outward to multiples of `2^-bits`, capping endpoint
    /// denominator growth in long evaluation chains.
    pub fn round_outward(&self, bits: u32) -> Self {
        RationalInterval::new_unchecked(self.lo.floor_dyadic(bits), self.hi.ceil_dyadic(bits))
    }

    pub fn hull(&self, other: &RationalInterval) -> Self {
        RationalInterval::new_unchecked(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }
}

impl From<Rational> for RationalInterval {
    fn from(x: Rational) -> Self {
        RationalInterval::point(x)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval::new_unchecked(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Add for RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: RationalInterval) -> RationalInterval {
        &self + &rhs
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval::new_unchecked(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Sub for RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: RationalInterval) -> RationalInterval {
        &self - &rhs
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        if self.is_point() && rhs.is_point() {
            return RationalInterval::point(&self.lo * &rhs.lo);
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        RationalInterval::new_unchecked(lo, hi)
    }
}

impl Mul for RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: RationalInterval) -> RationalInterval {
        &self * &rhs
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval::new_unchecked(-&self.hi, -&self.lo)
    }
}

impl Neg for RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        -&self
    }
}
