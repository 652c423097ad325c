use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};

use super::LinalgError;
use crate::exact::Rational;

/// A point `<x1, ..., xd>` of rational coordinate space. Coordinate 1 is
/// time, the rest are space.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpacetimeVec(Vec<Rational>);

impl SpacetimeVec {
    pub fn new(coords: Vec<Rational>) -> Self {
        SpacetimeVec(coords)
    }

    pub fn origin(dim: usize) -> Self {
        SpacetimeVec(vec![Rational::zero(); dim])
    }

    /// `<1, 0, ..., 0>`.
    pub fn unit_time(dim: usize) -> Self {
        let mut v = Self::origin(dim);
        v.0[0] = Rational::one();
        v
    }

    /// `<t, s1, ..., s_{d-1}>`.
    pub fn from_time_space(time: Rational, space: &[Rational]) -> Self {
        let mut coords = Vec::with_capacity(space.len() + 1);
        coords.push(time);
        coords.extend_from_slice(space);
        SpacetimeVec(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn time(&self) -> &Rational {
        &self.0[0]
    }

    pub fn spatial(&self) -> &[Rational] {
        &self.0[1..]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        SpacetimeVec(self.0.iter().map(|x| x * k).collect())
    }

    pub fn dot(&self, other: &SpacetimeVec) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<(), LinalgError> {
        if self.dim() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for SpacetimeVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &SpacetimeVec {
    type Output = SpacetimeVec;
    fn add(self, rhs: &SpacetimeVec) -> SpacetimeVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        SpacetimeVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &SpacetimeVec {
    type Output = SpacetimeVec;
    fn sub(self, rhs: &SpacetimeVec) -> SpacetimeVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        SpacetimeVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for SpacetimeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for SpacetimeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `x1 - y1`.
pub fn time_sep(x: &SpacetimeVec, y: &SpacetimeVec) -> Rational {
    x.time() - y.time()
}

/// `(x2 - y2)^2 + ... + (xd - yd)^2`.
pub fn space_sq(x: &SpacetimeVec, y: &SpacetimeVec) -> Rational {
    x.spatial()
        .iter()
        .zip(y.spatial())
        .map(|(a, b)| (a - b).square())
        .sum()
}

/// `time(x, y)^2 - space^2(x, y)`: positive for timelike pairs, zero on the
/// light cone.
pub fn minkowski_form(x: &SpacetimeVec, y: &SpacetimeVec) -> Result<Rational, LinalgError> {
    y.check_dim(x.dim())?;
    Ok(time_sep(x, y).square() - space_sq(x, y))
}
