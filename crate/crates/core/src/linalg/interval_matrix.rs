use std::ops::Mul;

use super::RationalMatrix;
use crate::exact::{RationalInterval, Rational};

/// Square matrix of interval enclosures, used to evaluate irrational target
/// maps and bound their distance to rational outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalMatrix {
    dim: usize,
    entries: Vec<RationalInterval>,
}

impl IntervalMatrix {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> RationalInterval) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        IntervalMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from(&RationalMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &RationalInterval {
        &self.entries[row * self.dim + col]
    }

    /// Enclosure of `||self - m||_F^2`.
    pub fn frobenius_dist_sq(&self, m: &RationalMatrix) -> RationalInterval {
        self.entries
            .iter()
            .zip(m.entries())
            .map(|(iv, x)| iv.add_scalar(&-x).square())
            .fold(RationalInterval::point(Rational::zero()), |acc, x| &acc + &x)
    }

    pub fn round_outward(&self, bits: u32) -> Self {
        IntervalMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x.round_outward(bits)).collect(),
        }
    }

    /// `diag(1, block)`.
    pub fn embed_spatial(block: &IntervalMatrix) -> Self {
        Self::from_fn(block.dim + 1, |r, c| match (r, c) {
            (0, 0) => RationalInterval::point(Rational::one()),
            (0, _) | (_, 0) => RationalInterval::point(Rational::zero()),
            _ => block.get(r - 1, c - 1).clone(),
        })
    }
}

impl From<&RationalMatrix> for IntervalMatrix {
    fn from(m: &RationalMatrix) -> Self {
        IntervalMatrix {
            dim: m.dim(),
            entries: m
                .entries()
                .iter()
                .cloned()
                .map(RationalInterval::point)
                .collect(),
        }
    }
}

impl Mul for &IntervalMatrix {
    type Output = IntervalMatrix;
    fn mul(self, rhs: &IntervalMatrix) -> IntervalMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        IntervalMatrix::from_fn(self.dim, |r, c| {
            (0..self.dim)
                .map(|k| self.get(r, k) * rhs.get(k, c))
                .fold(RationalInterval::point(Rational::zero()), |acc, x| &acc + &x)
        })
    }
}
