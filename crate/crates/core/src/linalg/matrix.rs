use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LinalgError, SpacetimeVec};
use crate::exact::{sqrt_enclosure_bits, ExactError, Rational};

/// Square matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        RationalMatrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// The Minkowski metric `diag(1, -1, ..., -1)`.
    pub fn eta(dim: usize) -> Self {
        let mut diag = vec![-Rational::one(); dim];
        diag[0] = Rational::one();
        Self::diagonal(&diag)
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(LinalgError::Empty);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(LinalgError::NotSquare {
                    row: i,
                    len: row.len(),
                    dim,
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn column(&self, col: usize) -> SpacetimeVec {
        SpacetimeVec::new((0..self.dim).map(|r| self.get(r, col).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &RationalMatrix) -> Result<Self, LinalgError> {
        self.check_same_dim(rhs)?;
        Ok(self * rhs)
    }

    pub fn checked_sub(&self, rhs: &RationalMatrix) -> Result<Self, LinalgError> {
        self.check_same_dim(rhs)?;
        Ok(self - rhs)
    }

    pub fn mul_vec(&self, x: &SpacetimeVec) -> Result<SpacetimeVec, LinalgError> {
        x.check_dim(self.dim)?;
        Ok(self.mul_vec_unchecked(x))
    }

    pub(crate) fn mul_vec_unchecked(&self, x: &SpacetimeVec) -> SpacetimeVec {
        SpacetimeVec::new(
            self.entries
                .chunks(self.dim)
                .map(|row| row.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Exact test of `M^T eta M = eta`.
    pub fn is_lorentz(&self) -> bool {
        let eta = Self::eta(self.dim);
        &(&self.transpose() * &eta) * self == eta
    }

    /// Exact test of `A^T A = I`.
    pub fn is_orthogonal(&self) -> bool {
        (&self.transpose() * self).is_identity()
    }

    /// Sum of squared entries.
    pub fn frobenius_norm_sq(&self) -> Rational {
        self.entries.iter().map(Rational::square).sum()
    }

    /// Certified rational upper bound on the Frobenius norm, resolved to
    /// `2^-bits`. Also bounds the operator norm.
    pub fn frobenius_norm_upper(&self, bits: u32) -> Result<Rational, ExactError> {
        Ok(sqrt_enclosure_bits(&self.frobenius_norm_sq(), bits)?
            .hi()
            .clone())
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).recip().ok()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.sub_row_multiple(r, col, &f);
                    inv.sub_row_multiple(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    /// Some `x` with `M x = b` (free variables set to 0), or `None` when the
    /// system is inconsistent. Works for singular `M`.
    pub fn solve(&self, b: &SpacetimeVec) -> Option<SpacetimeVec> {
        let n = self.dim;
        if b.dim() != n {
            return None;
        }
        let mut a: Vec<Vec<Rational>> = self
            .rows()
            .into_iter()
            .zip(b.coords())
            .map(|(mut row, bi)| {
                row.push(bi.clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip().expect("nonzero pivot");
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=n {
                        let delta = &f * &a[r][j];
                        a[i][j] -= &delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[n].is_zero()) {
            return None;
        }
        let mut x = vec![Rational::zero(); n];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = a[row][n].clone();
        }
        Some(SpacetimeVec::new(x))
    }

    /// Basis of `{x : M x = 0}` restricted to the given rows of `M`.
    pub(crate) fn nullspace_of_rows(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
        let mut a: Vec<Vec<Rational>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..dim {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip().expect("nonzero pivot");
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..dim {
                        let delta = &f * &a[r][j];
                        a[i][j] -= &delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.len() {
                break;
            }
        }
        (0..dim)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); dim];
                v[free] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&a[row][free];
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.dim {
            self.entries.swap(a * self.dim + c, b * self.dim + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: &Rational) {
        for c in 0..self.dim {
            self.entries[r * self.dim + c] *= k;
        }
    }

    fn sub_row_multiple(&mut self, target: usize, source: usize, k: &Rational) {
        for c in 0..self.dim {
            let delta = k * self.get(source, c);
            self.entries[target * self.dim + c] -= &delta;
        }
    }

    pub(crate) fn check_same_dim(&self, rhs: &RationalMatrix) -> Result<(), LinalgError> {
        if self.dim != rhs.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        Ok(())
    }

    /// Embeds a spatial `n x n` block as `diag(1, block)`.
    pub fn embed_spatial(block: &RationalMatrix) -> Self {
        let n = block.dim + 1;
        let mut m = Self::identity(n);
        for r in 0..block.dim {
            for c in 0..block.dim {
                m.set(r + 1, c + 1, block.get(r, c).clone());
            }
        }
        m
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = RationalMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * n + c] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        RationalMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        RationalMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Row-major nested arrays of fraction strings.
impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        RationalMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
