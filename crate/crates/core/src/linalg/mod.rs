//! Exact vectors and matrices over the rationals, the Minkowski form, and
//! Frobenius-norm machinery used for every error certificate.
//!
//! The metric is `eta = diag(1, -1, ..., -1)` with time first.

mod interval_matrix;
mod maps;
mod matrix;
mod vector;

pub use interval_matrix::IntervalMatrix;
pub use maps::{AffineMap, LorentzMatrix, PoincareMap};
pub use matrix::RationalMatrix;
pub use vector::{minkowski_form, space_sq, time_sep, SpacetimeVec};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("empty matrix")]
    Empty,
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("matrix does not satisfy M^T eta M = eta")]
    NotLorentz,
    #[error("matrix does not satisfy A^T A = I")]
    NotOrthogonal,
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Exact(#[from] ExactError),
}
