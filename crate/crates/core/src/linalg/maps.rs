use serde::{Deserialize, Serialize};

use super::{LinalgError, RationalMatrix, SpacetimeVec};

/// A rational matrix known to satisfy `M^T eta M = eta` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LorentzMatrix(RationalMatrix);

impl LorentzMatrix {
    /// Validates the Lorentz condition eagerly.
    pub fn new(matrix: RationalMatrix) -> Result<Self, LinalgError> {
        if matrix.dim() < 2 {
            return Err(LinalgError::DimensionTooSmall(matrix.dim()));
        }
        if !matrix.is_lorentz() {
            return Err(LinalgError::NotLorentz);
        }
        Ok(LorentzMatrix(matrix))
    }

    pub fn identity(dim: usize) -> Self {
        LorentzMatrix(RationalMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RationalMatrix {
        self.0
    }

    /// `eta M^T eta`, which is the exact inverse for any Lorentz matrix.
    pub fn inverse(&self) -> Self {
        let eta = RationalMatrix::eta(self.dim());
        LorentzMatrix(&(&eta * &self.0.transpose()) * &eta)
    }

    pub fn compose(&self, rhs: &LorentzMatrix) -> Result<Self, LinalgError> {
        Ok(LorentzMatrix(self.0.checked_mul(&rhs.0)?))
    }
}

impl<'de> Deserialize<'de> for LorentzMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let m = RationalMatrix::deserialize(deserializer)?;
        LorentzMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// `x -> linear * x + translation` with an arbitrary square linear part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: RationalMatrix,
    pub translation: SpacetimeVec,
}

impl AffineMap {
    pub fn new(linear: RationalMatrix, translation: SpacetimeVec) -> Result<Self, LinalgError> {
        translation.check_dim(linear.dim())?;
        Ok(AffineMap {
            linear,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap {
            linear: RationalMatrix::identity(dim),
            translation: SpacetimeVec::origin(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn apply(&self, x: &SpacetimeVec) -> Result<SpacetimeVec, LinalgError> {
        Ok(&self.linear.mul_vec(x)? + &self.translation)
    }

    /// `self o inner`: apply `inner` first.
    pub fn compose(&self, inner: &AffineMap) -> Result<Self, LinalgError> {
        Ok(AffineMap {
            linear: self.linear.checked_mul(&inner.linear)?,
            translation: &self.linear.mul_vec(&inner.translation)? + &self.translation,
        })
    }

    /// General inverse by Gaussian elimination.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let inv = self.linear.inverse().ok_or(LinalgError::Singular)?;
        let translation = inv.mul_vec_unchecked(&self.translation).scale(&-crate::exact::Rational::one());
        Ok(AffineMap {
            linear: inv,
            translation,
        })
    }

    pub fn is_poincare(&self) -> bool {
        self.linear.is_lorentz()
    }
}

/// An affine map with an exactly-Lorentz linear part: an inertial observer of
/// the rational model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PoincareMap {
    pub linear: LorentzMatrix,
    pub translation: SpacetimeVec,
}

impl PoincareMap {
    pub fn new(linear: LorentzMatrix, translation: SpacetimeVec) -> Result<Self, LinalgError> {
        translation.check_dim(linear.dim())?;
        Ok(PoincareMap {
            linear,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        PoincareMap {
            linear: LorentzMatrix::identity(dim),
            translation: SpacetimeVec::origin(dim),
        }
    }

    pub fn linear_only(linear: LorentzMatrix) -> Self {
        let dim = linear.dim();
        PoincareMap {
            linear,
            translation: SpacetimeVec::origin(dim),
        }
    }

    pub fn translation_only(translation: SpacetimeVec) -> Self {
        PoincareMap {
            linear: LorentzMatrix::identity(translation.dim()),
            translation,
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn apply(&self, x: &SpacetimeVec) -> Result<SpacetimeVec, LinalgError> {
        Ok(&self.linear.matrix().mul_vec(x)? + &self.translation)
    }

    /// `self o inner`: apply `inner` first.
    pub fn compose(&self, inner: &PoincareMap) -> Result<Self, LinalgError> {
        Ok(PoincareMap {
            linear: self.linear.compose(&inner.linear)?,
            translation: &self.linear.matrix().mul_vec(&inner.translation)? + &self.translation,
        })
    }

    pub fn inverse(&self) -> Self {
        let linear = self.linear.inverse();
        let translation = linear
            .matrix()
            .mul_vec_unchecked(&self.translation)
            .scale(&-crate::exact::Rational::one());
        PoincareMap {
            linear,
            translation,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.matrix().is_identity() && self.translation.is_zero()
    }

    pub fn to_affine(&self) -> AffineMap {
        AffineMap {
            linear: self.linear.matrix().clone(),
            translation: self.translation.clone(),
        }
    }
}

impl TryFrom<AffineMap> for PoincareMap {
    type Error = LinalgError;

    fn try_from(map: AffineMap) -> Result<Self, Self::Error> {
        PoincareMap::new(LorentzMatrix::new(map.linear)?, map.translation)
    }
}

impl From<PoincareMap> for AffineMap {
    fn from(p: PoincareMap) -> Self {
        AffineMap {
            linear: p.linear.into_matrix(),
            translation: p.translation,
        }
    }
}
