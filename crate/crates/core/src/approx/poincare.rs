use serde::{Deserialize, Serialize};

use crate::exact::Rational;
use crate::linalg::{LinalgError, LorentzMatrix, PoincareMap, RationalMatrix, SpacetimeVec};

use super::boost::{boost_matrix, BoostTarget};
use super::compose::{compose_with_bound, equal_dyadic_budget, BoundedFactor};
use super::orthogonal::approx_orthogonal;
use super::{check_eps, ApproxCertificate, ApproxError, BoostSpec, OrthogonalSpec, TargetSpec, MAX_SEARCH_BITS};

/// Resolution used for the boost operator-norm bound in the budget pre-pass.
const NORM_BITS: u32 = 32;

/// Target `x -> diag(1, Post) B_v diag(1, Pre) x + translation`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSpec {
    pub translation: SpacetimeVec,
    pub boost: BoostSpec,
    #[serde(default)]
    pub pre: OrthogonalSpec,
    #[serde(default)]
    pub post: OrthogonalSpec,
}

impl PoincareSpec {
    pub fn identity(dim: usize) -> Self {
        PoincareSpec {
            translation: SpacetimeVec::origin(dim),
            boost: BoostSpec { speed: Rational::zero() },
            pre: OrthogonalSpec::identity(),
            post: OrthogonalSpec::identity(),
        }
    }

    /// Boost of speed `v` toward the spatial direction `(a, b)` in the plane
    /// of spatial axes `(1, 2)`: `O B_v O^-1` with `O` the rotation taking
    /// axis 1 to `(a, b)`.
    pub fn boost_toward(
        speed: Rational,
        toward: [Rational; 2],
        translation: SpacetimeVec,
    ) -> Result<Self, ApproxError> {
        let post = OrthogonalSpec::single((1, 2), toward);
        let pre = post.inverse().expect("no sign mask");
        Ok(PoincareSpec {
            translation,
            boost: BoostSpec::new(speed)?,
            pre,
            post,
        })
    }

    pub fn validate(&self, dim: usize) -> Result<(), ApproxError> {
        if dim < 2 {
            return Err(LinalgError::DimensionTooSmall(dim).into());
        }
        self.translation.check_dim(dim)?;
        self.boost.validate()?;
        self.pre.validate(dim - 1)?;
        self.post.validate(dim - 1)
    }
}

/// Rational Poincare map with exactly Lorentz linear part and certified
/// Frobenius bound on the linear difference below `eps`. The translation is
/// carried exactly.
pub fn approx_poincare(
    spec: &PoincareSpec,
    eps: &Rational,
    dim: usize,
) -> Result<(PoincareMap, ApproxCertificate), ApproxError> {
    check_eps(eps)?;
    spec.validate(dim)?;
    let n = dim - 1;
    let target = BoostTarget::new(spec.boost.speed.square())?;
    let boost_norm = target.op_norm_upper(NORM_BITS);
    let norms = [Rational::one(), boost_norm.clone(), Rational::one()];
    let budget = equal_dyadic_budget(&norms, eps)?;

    let (post, post_cert) = approx_orthogonal(&spec.post, &budget, n)?;
    let boost = target.approximate(&budget, MAX_SEARCH_BITS)?;
    let (pre, pre_cert) = approx_orthogonal(&spec.pre, &budget, n)?;

    let factors = [
        BoundedFactor {
            matrix: RationalMatrix::embed_spatial(&post),
            error_bound: post_cert.error_bound,
            target_norm_bound: Rational::one(),
        },
        BoundedFactor {
            matrix: boost_matrix(&boost.speed, dim)?.into_matrix(),
            error_bound: boost.bound,
            target_norm_bound: boost_norm,
        },
        BoundedFactor {
            matrix: RationalMatrix::embed_spatial(&pre),
            error_bound: pre_cert.error_bound,
            target_norm_bound: Rational::one(),
        },
    ];
    let (product, bound) = compose_with_bound(&factors)?;
    debug_assert!(&bound < eps);
    let linear = LorentzMatrix::new(product.clone())?;
    let map = PoincareMap::new(linear, spec.translation.clone())?;
    Ok((
        map,
        ApproxCertificate {
            target: TargetSpec::Poincare(spec.clone()),
            output: product,
            delta: if bound.is_zero() { Rational::zero() } else { budget },
            error_bound: bound,
            velocity_error_bound: None,
        },
    ))
}
