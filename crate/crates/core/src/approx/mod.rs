//! Certified rational approximation of real kinematic maps.
//!
//! Every routine returns an output that satisfies its structural identity
//! exactly (Lorentz or orthogonal) together with an [`ApproxCertificate`]
//! whose `error_bound` is a rational upper bound on the Frobenius distance to
//! the real target, obtained from interval enclosures only.
//!
//! Searches walk a fixed dyadic ladder from the coarsest level down and keep
//! the best certificate seen, so asking for a smaller `eps` can only lower
//! the returned bound.

mod boost;
mod compose;
mod observer;
mod orthogonal;
mod poincare;

pub use boost::{approx_boost, boost_matrix, boost_matrix_along, BoostApprox, BoostLadder, BoostTarget};
pub use compose::{compose_with_bound, lemma_fold, BoundedFactor};
pub use observer::{observer_with_velocity, pure_boost_enclosure, ObserverApprox};
pub use orthogonal::{approx_orthogonal, planar_rotation, OrthogonalSpec, PlanarRotation};
pub use poincare::{approx_poincare, PoincareSpec};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rational_sqrt, ExactError, Rational};
use crate::linalg::{LinalgError, RationalMatrix};
use crate::sphere::SphereError;

/// Deepest dyadic level any search is allowed to reach.
pub const MAX_SEARCH_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("speed must satisfy |v| < 1, got {0}")]
    SpeedOutOfRange(Rational),
    #[error("speed must satisfy |v| < 1, got |v|^2 = {0}")]
    VelocityOutOfRange(Rational),
    #[error("speed must be nonnegative, got {0}")]
    NegativeSpeed(Rational),
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(Rational),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("no certificate below {eps} for {what} within search depth 2^-{max_bits}")]
    SearchExhausted {
        what: &'static str,
        eps: Rational,
        max_bits: u32,
    },
    #[error("chain of factors is empty")]
    EmptyChain,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Sphere(#[from] SphereError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub(crate) fn check_eps(eps: &Rational) -> Result<(), ApproxError> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(ApproxError::NonPositiveEps(eps.clone()))
    }
}

/// A speed `w` with `sqrt(1 - w^2) = r` rational, so `B_w` is a rational
/// Lorentz boost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PythagoreanSpeed {
    w: Rational,
    r: Rational,
}

impl PythagoreanSpeed {
    pub fn new(w: Rational, r: Rational) -> Option<Self> {
        let ok = !w.is_negative()
            && w < Rational::one()
            && r.is_positive()
            && w.square() + r.square() == Rational::one();
        ok.then_some(PythagoreanSpeed { w, r })
    }

    /// `Some` when `sqrt(1 - w^2)` is rational.
    pub fn from_speed(w: &Rational) -> Option<Self> {
        if w.is_negative() || *w >= Rational::one() {
            return None;
        }
        let r = rational_sqrt(&(Rational::one() - w.square())).ok()??;
        Some(PythagoreanSpeed { w: w.clone(), r })
    }

    /// Speed from the circle parameter `t in [0, 1)`: `w = 2t/(1+t^2)`,
    /// `r = (1-t^2)/(1+t^2)`.
    pub fn from_parameter(t: &Rational) -> Option<Self> {
        if t.is_negative() || *t >= Rational::one() {
            return None;
        }
        let d = Rational::one() + t.square();
        Some(PythagoreanSpeed {
            w: Rational::from(2) * t / &d,
            r: (Rational::one() - t.square()) / d,
        })
    }

    pub fn zero() -> Self {
        PythagoreanSpeed {
            w: Rational::zero(),
            r: Rational::one(),
        }
    }

    pub fn w(&self) -> &Rational {
        &self.w
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// Lorentz factor `1/r`.
    pub fn gamma(&self) -> Rational {
        self.r.recip().expect("r > 0")
    }
}

/// Target boost `B_v` along the first spatial axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoostSpec {
    pub speed: Rational,
}

impl BoostSpec {
    pub fn new(speed: Rational) -> Result<Self, ApproxError> {
        if speed.abs() >= Rational::one() {
            return Err(ApproxError::SpeedOutOfRange(speed));
        }
        if speed.is_negative() {
            return Err(ApproxError::NegativeSpeed(speed));
        }
        Ok(BoostSpec { speed })
    }

    pub fn validate(&self) -> Result<(), ApproxError> {
        BoostSpec::new(self.speed.clone()).map(|_| ())
    }
}

/// What a certificate approximates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetSpec {
    Boost(BoostSpec),
    Orthogonal(OrthogonalSpec),
    Poincare(PoincareSpec),
    /// Pure boost whose t-axis image has the given velocity.
    Velocity { velocity: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxCertificate {
    pub target: TargetSpec,
    /// Exactly Lorentz or exactly orthogonal, whatever the bound.
    pub output: RationalMatrix,
    /// Search resolution at which the certificate cleared `eps` (0 for exact
    /// targets).
    pub delta: Rational,
    /// Certified upper bound on the Frobenius norm of `target - output`.
    pub error_bound: Rational,
    /// Certified bound on `|v - w|` for velocity targets.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub velocity_error_bound: Option<Rational>,
}

impl ApproxCertificate {
    pub fn is_exact(&self) -> bool {
        self.error_bound.is_zero()
    }
}
