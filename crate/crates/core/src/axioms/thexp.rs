use serde::Serialize;
use thiserror::Error;

use crate::approx::{observer_with_velocity, ApproxError};
use crate::exact::Rational;
use crate::linalg::{AffineMap, PoincareMap, SpacetimeVec};
use crate::model::{worldview, Body, Model};

use super::sampling::{nonzero_rational, point, sample_rng};
use super::Axiom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error("observer has dimension {found}, model has {expected}")]
    Dimension { expected: usize, found: usize },
}

/// An observer `k` that `m` sees moving with velocity `achieved`, close to the
/// requested one, together with two events of `k`'s worldline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThExpWitness {
    pub observer: AffineMap,
    pub x: SpacetimeVec,
    pub y: SpacetimeVec,
    pub achieved: Vec<Rational>,
    pub lambda: Rational,
    /// Parameter with `P*(a, 0, ..., 0) = y`.
    pub a: Rational,
    pub velocity_error_bound: Rational,
}

impl ThExpWitness {
    /// Re-checks every claim from scratch in exact arithmetic.
    pub fn verify(&self, m: &AffineMap, vbar: &[Rational], eps: &Rational) -> Result<(), String> {
        let d = m.dim();
        if self.observer.dim() != d || self.x.dim() != d || self.y.dim() != d || vbar.len() + 1 != d {
            return Err("dimension mismatch".into());
        }
        if !self.observer.linear.is_lorentz() {
            return Err("k is not a Poincare map".into());
        }
        let k = Body::Observer(self.observer.clone());
        if !worldview(m, &k, &self.x) {
            return Err("W(m, k, x) fails".into());
        }
        if !worldview(m, &k, &self.y) {
            return Err("W(m, k, y) fails".into());
        }
        let step = SpacetimeVec::from_time_space(Rational::one(), &self.achieved).scale(&self.lambda);
        if &self.y - &self.x != step {
            return Err("y - x is not lambda (1, w)".into());
        }
        if !self.lambda.is_positive() {
            return Err("lambda must be positive".into());
        }
        let dist_sq: Rational = vbar
            .iter()
            .zip(&self.achieved)
            .map(|(v, w)| (v - w).square())
            .sum();
        if dist_sq >= eps.square() {
            return Err(format!("|v - w|^2 = {dist_sq} is not below eps^2"));
        }
        Ok(())
    }
}

/// Builds `k = m o P*` with `P* = L* + x` and `L*` the rational observer from
/// [`observer_with_velocity`]; then `y = x + lambda (1, w)` lies on `k`'s
/// worldline at parameter `a = lambda / L*_11`. The point `x` and `lambda > 0`
/// come from `seed`.
pub fn witness_axthexp_minus(
    model: &Model,
    m: &AffineMap,
    vbar: &[Rational],
    eps: &Rational,
    seed: u64,
) -> Result<ThExpWitness, WitnessError> {
    let d = model.dimension();
    if m.dim() != d {
        return Err(WitnessError::Dimension {
            expected: d,
            found: m.dim(),
        });
    }
    let approx = observer_with_velocity(vbar, eps, d)?;
    let mut rng = sample_rng(seed, Axiom::AxThExpMinus, u64::MAX);
    let x = point(&mut rng, d);
    let lambda = nonzero_rational(&mut rng).abs();
    let linear = approx.map.linear.clone();
    let l11 = linear.matrix().get(0, 0).clone();
    let p_star = PoincareMap::new(linear, x.clone()).expect("same dimension");
    let k = m.compose(&p_star.to_affine()).expect("same dimension");
    let y = &x + &SpacetimeVec::from_time_space(Rational::one(), &approx.achieved).scale(&lambda);
    let a = &lambda / &l11;
    debug_assert_eq!(
        p_star.apply(&SpacetimeVec::unit_time(d).scale(&a)).ok(),
        Some(y.clone())
    );
    Ok(ThExpWitness {
        observer: k,
        x,
        y,
        achieved: approx.achieved,
        lambda,
        a,
        velocity_error_bound: approx
            .certificate
            .velocity_error_bound
            .unwrap_or_else(Rational::zero),
    })
}
