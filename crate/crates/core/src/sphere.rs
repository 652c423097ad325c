//! Rational points on unit spheres.
//!
//! Points are produced through the inverse stereographic chart from the pole
//! `(-1, 0, ..., 0)`, which sends every rational parameter tuple to a
//! rational point of exact unit norm. Approximating an arbitrary direction
//! runs a dyadic grid search over the chart with interval certification of
//! the distance.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rational_sqrt, sqrt_enclosure_bits, Rational, RationalInterval};

/// Default cap on the dyadic grid level: parameters with denominators up to
/// `2^64`.
pub const DEFAULT_MAX_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SphereError {
    #[error("target direction is the zero vector")]
    ZeroTarget,
    #[error("target direction is empty")]
    EmptyTarget,
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(Rational),
    #[error("no rational direction certified within {eps} at grid depth 2^-{max_bits}")]
    SearchExhausted { eps: Rational, max_bits: u32 },
}

/// Rational vector with `x1^2 + ... + xn^2 = 1` exactly.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RationalSpherePoint(Vec<Rational>);

impl RationalSpherePoint {
    pub fn new(coords: Vec<Rational>) -> Option<Self> {
        let norm: Rational = coords.iter().map(Rational::square).sum();
        (norm == Rational::one()).then_some(RationalSpherePoint(coords))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn negate_first(&self) -> Self {
        let mut c = self.0.clone();
        c[0] = -&c[0];
        RationalSpherePoint(c)
    }
}

impl<'de> Deserialize<'de> for RationalSpherePoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coords = Vec::<Rational>::deserialize(deserializer)?;
        RationalSpherePoint::new(coords)
            .ok_or_else(|| serde::de::Error::custom("point is not on the unit sphere"))
    }
}

impl Index<usize> for RationalSpherePoint {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Debug for RationalSpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Inverse stereographic projection: with `s = t1^2 + ... + t_{n-1}^2`,
/// `t -> ((1-s)/(1+s), 2t1/(1+s), ..., 2t_{n-1}/(1+s))`.
pub fn stereographic(t: &[Rational]) -> RationalSpherePoint {
    let s: Rational = t.iter().map(Rational::square).sum();
    let denom = (Rational::one() + &s).recip().expect("1 + s > 0");
    let mut coords = Vec::with_capacity(t.len() + 1);
    coords.push((Rational::one() - &s) * &denom);
    let two = Rational::from(2);
    coords.extend(t.iter().map(|ti| &two * ti * &denom));
    RationalSpherePoint(coords)
}

/// A rational unit vector together with a certified upper bound on its
/// squared distance to the normalized target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionApprox {
    pub point: RationalSpherePoint,
    pub dist_sq_bound: Rational,
    /// Grid level `k` (parameter denominators `2^k`); 0 for exact hits.
    pub level: u32,
}

/// Rational unit vector within `eps` of `target / |target|`.
pub fn nearest_rational_direction(
    target: &[Rational],
    eps: &Rational,
) -> Result<RationalSpherePoint, SphereError> {
    Ok(nearest_rational_direction_certified(target, eps, DEFAULT_MAX_BITS)?.point)
}

/// Signed enclosures of `target_i / |target|`, each `2^-bits` wide.
pub(crate) fn unit_direction_enclosure(
    target: &[Rational],
    norm_sq: &Rational,
    bits: u32,
) -> Vec<RationalInterval> {
    target
        .iter()
        .map(|ti| {
            let mag = sqrt_enclosure_bits(&(ti.square() / norm_sq), bits).expect("nonnegative");
            if ti.is_negative() {
                -mag
            } else {
                mag
            }
        })
        .collect()
}

/// Search over dyadic grid levels `k = 1..=max_bits`, keeping the candidate
/// with the smallest certified bound seen so far; stops as soon as that bound
/// is below `eps^2`. The sequence of candidates depends only on `target`, so
/// a smaller `eps` never yields a larger bound.
pub fn nearest_rational_direction_certified(
    target: &[Rational],
    eps: &Rational,
    max_bits: u32,
) -> Result<DirectionApprox, SphereError> {
    DirectionLadder::new(target)?.reach(eps, max_bits)
}

/// Resumable form of [`nearest_rational_direction_certified`]. Calls to
/// [`reach`](Self::reach) with nonincreasing `eps` return what independent
/// searches would, without redoing the coarse levels.
#[derive(Debug, Clone)]
pub struct DirectionLadder {
    target: Vec<Rational>,
    norm_sq: Rational,
    level: u32,
    best: Option<DirectionApprox>,
}

impl DirectionLadder {
    pub fn new(target: &[Rational]) -> Result<Self, SphereError> {
        if target.is_empty() {
            return Err(SphereError::EmptyTarget);
        }
        let norm_sq: Rational = target.iter().map(Rational::square).sum();
        if norm_sq.is_zero() {
            return Err(SphereError::ZeroTarget);
        }
        let best = rational_sqrt(&norm_sq).expect("nonnegative").map(|norm| DirectionApprox {
            point: RationalSpherePoint(target.iter().map(|x| x / &norm).collect()),
            dist_sq_bound: Rational::zero(),
            level: 0,
        });
        Ok(DirectionLadder {
            target: target.to_vec(),
            norm_sq,
            level: 0,
            best,
        })
    }

    fn candidate(&self, level: u32) -> DirectionApprox {
        let target = &self.target;
        // Work in the chart away from the excluded pole: reflect x1 when negative.
        let flip = target[0].is_negative();
        let units = unit_direction_enclosure(target, &self.norm_sq, level + 12);
        let pole_side = if flip { -&units[0] } else { units[0].clone() };
        let denom = pole_side.add_scalar(&Rational::one());
        let cell = Rational::dyadic_unit(level);
        let params: Vec<Rational> = units[1..]
            .iter()
            .map(|u| {
                let t = u.checked_div(&denom).expect("1 + u1 >= 1");
                Rational::from_integer((t.mid() / &cell).round_half_up()) * &cell
            })
            .collect();
        let mut point = stereographic(&params);
        if flip {
            point = point.negate_first();
        }
        let dist = point
            .coords()
            .iter()
            .zip(&units)
            .map(|(p, u)| u.add_scalar(&-p).square())
            .fold(RationalInterval::point(Rational::zero()), |acc, x| &acc + &x);
        DirectionApprox {
            point,
            dist_sq_bound: dist.hi().clone(),
            level,
        }
    }

    pub fn reach(&mut self, eps: &Rational, max_bits: u32) -> Result<DirectionApprox, SphereError> {
        if !eps.is_positive() {
            return Err(SphereError::NonPositiveEps(eps.clone()));
        }
        let eps_sq = eps.square();
        loop {
            if let Some(b) = &self.best {
                if b.dist_sq_bound < eps_sq {
                    return Ok(b.clone());
                }
            }
            if self.level >= max_bits {
                return Err(SphereError::SearchExhausted {
                    eps: eps.clone(),
                    max_bits,
                });
            }
            self.level += 1;
            let c = self.candidate(self.level);
            if self.best.as_ref().is_none_or(|b| c.dist_sq_bound < b.dist_sq_bound) {
                self.best = Some(c);
            }
        }
    }
}
