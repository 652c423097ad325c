use crate::exact::{bits_for_width, sqrt_enclosure_bits, sqrt_upper, Rational, RationalInterval};
use crate::linalg::{IntervalMatrix, LinalgError, LorentzMatrix, PoincareMap, RationalMatrix};
use crate::sphere::DirectionLadder;

use super::boost::{BoostLadder, BoostTarget};
use super::{check_eps, ApproxCertificate, ApproxError, PythagoreanSpeed, TargetSpec, MAX_SEARCH_BITS};

/// Rational observer whose t-axis image has velocity `achieved`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObserverApprox {
    pub map: PoincareMap,
    pub achieved: Vec<Rational>,
    pub certificate: ApproxCertificate,
}

/// Enclosure of the pure boost taking `1-bar` to `gamma (1, v)`:
/// `[[gamma, gamma v^T], [gamma v, I + (gamma - 1) v v^T / |v|^2]]`.
/// Only `gamma` is irrational.
pub fn pure_boost_enclosure(vbar: &[Rational], bits: u32) -> Result<IntervalMatrix, ApproxError> {
    let dim = vbar.len() + 1;
    let v_sq: Rational = vbar.iter().map(Rational::square).sum();
    if v_sq >= Rational::one() {
        return Err(ApproxError::VelocityOutOfRange(v_sq));
    }
    if v_sq.is_zero() {
        return Ok(IntervalMatrix::identity(dim));
    }
    let gamma = sqrt_enclosure_bits(&(Rational::one() - &v_sq).recip()?, bits)?;
    let gm1 = gamma.add_scalar(&-Rational::one());
    Ok(IntervalMatrix::from_fn(dim, |r, c| match (r, c) {
        (0, 0) => gamma.clone(),
        (0, k) | (k, 0) => gamma.scale(&vbar[k - 1]),
        (i, j) => {
            let outer = gm1.scale(&(&vbar[i - 1] * &vbar[j - 1] / &v_sq));
            if i == j {
                outer.add_scalar(&Rational::one())
            } else {
                outer
            }
        }
    }))
}

/// Pure boost with rational velocity `w p`, `p` a rational unit vector and
/// `w` Pythagorean. This is `B_w` conjugated by the reflection that sends
/// the first spatial axis to `-p`, written out in closed form.
fn rational_pure_boost(s: &PythagoreanSpeed, p: &[Rational]) -> RationalMatrix {
    let dim = p.len() + 1;
    let gamma = s.gamma();
    let wg = s.w() * &gamma;
    let gm1 = &gamma - &Rational::one();
    let mut m = RationalMatrix::identity(dim);
    m.set(0, 0, gamma);
    for i in 1..dim {
        m.set(0, i, &wg * &p[i - 1]);
        m.set(i, 0, &wg * &p[i - 1]);
        for j in 1..dim {
            let outer = &gm1 * &p[i - 1] * &p[j - 1];
            let e = if i == j { outer + Rational::one() } else { outer };
            m.set(i, j, e);
        }
    }
    m
}

/// Row-major `(a, b)` with target entry `a gamma + b` of the pure boost with
/// velocity `vbar`.
fn target_coefficients(vbar: &[Rational], v_sq: &Rational) -> Vec<(Rational, Rational)> {
    let dim = vbar.len() + 1;
    let mut out = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            out.push(match (i, j) {
                (0, 0) => (Rational::one(), Rational::zero()),
                (0, k) | (k, 0) => (vbar[k - 1].clone(), Rational::zero()),
                (i, j) => {
                    let a = &vbar[i - 1] * &vbar[j - 1] / v_sq;
                    let b = if i == j { Rational::one() - &a } else { -&a };
                    (a, b)
                }
            });
        }
    }
    out
}

/// Upper bound on the squared Frobenius distance from `m` to the target
/// with coefficients `coef`, given an enclosure of `gamma`. Entries are
/// rounded outward to `2^-bits` first so the interval work stays on short
/// dyadic numbers.
fn dist_sq_upper(coef: &[(Rational, Rational)], gamma: &RationalInterval, m: &RationalMatrix, bits: u32) -> Rational {
    let round = |x: &Rational| RationalInterval::point(x.clone()).round_outward(bits);
    let dim = m.dim();
    if gamma.is_point() {
        return coef
            .iter()
            .enumerate()
            .map(|(idx, (a, b))| (&(a * gamma.lo()) + b - m.get(idx / dim, idx % dim)).square())
            .sum();
    }
    let mut total = RationalInterval::point(Rational::zero());
    for (idx, (a, b)) in coef.iter().enumerate() {
        let entry = m.get(idx / dim, idx % dim);
        let e = (&(gamma * &round(a)) + &round(b)) - round(entry);
        total = &total + &e.round_outward(bits).square();
    }
    total.hi().clone()
}

struct Candidate {
    matrix: RationalMatrix,
    achieved: Vec<Rational>,
    bound: Rational,
    velocity_bound: Rational,
    delta: Rational,
}

/// Rational Lorentz map `L*` whose velocity `w = spatial(L* 1)/time(L* 1)`
/// is within `eps` of `vbar`, and whose Frobenius distance to the pure boost
/// with velocity `vbar` is certified below `eps`.
///
/// Walks `delta = 2^-k` for `k = 2, 4, 6, ...`: approximates the speed and the
/// direction to within `delta`, rebuilds `L*`, and certifies it against the
/// interval enclosure of the target. The best matrix bound seen so far is
/// kept, so a smaller `eps` never yields a larger bound.
pub fn observer_with_velocity(
    vbar: &[Rational],
    eps: &Rational,
    dim: usize,
) -> Result<ObserverApprox, ApproxError> {
    check_eps(eps)?;
    if dim < 2 {
        return Err(LinalgError::DimensionTooSmall(dim).into());
    }
    if vbar.len() != dim - 1 {
        return Err(LinalgError::DimensionMismatch {
            expected: dim - 1,
            found: vbar.len(),
        }
        .into());
    }
    let v_sq: Rational = vbar.iter().map(Rational::square).sum();
    if v_sq >= Rational::one() {
        return Err(ApproxError::VelocityOutOfRange(v_sq));
    }
    let target = TargetSpec::Velocity {
        velocity: vbar.to_vec(),
    };
    if v_sq.is_zero() {
        return Ok(ObserverApprox {
            map: PoincareMap::identity(dim),
            achieved: vbar.to_vec(),
            certificate: ApproxCertificate {
                target,
                output: RationalMatrix::identity(dim),
                delta: Rational::zero(),
                error_bound: Rational::zero(),
                velocity_error_bound: Some(Rational::zero()),
            },
        });
    }

    let speed = BoostTarget::new(v_sq.clone())?;
    let vel_bits = bits_for_width(eps) + 4;
    let mut speeds = BoostLadder::new(speed);
    let mut directions = DirectionLadder::new(vbar)?;
    let coef = target_coefficients(vbar, &v_sq);
    let mut best: Option<Candidate> = None;
    for level in (2..=MAX_SEARCH_BITS).step_by(2) {
        let delta = Rational::dyadic_unit(level);
        let w = speeds.reach(&delta, MAX_SEARCH_BITS)?.speed;
        let p = directions.reach(&delta, MAX_SEARCH_BITS)?.point;
        let matrix = rational_pure_boost(&w, p.coords());
        let bits = level + 10;
        let gamma = sqrt_enclosure_bits(&(Rational::one() - &v_sq).recip()?, bits)?;
        let dist_sq = dist_sq_upper(&coef, &gamma, &matrix, bits + 8);
        let bound = sqrt_upper(&dist_sq, bits)?;
        if best.as_ref().is_none_or(|b| bound < b.bound) {
            let achieved: Vec<Rational> = p.coords().iter().map(|x| w.w() * x).collect();
            let dist_sq: Rational = vbar
                .iter()
                .zip(&achieved)
                .map(|(a, b)| (a - b).square())
                .sum();
            best = Some(Candidate {
                matrix,
                achieved,
                bound,
                velocity_bound: sqrt_upper(&dist_sq, vel_bits)?,
                delta: if dist_sq.is_zero() { Rational::zero() } else { delta },
            });
        }
        let b = best.as_ref().expect("set above");
        if &b.bound < eps && &b.velocity_bound < eps {
            let b = best.expect("set above");
            let linear = LorentzMatrix::new(b.matrix.clone())?;
            return Ok(ObserverApprox {
                map: PoincareMap::linear_only(linear),
                achieved: b.achieved,
                certificate: ApproxCertificate {
                    target,
                    output: b.matrix,
                    delta: b.delta,
                    error_bound: b.bound,
                    velocity_error_bound: Some(b.velocity_bound),
                },
            });
        }
    }
    Err(ApproxError::SearchExhausted {
        what: "observer velocity",
        eps: eps.clone(),
        max_bits: MAX_SEARCH_BITS,
    })
}
