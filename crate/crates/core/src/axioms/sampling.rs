use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::Rational;
use crate::linalg::SpacetimeVec;
use crate::sphere::{stereographic, RationalSpherePoint};

use super::Axiom;

/// Numerators are drawn from `[-2^16, 2^16]`, denominators from `[1, 2^16]`.
const RANGE: i64 = 1 << 16;

/// Generator for sample `index` of `axiom` under `seed`. Each sample gets its
/// own stream, so results do not depend on evaluation order.
pub fn sample_rng(seed: u64, axiom: Axiom, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((axiom as u64) << 56) ^ index);
    rng
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.random_range(-RANGE..=RANGE), rng.random_range(1..=RANGE))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let x = rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Rational in `[-1, 1]` with denominator up to `2^16`.
pub fn unit_rational<R: Rng>(rng: &mut R) -> Rational {
    let den = rng.random_range(1..=RANGE);
    Rational::new(rng.random_range(-den..=den), den)
}

pub fn point<R: Rng>(rng: &mut R, dim: usize) -> SpacetimeVec {
    SpacetimeVec::new((0..dim).map(|_| rational(rng)).collect())
}

/// A point with at least one nonzero spatial coordinate.
pub fn off_axis_point<R: Rng>(rng: &mut R, dim: usize) -> SpacetimeVec {
    let mut c: Vec<Rational> = (0..dim).map(|_| rational(rng)).collect();
    let i = rng.random_range(1..dim);
    c[i] = nonzero_rational(rng);
    SpacetimeVec::new(c)
}

/// Uniformly chosen stereographic image of a rational parameter tuple, so
/// the result is an exact rational unit vector in `n` dimensions.
pub fn unit_vector<R: Rng>(rng: &mut R, n: usize) -> RationalSpherePoint {
    let t: Vec<Rational> = (1..n).map(|_| rational(rng)).collect();
    let p = stereographic(&t);
    if rng.random_bool(0.5) {
        p.negate_first()
    } else {
        p
    }
}

/// Velocity with `|v| < 1`, by rejection from the cube.
pub fn sublight_velocity<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| unit_rational(rng)).collect();
        let sq: Rational = v.iter().map(Rational::square).sum();
        if sq < Rational::one() {
            return v;
        }
    }
}
