#![allow(dead_code)]

use proptest::prelude::*;
use ratrel_core::approx::{boost_matrix_along, planar_rotation, PythagoreanSpeed};
use ratrel_core::linalg::{AffineMap, LorentzMatrix, PoincareMap, RationalMatrix, SpacetimeVec};
use ratrel_core::sphere::stereographic;
use ratrel_core::{q, Rational};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-2000i64..=2000, 1i64..=500).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn vector(dim: usize) -> impl Strategy<Value = SpacetimeVec> {
    proptest::collection::vec(rational(), dim).prop_map(SpacetimeVec::new)
}

pub fn matrix(dim: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(proptest::collection::vec(rational(), dim), dim)
        .prop_map(|rows| RationalMatrix::from_rows(rows).unwrap())
}

/// Pythagorean speed from a circle parameter in `[0, 1)`.
pub fn pythagorean_speed() -> impl Strategy<Value = PythagoreanSpeed> {
    (0i64..200, 200i64..=400).prop_map(|(n, d)| PythagoreanSpeed::from_parameter(&q(n, d)).unwrap())
}

/// Products of rational boosts along random axes and rational rotations, so
/// exactly Lorentz by construction.
pub fn lorentz(dim: usize) -> impl Strategy<Value = LorentzMatrix> {
    let factor = (pythagorean_speed(), 1..dim, rational(), 0usize..dim, 0usize..dim);
    proptest::collection::vec(factor, 1..4).prop_map(move |fs| {
        let mut acc = LorentzMatrix::identity(dim);
        for (s, axis, t, i, j) in fs {
            let b = boost_matrix_along(&s, axis, dim).unwrap();
            acc = acc.compose(&b).unwrap();
            let n = dim - 1;
            if n >= 2 && i % n != j % n {
                let p = stereographic(&[t.clone()]);
                let (a, b) = (i % n + 1, j % n + 1);
                let r = planar_rotation(n, (a, b), &p[0], &p[1]);
                let r = LorentzMatrix::new(RationalMatrix::embed_spatial(&r)).unwrap();
                acc = acc.compose(&r).unwrap();
            }
        }
        acc
    })
}

pub fn poincare(dim: usize) -> impl Strategy<Value = PoincareMap> {
    (lorentz(dim), vector(dim)).prop_map(|(l, t)| PoincareMap::new(l, t).unwrap())
}

pub fn affine(dim: usize) -> impl Strategy<Value = AffineMap> {
    poincare(dim).prop_map(|p| p.to_affine())
}
