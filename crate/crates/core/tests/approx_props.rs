mod common;

use common::{matrix, rational};
use proptest::prelude::*;
use ratrel_core::approx::{
    approx_boost, approx_orthogonal, approx_poincare, compose_with_bound, observer_with_velocity, BoundedFactor,
    OrthogonalSpec, PlanarRotation,
};
use ratrel_core::exact::sqrt_upper;
use ratrel_core::sphere::{nearest_rational_direction, stereographic};
use ratrel_core::{q, BoostSpec, PoincareSpec, Rational, SpacetimeVec};

fn speed() -> impl Strategy<Value = Rational> {
    (0i64..999, 1000i64..=1000).prop_map(|(n, d)| q(n, d))
}

fn eps() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(q(1, 100)), Just(q(1, 10_000)), Just(q(1, 1_000_000))]
}

fn sublight(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-99i64..=99, 100i64..=100).prop_map(|(a, b)| q(a, b)), n).prop_filter(
        "|v| < 1 and v != 0",
        |v| {
            let s: Rational = v.iter().map(Rational::square).sum();
            s < Rational::one() && !s.is_zero()
        },
    )
}

fn rotation(n: usize) -> impl Strategy<Value = PlanarRotation> {
    (1..=n, 1..=n, rational(), rational())
        .prop_filter("distinct axes, nonzero direction", |(i, j, a, b)| i != j && !(a.is_zero() && b.is_zero()))
        .prop_map(|(i, j, a, b)| PlanarRotation {
            plane: (i, j),
            toward: [a, b],
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boost_certificates(v in speed(), eps in eps()) {
        let spec = BoostSpec::new(v.clone()).unwrap();
        let (w, cert) = approx_boost(&spec, &eps, 4).unwrap();
        prop_assert!(cert.output.is_lorentz());
        prop_assert!(cert.error_bound < eps);
        prop_assert!((&v - w.w()).abs() < eps);
        let finer = &eps / &Rational::from(10);
        let (_, cert2) = approx_boost(&spec, &finer, 4).unwrap();
        prop_assert!(cert2.error_bound <= cert.error_bound);
    }

    #[test]
    fn orthogonal_certificates(rs in proptest::collection::vec(rotation(3), 0..3), eps in eps()) {
        let spec = OrthogonalSpec { rotations: rs, sign_mask: None };
        let (m, cert) = approx_orthogonal(&spec, &eps, 3).unwrap();
        prop_assert!(m.is_orthogonal());
        prop_assert!(cert.error_bound < eps);
        let finer = &eps / &Rational::from(10);
        let (_, cert2) = approx_orthogonal(&spec, &finer, 3).unwrap();
        prop_assert!(cert2.error_bound <= cert.error_bound);
    }

    #[test]
    fn poincare_certificates(v in speed(), a in rational(), b in rational(), t in proptest::collection::vec(rational(), 3)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let translation = SpacetimeVec::new(t);
        let spec = PoincareSpec::boost_toward(v, [a, b], translation.clone()).unwrap();
        let eps = q(1, 10_000);
        let (map, cert) = approx_poincare(&spec, &eps, 3).unwrap();
        prop_assert!(map.linear.matrix().is_lorentz());
        prop_assert_eq!(map.translation, translation);
        prop_assert!(cert.error_bound < eps);
    }

    #[test]
    fn observers_are_orthochronous(v in sublight(3), eps in eps()) {
        let obs = observer_with_velocity(&v, &eps, 4).unwrap();
        let m = obs.map.linear.matrix();
        prop_assert!(m.is_lorentz());
        prop_assert!(m.get(0, 0).is_positive());
        let dist_sq: Rational = v.iter().zip(&obs.achieved).map(|(a, b)| (a - b).square()).sum();
        prop_assert!(dist_sq < eps.square());
        prop_assert!(obs.certificate.error_bound < eps);
        // velocity of the t-axis image
        let t = m.get(0, 0);
        let w: Vec<Rational> = (1..4).map(|i| m.get(i, 0) / t).collect();
        prop_assert_eq!(w, obs.achieved);
    }

    #[test]
    fn directions_have_unit_norm(t in proptest::collection::vec(rational(), 3)) {
        prop_assume!(t.iter().any(|x| !x.is_zero()));
        let p = nearest_rational_direction(&t, &q(1, 1000)).unwrap();
        prop_assert_eq!(p.coords().iter().map(Rational::square).sum::<Rational>(), Rational::one());
    }

    #[test]
    fn stereographic_is_injective(a in proptest::collection::vec(rational(), 2), b in proptest::collection::vec(rational(), 2)) {
        let (pa, pb) = (stereographic(&a), stereographic(&b));
        prop_assert_eq!(pa == pb, a == b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn folded_bound_dominates_exact_difference(
        t1 in matrix(3),
        t2 in matrix(3),
        e1 in matrix(3),
        e2 in matrix(3),
        k in 1i64..10_000,
    ) {
        // small perturbations of rational targets, so the true error is exact
        let s = q(1, k);
        let (e1, e2) = (e1.scale(&s), e2.scale(&s));
        let bits = 30;
        let factor = |t: &ratrel_core::RationalMatrix, e: &ratrel_core::RationalMatrix| BoundedFactor {
            matrix: t + e,
            error_bound: sqrt_upper(&e.frobenius_norm_sq(), bits).unwrap(),
            target_norm_bound: sqrt_upper(&t.frobenius_norm_sq(), bits).unwrap(),
        };
        let (product, bound) = compose_with_bound(&[factor(&t1, &e1), factor(&t2, &e2)]).unwrap();
        let truth = (&(&t1 * &t2) - &product).frobenius_norm_sq();
        prop_assert!(truth <= bound.square());
    }
}
