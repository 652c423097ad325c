use crate::exact::{rational_sqrt, sqrt_enclosure_bits, sqrt_upper, Rational, RationalInterval};
use crate::linalg::{IntervalMatrix, LinalgError, LorentzMatrix, RationalMatrix};

use super::{check_eps, ApproxCertificate, ApproxError, BoostSpec, PythagoreanSpeed, TargetSpec, MAX_SEARCH_BITS};

/// `B_w` on coordinates (1, 2), identity elsewhere.
pub fn boost_matrix(s: &PythagoreanSpeed, dim: usize) -> Result<LorentzMatrix, ApproxError> {
    boost_matrix_along(s, 1, dim)
}

/// `B_w` mixing time with spatial coordinate `axis` (0-based matrix index,
/// `1 <= axis < dim`).
pub fn boost_matrix_along(
    s: &PythagoreanSpeed,
    axis: usize,
    dim: usize,
) -> Result<LorentzMatrix, ApproxError> {
    if dim < 2 {
        return Err(LinalgError::DimensionTooSmall(dim).into());
    }
    if axis == 0 || axis >= dim {
        return Err(ApproxError::InvalidSpec(format!(
            "boost axis {axis} outside spatial coordinates 1..{dim}"
        )));
    }
    let gamma = s.gamma();
    let wg = -(s.w() * &gamma);
    let mut m = RationalMatrix::identity(dim);
    m.set(0, 0, gamma.clone());
    m.set(axis, axis, gamma);
    m.set(0, axis, wg.clone());
    m.set(axis, 0, wg);
    Ok(LorentzMatrix::new(m)?)
}

/// A real boost given by its squared speed, so `|v|` itself may be
/// irrational. All target entries are square roots of rationals:
/// `gamma = sqrt(1/(1-v^2))` and `v*gamma = sqrt(v^2/(1-v^2))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoostTarget {
    v_sq: Rational,
}

/// Result of a boost search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoostApprox {
    pub speed: PythagoreanSpeed,
    pub bound: Rational,
    pub delta: Rational,
}

impl BoostTarget {
    pub fn new(v_sq: Rational) -> Result<Self, ApproxError> {
        if v_sq.is_negative() {
            return Err(ApproxError::InvalidSpec(format!(
                "squared speed {v_sq} is negative"
            )));
        }
        if v_sq >= Rational::one() {
            return Err(ApproxError::SpeedOutOfRange(v_sq));
        }
        Ok(BoostTarget { v_sq })
    }

    pub fn v_sq(&self) -> &Rational {
        &self.v_sq
    }

    fn one_minus(&self) -> Rational {
        Rational::one() - &self.v_sq
    }

    pub fn gamma(&self, bits: u32) -> RationalInterval {
        let x = self.one_minus().recip().expect("v^2 < 1");
        sqrt_enclosure_bits(&x, bits).expect("positive")
    }

    pub fn vgamma(&self, bits: u32) -> RationalInterval {
        let x = &self.v_sq / &self.one_minus();
        sqrt_enclosure_bits(&x, bits).expect("nonnegative")
    }

    pub fn speed(&self, bits: u32) -> RationalInterval {
        sqrt_enclosure_bits(&self.v_sq, bits).expect("nonnegative")
    }

    /// Upper bound on the operator norm `gamma (1 + |v|)`.
    pub fn op_norm_upper(&self, bits: u32) -> Rational {
        self.gamma(bits).hi() + self.vgamma(bits).hi()
    }

    /// Entrywise enclosure of the real boost matrix.
    pub fn enclosure(&self, dim: usize, bits: u32) -> IntervalMatrix {
        let g = self.gamma(bits);
        let vg = -self.vgamma(bits);
        IntervalMatrix::from_fn(dim, |r, c| match (r, c) {
            (0, 0) | (1, 1) => g.clone(),
            (0, 1) | (1, 0) => vg.clone(),
            _ if r == c => RationalInterval::point(Rational::one()),
            _ => RationalInterval::point(Rational::zero()),
        })
    }

    fn exact(&self) -> Option<PythagoreanSpeed> {
        let w = rational_sqrt(&self.v_sq).ok()??;
        PythagoreanSpeed::from_speed(&w)
    }

    /// Certified Frobenius bound on `||B_v - B_w||`, which only involves the
    /// 2x2 block: `sqrt(2 (gamma_v - gamma_w)^2 + 2 (v gamma_v - w gamma_w)^2)`.
    pub fn error_bound(&self, s: &PythagoreanSpeed, bits: u32) -> Rational {
        let gw = s.gamma();
        let wgw = s.w() * &gw;
        let a = self.gamma(bits).add_scalar(&-gw).square();
        let b = self.vgamma(bits).add_scalar(&-wgw).square();
        let e_sq = (&a + &b).scale(&Rational::from(2));
        sqrt_upper(e_sq.hi(), bits).expect("nonnegative")
    }

    /// Searches the circle-parameter grid `t = k/2^level` around the target
    /// `t_v = v / (1 + sqrt(1 - v^2))`.
    pub fn approximate(&self, eps: &Rational, max_bits: u32) -> Result<BoostApprox, ApproxError> {
        BoostLadder::new(self.clone()).reach(eps, max_bits)
    }

    fn candidates(&self, level: u32) -> Vec<(BoostApprox, Rational)> {
        let bits = level + 10;
        let v = self.speed(bits);
        let r = sqrt_enclosure_bits(&self.one_minus(), bits).expect("positive");
        let t = v
            .checked_div(&r.add_scalar(&Rational::one()))
            .expect("1 + r >= 1");
        let cell = Rational::dyadic_unit(level);
        let base = Rational::from_integer((t.mid() / &cell).floor()) * &cell;
        [base.clone(), base + &cell]
            .iter()
            .filter_map(PythagoreanSpeed::from_parameter)
            .map(|speed| {
                let bound = self.error_bound(&speed, bits);
                let dv = v.add_scalar(&-speed.w()).magnitude();
                let delta = cell.clone();
                (BoostApprox { speed, bound, delta }, dv)
            })
            .collect()
    }
}

/// Resumable boost search. Calls to [`reach`](Self::reach) with
/// nonincreasing `eps` return what independent
/// [`BoostTarget::approximate`] calls would, without redoing coarse levels.
#[derive(Debug, Clone)]
pub struct BoostLadder {
    target: BoostTarget,
    level: u32,
    /// Best candidate so far with its bound on `|v - w|`.
    best: Option<(BoostApprox, Rational)>,
}

impl BoostLadder {
    pub fn new(target: BoostTarget) -> Self {
        let best = target.exact().map(|speed| {
            (
                BoostApprox {
                    speed,
                    bound: Rational::zero(),
                    delta: Rational::zero(),
                },
                Rational::zero(),
            )
        });
        BoostLadder {
            target,
            level: 0,
            best,
        }
    }

    pub fn reach(&mut self, eps: &Rational, max_bits: u32) -> Result<BoostApprox, ApproxError> {
        check_eps(eps)?;
        loop {
            if let Some((b, dv)) = &self.best {
                if b.bound.is_zero() || (&b.bound < eps && dv < eps) {
                    return Ok(b.clone());
                }
            }
            if self.level >= max_bits {
                return Err(ApproxError::SearchExhausted {
                    what: "boost",
                    eps: eps.clone(),
                    max_bits,
                });
            }
            self.level += 1;
            for (c, dv) in self.target.candidates(self.level) {
                if self.best.as_ref().is_none_or(|(b, _)| c.bound < b.bound) {
                    self.best = Some((c, dv));
                }
            }
        }
    }
}

/// Rational boost `B_w` within `eps` of `B_v` (Frobenius), with `|v - w| < eps`.
pub fn approx_boost(
    spec: &BoostSpec,
    eps: &Rational,
    dim: usize,
) -> Result<(PythagoreanSpeed, ApproxCertificate), ApproxError> {
    spec.validate()?;
    check_eps(eps)?;
    let target = BoostTarget::new(spec.speed.square())?;
    let found = target.approximate(eps, MAX_SEARCH_BITS)?;
    debug_assert!((&spec.speed - found.speed.w()).abs() < *eps);
    let output = boost_matrix(&found.speed, dim)?.into_matrix();
    Ok((
        found.speed,
        ApproxCertificate {
            target: TargetSpec::Boost(spec.clone()),
            output,
            delta: found.delta,
            error_bound: found.bound,
            velocity_error_bound: None,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn boost_matrix_examples() {
        let s = PythagoreanSpeed::new(q(3, 5), q(4, 5)).unwrap();
        let b = boost_matrix(&s, 2).unwrap();
        assert_eq!(
            b.matrix().rows(),
            vec![vec![q(5, 4), q(-3, 4)], vec![q(-3, 4), q(5, 4)]]
        );
        assert!(boost_matrix(&PythagoreanSpeed::zero(), 4)
            .unwrap()
            .matrix()
            .is_identity());
        let b4 = boost_matrix(&s, 4).unwrap();
        assert_eq!(b4.matrix().get(0, 1), &q(-3, 4));
        assert_eq!(b4.matrix().get(2, 2), &q(1, 1));
        assert_eq!(b4.matrix().get(3, 3), &q(1, 1));
        assert_eq!(b4.matrix().get(2, 3), &q(0, 1));
    }

    #[test]
    fn pythagorean_target_is_returned_exactly() {
        let (s, cert) = approx_boost(&BoostSpec::new(q(3, 5)).unwrap(), &q(1, 100), 4).unwrap();
        assert_eq!(s.w(), &q(3, 5));
        assert!(cert.is_exact());
        let (s, cert) = approx_boost(&BoostSpec::new(q(0, 1)).unwrap(), &q(1, 100), 3).unwrap();
        assert_eq!(s.w(), &q(0, 1));
        assert!(cert.output.is_identity());
        assert!(cert.is_exact());
    }

    #[test]
    fn half_speed_at_one_tenth() {
        let (s, cert) = approx_boost(&BoostSpec::new(q(1, 2)).unwrap(), &q(1, 10), 2).unwrap();
        assert!(cert.error_bound < q(1, 10));
        assert!((q(1, 2) - s.w()).abs() < q(1, 10));
        assert!(cert.output.is_lorentz());
    }

    /// Independent evaluation of the displayed norm formula for `w = 8/17`
    /// (circle parameter 1/4), at enclosure width about 1e-6.
    #[test]
    fn eight_seventeenths_is_admissible_for_half() {
        let s = PythagoreanSpeed::from_parameter(&q(1, 4)).unwrap();
        assert_eq!((s.w(), s.r()), (&q(8, 17), &q(15, 17)));
        assert_eq!((q(1, 2) - s.w()).abs(), q(1, 34));
        let bits = 20; // 2^-20 < 1e-6
        let gv = crate::exact::sqrt_enclosure(&q(4, 3), &Rational::dyadic_unit(bits)).unwrap();
        let vgv = gv.scale(&q(1, 2));
        let a = gv.add_scalar(&-q(17, 15)).square();
        let b = vgv.add_scalar(&-q(8, 15)).square();
        let e_sq = (&a + &b).scale(&q(2, 1));
        assert!(*e_sq.hi() < q(1, 100));
    }

    #[test]
    fn rejects_bad_speeds() {
        assert!(matches!(
            BoostSpec::new(q(3, 2)),
            Err(ApproxError::SpeedOutOfRange(_))
        ));
        assert!(matches!(
            BoostSpec::new(q(-1, 2)),
            Err(ApproxError::NegativeSpeed(_))
        ));
        assert!(matches!(
            BoostSpec::new(q(1, 1)),
            Err(ApproxError::SpeedOutOfRange(_))
        ));
    }

    #[test]
    fn shrinking_eps_never_increases_bound() {
        for v in [q(1, 2), q(99, 100), q(1, 3), q(65535, 65536)] {
            let spec = BoostSpec::new(v).unwrap();
            let mut prev: Option<Rational> = None;
            for k in [2, 5, 10, 20, 30] {
                let eps = Rational::dyadic_unit(k);
                let (_, cert) = approx_boost(&spec, &eps, 2).unwrap();
                assert!(cert.error_bound < eps);
                if let Some(p) = &prev {
                    assert!(cert.error_bound <= *p);
                }
                prev = Some(cert.error_bound);
            }
        }
    }

    #[test]
    fn irrational_speed_target() {
        let t = BoostTarget::new(q(1, 2)).unwrap();
        let a = t.approximate(&q(1, 1_000_000), 64).unwrap();
        assert!(a.bound < q(1, 1_000_000));
        // |v - w| via squares: v^2 = 1/2
        let w = a.speed.w();
        let lo = (w - &q(1, 1_000_000)).square();
        let hi = (w + &q(1, 1_000_000)).square();
        assert!(lo < q(1, 2) && q(1, 2) < hi);
    }
}
