use serde::{Deserialize, Serialize};

use crate::exact::{bits_for_width, sqrt_upper, Rational};
use crate::linalg::RationalMatrix;
use crate::sphere::{nearest_rational_direction_certified, RationalSpherePoint};

use super::compose::{equal_dyadic_budget, lemma_fold};
use super::{check_eps, ApproxCertificate, ApproxError, TargetSpec, MAX_SEARCH_BITS};

/// Rotation in the coordinate plane `(i, j)` (1-based) taking axis `i` to the
/// direction `toward = (a, b)`, i.e. `cos = a/|(a,b)|`, `sin = b/|(a,b)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarRotation {
    pub plane: (usize, usize),
    pub toward: [Rational; 2],
}

/// Orthogonal target `R_1 R_2 ... R_k D`, with `D` an optional diagonal of
/// signs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalSpec {
    #[serde(default)]
    pub rotations: Vec<PlanarRotation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_mask: Option<Vec<i8>>,
}

impl OrthogonalSpec {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(plane: (usize, usize), toward: [Rational; 2]) -> Self {
        OrthogonalSpec {
            rotations: vec![PlanarRotation { plane, toward }],
            sign_mask: None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rotations.is_empty()
            && self
                .sign_mask
                .as_ref()
                .is_none_or(|m| m.iter().all(|&s| s == 1))
    }

    /// The inverse target `D R_k^T ... R_1^T`, expressed in the same form.
    /// Requires no sign mask, or one that commutes with every factor.
    pub fn inverse(&self) -> Option<Self> {
        if self.sign_mask.is_some() && !self.rotations.is_empty() {
            return None;
        }
        Some(OrthogonalSpec {
            rotations: self
                .rotations
                .iter()
                .rev()
                .map(|r| PlanarRotation {
                    plane: r.plane,
                    toward: [r.toward[0].clone(), -&r.toward[1]],
                })
                .collect(),
            sign_mask: self.sign_mask.clone(),
        })
    }

    pub fn validate(&self, n: usize) -> Result<(), ApproxError> {
        for (k, r) in self.rotations.iter().enumerate() {
            let (i, j) = r.plane;
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(ApproxError::InvalidSpec(format!(
                    "rotation {k}: plane ({i}, {j}) needs distinct axes in 1..={n}"
                )));
            }
            if r.toward[0].is_zero() && r.toward[1].is_zero() {
                return Err(ApproxError::InvalidSpec(format!(
                    "rotation {k}: direction is zero"
                )));
            }
        }
        if let Some(mask) = &self.sign_mask {
            if mask.len() != n {
                return Err(ApproxError::InvalidSpec(format!(
                    "sign mask has {} entries, expected {n}",
                    mask.len()
                )));
            }
            if mask.iter().any(|&s| s != 1 && s != -1) {
                return Err(ApproxError::InvalidSpec(
                    "sign mask entries must be 1 or -1".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Exact rotation for a rational unit `(c, s)` in plane `(i, j)`, 1-based.
pub fn planar_rotation(n: usize, plane: (usize, usize), c: &Rational, s: &Rational) -> RationalMatrix {
    let (i, j) = (plane.0 - 1, plane.1 - 1);
    let mut m = RationalMatrix::identity(n);
    m.set(i, i, c.clone());
    m.set(j, j, c.clone());
    m.set(j, i, s.clone());
    m.set(i, j, -s);
    m
}

/// Rational rotation within `budget` of the real one (Frobenius), with the
/// certified bound. The distance of two planar rotations is
/// `sqrt(2) |(c, s) - (c', s')|`.
fn approx_rotation(
    r: &PlanarRotation,
    n: usize,
    budget: &Rational,
) -> Result<(RationalMatrix, Rational), ApproxError> {
    let half = budget / &Rational::from(2);
    let found = nearest_rational_direction_certified(&r.toward, &half, MAX_SEARCH_BITS)?;
    let bound = sqrt_upper(
        &(&found.dist_sq_bound * &Rational::from(2)),
        bits_for_width(budget) + 2,
    )?;
    if &bound >= budget {
        return Err(ApproxError::SearchExhausted {
            what: "planar rotation",
            eps: budget.clone(),
            max_bits: MAX_SEARCH_BITS,
        });
    }
    let p: RationalSpherePoint = found.point;
    Ok((planar_rotation(n, r.plane, &p[0], &p[1]), bound))
}

/// Exactly orthogonal `A` with certified `||T - A||_F < eps`. The per-factor
/// budget is the largest dyadic `e` whose unit-norm fold stays below `eps`.
pub fn approx_orthogonal(
    spec: &OrthogonalSpec,
    eps: &Rational,
    n: usize,
) -> Result<(RationalMatrix, ApproxCertificate), ApproxError> {
    check_eps(eps)?;
    spec.validate(n)?;
    let ones = vec![Rational::one(); spec.rotations.len().max(1)];
    let budget = equal_dyadic_budget(&ones, eps)?;

    let mut output = RationalMatrix::identity(n);
    let mut errors = Vec::with_capacity(spec.rotations.len());
    for r in &spec.rotations {
        let (m, e) = approx_rotation(r, n, &budget)?;
        output = &output * &m;
        errors.push(e);
    }
    if let Some(mask) = &spec.sign_mask {
        let diag: Vec<Rational> = mask.iter().map(|&s| Rational::from(s as i64)).collect();
        output = &output * &RationalMatrix::diagonal(&diag);
    }
    debug_assert!(output.is_orthogonal());

    let bound = lemma_fold(errors.iter().zip(&ones))
        .map(|(e, _)| e)
        .unwrap_or_else(Rational::zero);
    Ok((
        output.clone(),
        ApproxCertificate {
            target: TargetSpec::Orthogonal(spec.clone()),
            output,
            delta: if bound.is_zero() { Rational::zero() } else { budget },
            error_bound: bound,
            velocity_error_bound: None,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, sqrt_enclosure_bits};
    use crate::linalg::IntervalMatrix;

    #[test]
    fn pythagorean_direction_is_exact() {
        let spec = OrthogonalSpec::single((1, 2), [q(4, 1), q(3, 1)]);
        let (a, cert) = approx_orthogonal(&spec, &q(1, 100), 2).unwrap();
        assert_eq!(a.rows(), vec![vec![q(4, 5), q(-3, 5)], vec![q(3, 5), q(4, 5)]]);
        assert!(cert.is_exact());
    }

    #[test]
    fn empty_spec_is_identity() {
        let (a, cert) = approx_orthogonal(&OrthogonalSpec::identity(), &q(1, 100), 3).unwrap();
        assert!(a.is_identity());
        assert!(cert.is_exact());
    }

    /// Oracle: enclose the real rotation by `1/sqrt(2)` and bound the
    /// Frobenius difference directly.
    #[test]
    fn diagonal_rotation() {
        let spec = OrthogonalSpec::single((1, 2), [q(1, 1), q(1, 1)]);
        let eps = q(1, 100);
        let (a, cert) = approx_orthogonal(&spec, &eps, 2).unwrap();
        assert!(a.is_orthogonal());
        assert!(cert.error_bound < eps);
        let h = sqrt_enclosure_bits(&q(1, 2), 40).unwrap();
        let target = IntervalMatrix::from_fn(2, |r, c| if r == 0 && c == 1 { -&h } else { h.clone() });
        let d = target.frobenius_dist_sq(&a);
        assert!(*d.hi() < eps.square());
    }

    #[test]
    fn sign_mask_and_validation() {
        let spec = OrthogonalSpec {
            rotations: vec![],
            sign_mask: Some(vec![1, -1, 1]),
        };
        let (a, cert) = approx_orthogonal(&spec, &q(1, 10), 3).unwrap();
        assert_eq!(a, RationalMatrix::diagonal(&[q(1, 1), q(-1, 1), q(1, 1)]));
        assert!(cert.is_exact());
        let bad = OrthogonalSpec::single((2, 2), [q(1, 1), q(0, 1)]);
        assert!(matches!(approx_orthogonal(&bad, &q(1, 10), 3), Err(ApproxError::InvalidSpec(_))));
        let bad = OrthogonalSpec::single((1, 4), [q(1, 1), q(0, 1)]);
        assert!(approx_orthogonal(&bad, &q(1, 10), 3).is_err());
        let bad = OrthogonalSpec::single((1, 2), [q(0, 1), q(0, 1)]);
        assert!(approx_orthogonal(&bad, &q(1, 10), 3).is_err());
    }

    #[test]
    fn chained_rotations_and_monotonicity() {
        let spec = OrthogonalSpec {
            rotations: vec![
                PlanarRotation { plane: (1, 2), toward: [q(1, 1), q(2, 1)] },
                PlanarRotation { plane: (2, 3), toward: [q(-3, 1), q(1, 1)] },
                PlanarRotation { plane: (1, 3), toward: [q(5, 1), q(-1, 1)] },
            ],
            sign_mask: None,
        };
        let mut prev: Option<Rational> = None;
        for k in [3, 7, 12, 20] {
            let eps = Rational::dyadic_unit(k);
            let (a, cert) = approx_orthogonal(&spec, &eps, 3).unwrap();
            assert!(a.is_orthogonal());
            assert!(cert.error_bound < eps);
            if let Some(p) = &prev {
                assert!(cert.error_bound <= *p);
            }
            prev = Some(cert.error_bound);
        }
    }

    #[test]
    fn inverse_spec_composes_to_identity() {
        let spec = OrthogonalSpec::single((1, 2), [q(3, 1), q(4, 1)]);
        let (a, _) = approx_orthogonal(&spec, &q(1, 10), 2).unwrap();
        let (b, _) = approx_orthogonal(&spec.inverse().unwrap(), &q(1, 10), 2).unwrap();
        assert!((&a * &b).is_identity());
    }
}
