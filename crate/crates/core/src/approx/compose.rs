use serde::Serialize;

use crate::exact::Rational;
use crate::linalg::RationalMatrix;

use super::ApproxError;

/// One approximated factor of a product: the rational output, a certified
/// Frobenius bound on its distance to the real target, and an upper bound on
/// the target's operator norm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedFactor {
    pub matrix: RationalMatrix,
    pub error_bound: Rational,
    pub target_norm_bound: Rational,
}

/// Folds `||BA - B'A'|| <= e_A ||B|| + e_A e_B + e_B ||A||` left to right
/// over `(error, norm)` pairs, where the product is taken in list order.
/// Returns the total error and the norm bound of the whole product.
///
/// The errors may be Frobenius and the norms operator norms: the lemma's
/// proof only uses `|Mx| <= ||M|| |x|` on the left factor and
/// `||XY||_F <= ||X||_2 ||Y||_F`, so the mixed form holds.
pub fn lemma_fold<'a>(
    factors: impl IntoIterator<Item = (&'a Rational, &'a Rational)>,
) -> Option<(Rational, Rational)> {
    let mut iter = factors.into_iter();
    let (e0, n0) = iter.next()?;
    let mut err = e0.clone();
    let mut norm = n0.clone();
    for (e, n) in iter {
        err = e * &norm + e * &err + &err * n;
        norm = &norm * n;
    }
    Some((err, norm))
}

/// Exact product of factor outputs (in list order) and the folded bound on
/// its distance to the product of the targets.
pub fn compose_with_bound(
    factors: &[BoundedFactor],
) -> Result<(RationalMatrix, Rational), ApproxError> {
    let first = factors.first().ok_or(ApproxError::EmptyChain)?;
    for f in factors {
        if f.error_bound.is_negative() || f.target_norm_bound.is_negative() {
            return Err(ApproxError::InvalidSpec(
                "factor bounds must be nonnegative".into(),
            ));
        }
    }
    let mut product = first.matrix.clone();
    for f in &factors[1..] {
        product = product.checked_mul(&f.matrix)?;
    }
    let (bound, _) = lemma_fold(
        factors
            .iter()
            .map(|f| (&f.error_bound, &f.target_norm_bound)),
    )
    .expect("nonempty");
    Ok((product, bound))
}

/// Largest `2^-j` such that `count` factors each carrying that error, with
/// the given norms, fold to a total strictly below `eps`.
pub(crate) fn equal_dyadic_budget(
    norms: &[Rational],
    eps: &Rational,
) -> Result<Rational, ApproxError> {
    for j in 1..=super::MAX_SEARCH_BITS * 2 {
        let e = Rational::dyadic_unit(j);
        let errs = vec![e.clone(); norms.len()];
        let (total, _) = lemma_fold(errs.iter().zip(norms)).ok_or(ApproxError::EmptyChain)?;
        if &total < eps {
            return Ok(e);
        }
    }
    Err(ApproxError::SearchExhausted {
        what: "error budget",
        eps: eps.clone(),
        max_bits: super::MAX_SEARCH_BITS * 2,
    })
}
