use serde::Serialize;

use crate::exact::Rational;

use super::sampling::{rational, sample_rng};
use super::Axiom;

/// Operations of a candidate ordered field over rational values. The
/// checker only sees values through these, so a fixture can plug in a
/// broken comparator or operation.
pub trait OrderedField: Sync {
    fn add(&self, a: &Rational, b: &Rational) -> Rational;
    fn mul(&self, a: &Rational, b: &Rational) -> Rational;
    fn neg(&self, a: &Rational) -> Rational;
    /// `None` for zero.
    fn inv(&self, a: &Rational) -> Option<Rational>;
    fn le(&self, a: &Rational, b: &Rational) -> bool;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
}

/// The rational numbers with their usual operations.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl OrderedField for RationalField {
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.recip().ok()
    }
    fn le(&self, a: &Rational, b: &Rational) -> bool {
        a <= b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldLaw {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    AddInverse,
    MulAssociative,
    MulCommutative,
    MulIdentity,
    MulInverse,
    Distributive,
    NontrivialOne,
    OrderTotal,
    OrderAntisymmetric,
    OrderTransitive,
    OrderAddCompatible,
    OrderMulCompatible,
}

impl FieldLaw {
    pub const ALL: [FieldLaw; 15] = [
        FieldLaw::AddAssociative,
        FieldLaw::AddCommutative,
        FieldLaw::AddIdentity,
        FieldLaw::AddInverse,
        FieldLaw::MulAssociative,
        FieldLaw::MulCommutative,
        FieldLaw::MulIdentity,
        FieldLaw::MulInverse,
        FieldLaw::Distributive,
        FieldLaw::NontrivialOne,
        FieldLaw::OrderTotal,
        FieldLaw::OrderAntisymmetric,
        FieldLaw::OrderTransitive,
        FieldLaw::OrderAddCompatible,
        FieldLaw::OrderMulCompatible,
    ];

    /// Whether the law holds at `(x, y, z)` under `f`.
    pub fn holds<F: OrderedField + ?Sized>(self, f: &F, x: &Rational, y: &Rational, z: &Rational) -> bool {
        let zero = f.zero();
        let one = f.one();
        match self {
            FieldLaw::AddAssociative => f.add(&f.add(x, y), z) == f.add(x, &f.add(y, z)),
            FieldLaw::AddCommutative => f.add(x, y) == f.add(y, x),
            FieldLaw::AddIdentity => f.add(x, &zero) == *x,
            FieldLaw::AddInverse => f.add(x, &f.neg(x)) == zero,
            FieldLaw::MulAssociative => f.mul(&f.mul(x, y), z) == f.mul(x, &f.mul(y, z)),
            FieldLaw::MulCommutative => f.mul(x, y) == f.mul(y, x),
            FieldLaw::MulIdentity => f.mul(x, &one) == *x,
            FieldLaw::MulInverse => {
                *x == zero || f.inv(x).is_some_and(|i| f.mul(x, &i) == one)
            }
            FieldLaw::Distributive => f.mul(x, &f.add(y, z)) == f.add(&f.mul(x, y), &f.mul(x, z)),
            FieldLaw::NontrivialOne => zero != one,
            FieldLaw::OrderTotal => f.le(x, y) || f.le(y, x),
            FieldLaw::OrderAntisymmetric => !(f.le(x, y) && f.le(y, x)) || x == y,
            FieldLaw::OrderTransitive => !(f.le(x, y) && f.le(y, z)) || f.le(x, z),
            FieldLaw::OrderAddCompatible => !f.le(x, y) || f.le(&f.add(x, z), &f.add(y, z)),
            FieldLaw::OrderMulCompatible => {
                !(f.le(&zero, x) && f.le(&zero, y)) || f.le(&zero, &f.mul(x, y))
            }
        }
    }
}

/// Sample `index`'s triple. Every fourth sample reuses a value so that the
/// antisymmetry and equality-sensitive laws see equal arguments.
pub(crate) fn field_triple(seed: u64, index: u64) -> [Rational; 3] {
    let mut rng = sample_rng(seed, Axiom::AxOField, index);
    let x = rational(&mut rng);
    let mut y = rational(&mut rng);
    let z = rational(&mut rng);
    if index % 4 == 3 {
        y = x.clone();
    }
    [x, y, z]
}

/// First violated law at sample `index`, if any.
pub(crate) fn check_field_sample<F: OrderedField + ?Sized>(
    f: &F,
    seed: u64,
    index: u64,
) -> Option<(FieldLaw, [Rational; 3])> {
    let [x, y, z] = field_triple(seed, index);
    FieldLaw::ALL
        .iter()
        .find(|law| !law.holds(f, &x, &y, &z))
        .map(|&law| (law, [x, y, z]))
}
