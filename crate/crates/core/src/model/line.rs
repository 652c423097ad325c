use std::fmt;

use serde::Serialize;

use crate::exact::Rational;
use crate::linalg::{space_sq, AffineMap, LinalgError, SpacetimeVec};

/// A rational line `{anchor + s * direction}` in canonical form, or a single
/// point when the direction is zero.
///
/// Canonical form: the first nonzero direction coordinate is 1 and the
/// anchor's coordinate at that index is 0. For lines that are not purely
/// spatial this means direction time component 1 and anchor at time 0, so
/// two lines are equal exactly when their canonical forms are.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Line {
    anchor: SpacetimeVec,
    direction: SpacetimeVec,
}

impl Line {
    pub fn new(anchor: SpacetimeVec, direction: SpacetimeVec) -> Result<Self, LinalgError> {
        direction.check_dim(anchor.dim())?;
        let Some(k) = direction.coords().iter().position(|x| !x.is_zero()) else {
            return Ok(Line { anchor, direction });
        };
        let direction = direction.scale(&direction[k].recip().expect("nonzero"));
        let anchor = &anchor - &direction.scale(&anchor[k]);
        Ok(Line { anchor, direction })
    }

    pub fn through_points(x: &SpacetimeVec, y: &SpacetimeVec) -> Result<Self, LinalgError> {
        y.check_dim(x.dim())?;
        Line::new(x.clone(), y - x)
    }

    /// The `t`-axis of `d`-dimensional coordinate space.
    pub fn time_axis(dim: usize) -> Self {
        Line {
            anchor: SpacetimeVec::origin(dim),
            direction: SpacetimeVec::unit_time(dim),
        }
    }

    pub fn anchor(&self) -> &SpacetimeVec {
        &self.anchor
    }

    pub fn direction(&self) -> &SpacetimeVec {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.anchor.dim()
    }

    pub fn is_point(&self) -> bool {
        self.direction.is_zero()
    }

    /// Exact membership test.
    pub fn contains(&self, x: &SpacetimeVec) -> bool {
        if x.dim() != self.dim() {
            return false;
        }
        let Some(k) = self.direction.coords().iter().position(|c| !c.is_zero()) else {
            return *x == self.anchor;
        };
        let s = &x[k];
        x.coords()
            .iter()
            .zip(self.anchor.coords().iter().zip(self.direction.coords()))
            .all(|(xi, (ai, di))| *xi == ai + &(s * di))
    }

    /// Spatial displacement equals time displacement along the line.
    pub fn is_slope_one(&self) -> bool {
        !self.is_point()
            && space_sq(&self.direction, &SpacetimeVec::origin(self.dim()))
                == self.direction.time().square()
    }

    /// Image under an affine map; a point when the map collapses the
    /// direction.
    pub fn image(&self, map: &AffineMap) -> Result<Self, LinalgError> {
        let anchor = map.apply(&self.anchor)?;
        let direction = map.linear.mul_vec(&self.direction)?;
        Line::new(anchor, direction)
    }

    /// Speed `|spatial| / time` squared, when the line is not purely spatial.
    pub fn speed_sq(&self) -> Option<Rational> {
        let t = self.direction.time();
        if t.is_zero() {
            return None;
        }
        let s: Rational = self.direction.spatial().iter().map(Rational::square).sum();
        Some(s / t.square())
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + s{}", self.anchor, self.direction)
    }
}
