//! The rational coordinate model: inertial observers are rational Poincaré
//! maps, photons are rational lines of slope one, and an observer `m`
//! coordinatizes body `b` at `x` exactly when `m(x)` lies on `b`'s worldline
//! as seen by the identity observer `Id`.
//!
//! The carrier of the model is infinite. A [`Model`] keeps a finite named
//! registry of bodies and decides every predicate exactly; operations that
//! quantify over all bodies build the witnesses they need on demand.

mod line;
mod scenario;

pub use line::Line;
pub use scenario::{ObserverEntry, PhotonEntry, Scenario};

use serde::Serialize;
use thiserror::Error;

use crate::approx::{boost_matrix_along, PythagoreanSpeed};
use crate::exact::{q, Rational};
use crate::linalg::{
    AffineMap, LinalgError, LorentzMatrix, PoincareMap, RationalMatrix, SpacetimeVec,
};

/// Name of the identity observer present in every model.
pub const ID: &str = "Id";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("body '{body}': expected dimension {expected}, found {found}")]
    DimensionMismatch {
        body: String,
        expected: usize,
        found: usize,
    },
    #[error("body '{body}': {invariant}")]
    InvalidBody { body: String, invariant: String },
    #[error("duplicate body name '{0}'")]
    DuplicateName(String),
    #[error("unknown body '{0}'")]
    UnknownBody(String),
    #[error("observer is not invertible: {0}")]
    Singular(String),
    #[error("scenario: {0}")]
    Scenario(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A lightlike line `anchor + s (1, u)` with `u` an exact rational unit
/// vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Photon {
    line: Line,
}

impl Photon {
    pub fn new(anchor: SpacetimeVec, spatial_direction: &[Rational]) -> Result<Self, String> {
        if spatial_direction.len() + 1 != anchor.dim() {
            return Err(format!(
                "direction has {} spatial coordinates, expected {}",
                spatial_direction.len(),
                anchor.dim().saturating_sub(1)
            ));
        }
        let norm: Rational = spatial_direction.iter().map(Rational::square).sum();
        if norm != Rational::one() {
            return Err(format!(
                "spatial direction must be a unit vector, |u|^2 = {norm}"
            ));
        }
        let direction = SpacetimeVec::from_time_space(Rational::one(), spatial_direction);
        let line = Line::new(anchor, direction).map_err(|e| e.to_string())?;
        Ok(Photon { line })
    }

    /// The photon through two distinct lightlike-separated points.
    pub fn through(x: &SpacetimeVec, y: &SpacetimeVec) -> Option<Self> {
        let line = Line::through_points(x, y).ok()?;
        Photon::from_line(line)
    }

    pub fn from_line(line: Line) -> Option<Self> {
        line.is_slope_one().then_some(Photon { line })
    }

    /// Skips the slope-one check; for harness self-tests only.
    pub fn from_line_unchecked(line: Line) -> Self {
        Photon { line }
    }

    pub fn line(&self) -> &Line {
        &self.line
    }
}

/// A body of the model. Observers hold an arbitrary affine map so that
/// test fixtures can register maps that are not Poincaré; every constructor
/// on [`Model`] except the `unchecked` ones enforces the Lorentz condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Observer(AffineMap),
    Photon(Photon),
}

impl Body {
    pub fn observer(map: PoincareMap) -> Self {
        Body::Observer(map.into())
    }

    pub fn as_observer(&self) -> Option<&AffineMap> {
        match self {
            Body::Observer(m) => Some(m),
            Body::Photon(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Body::Observer(m) => m.dim(),
            Body::Photon(p) => p.line.dim(),
        }
    }

    /// Worldline as seen by `Id`: `b[t-axis]` for observers, the line itself
    /// for photons.
    pub fn id_worldline(&self) -> Line {
        match self {
            Body::Observer(b) => Line::new(b.translation.clone(), b.linear.column(0))
                .expect("same dimension"),
            Body::Photon(p) => p.line.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedBody {
    pub name: String,
    pub body: Body,
}

/// `W(m, b, x)`: `m` coordinatizes `b` at `x`, i.e. `W(Id, b, m(x))`.
pub fn worldview(m: &AffineMap, b: &Body, x: &SpacetimeVec) -> bool {
    if m.dim() != b.dim() || x.dim() != m.dim() {
        return false;
    }
    let z = m.apply(x).expect("dimensions checked");
    b.id_worldline().contains(&z)
}

/// `w_mk = k^-1 o m`, with `k^-1` by Gaussian elimination so that it is
/// independent of the Lorentz shortcut `eta L^T eta`.
pub fn worldview_transform(m: &AffineMap, k: &AffineMap) -> Result<AffineMap, ModelError> {
    let inv = k.inverse().map_err(|e| match e {
        LinalgError::Singular => ModelError::Singular(format!("{:?}", k.linear)),
        other => other.into(),
    })?;
    Ok(inv.compose(m)?)
}

/// `wl_m(b) = {x : W(m, b, x)} = m^-1[wl_Id(b)]`.
pub fn worldline(m: &AffineMap, b: &Body) -> Result<Line, ModelError> {
    if m.dim() != b.dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.dim(),
            found: b.dim(),
        }
        .into());
    }
    let inv = m
        .inverse()
        .map_err(|_| ModelError::Singular(format!("{:?}", m.linear)))?;
    Ok(b.id_worldline().image(&inv)?)
}

/// Two observers whose worldlines meet exactly at `z`: the rest observer
/// through `z` and one moving at speed 3/5 through `z`. Any event of the full
/// model that contains both is the event at `z`.
fn separating_witnesses(z: &SpacetimeVec) -> [Body; 2] {
    let dim = z.dim();
    let rest = PoincareMap::translation_only(z.clone());
    let s = PythagoreanSpeed::new(q(3, 5), q(4, 5)).expect("3-4-5");
    let moving = PoincareMap::new(
        boost_matrix_along(&s, 1, dim).expect("dim >= 2"),
        z.clone(),
    )
    .expect("same dimension");
    [Body::observer(rest), Body::observer(moving)]
}

/// Registry of named bodies over a fixed dimension. The identity observer
/// `Id` is always entry 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Model {
    dimension: usize,
    bodies: Vec<NamedBody>,
}

impl Model {
    pub fn new(dimension: usize) -> Result<Self, ModelError> {
        if dimension < 2 {
            return Err(ModelError::DimensionTooSmall(dimension));
        }
        Ok(Model {
            dimension,
            bodies: vec![NamedBody {
                name: ID.to_string(),
                body: Body::observer(PoincareMap::identity(dimension)),
            }],
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bodies(&self) -> &[NamedBody] {
        &self.bodies
    }

    pub fn body(&self, name: &str) -> Option<&Body> {
        self.bodies.iter().find(|b| b.name == name).map(|b| &b.body)
    }

    pub fn observer(&self, name: &str) -> Option<&AffineMap> {
        self.body(name).and_then(Body::as_observer)
    }

    pub fn identity(&self) -> &AffineMap {
        self.bodies[0].body.as_observer().expect("Id is an observer")
    }

    pub fn observers(&self) -> impl Iterator<Item = (&str, &AffineMap)> {
        self.bodies
            .iter()
            .filter_map(|b| b.body.as_observer().map(|m| (b.name.as_str(), m)))
    }

    pub fn photons(&self) -> impl Iterator<Item = (&str, &Photon)> {
        self.bodies.iter().filter_map(|b| match &b.body {
            Body::Photon(p) => Some((b.name.as_str(), p)),
            Body::Observer(_) => None,
        })
    }

    fn push(mut self, name: &str, body: Body) -> Result<Self, ModelError> {
        if self.bodies.iter().any(|b| b.name == name) {
            return Err(ModelError::DuplicateName(name.to_string()));
        }
        if body.dim() != self.dimension {
            return Err(ModelError::DimensionMismatch {
                body: name.to_string(),
                expected: self.dimension,
                found: body.dim(),
            });
        }
        self.bodies.push(NamedBody {
            name: name.to_string(),
            body,
        });
        Ok(self)
    }

    pub fn with_observer(self, name: &str, map: PoincareMap) -> Result<Self, ModelError> {
        self.push(name, Body::observer(map))
    }

    pub fn with_photon(self, name: &str, photon: Photon) -> Result<Self, ModelError> {
        self.push(name, Body::Photon(photon))
    }

    /// Registers an arbitrary affine map as an observer. Breaks the model's
    /// invariants on purpose; used to check that the axiom harness notices.
    pub fn with_unchecked_observer(self, name: &str, map: AffineMap) -> Result<Self, ModelError> {
        self.push(name, Body::Observer(map))
    }

    /// Registers an arbitrary line as a photon. See
    /// [`Model::with_unchecked_observer`].
    pub fn with_unchecked_photon(self, name: &str, line: Line) -> Result<Self, ModelError> {
        self.push(name, Body::Photon(Photon::from_line_unchecked(line)))
    }

    /// Checks every registered body against the model invariants.
    pub fn validate(&self) -> Result<(), ModelError> {
        for nb in &self.bodies {
            let ok = match &nb.body {
                Body::Observer(m) => m.linear.is_lorentz(),
                Body::Photon(p) => p.line.is_slope_one(),
            };
            if !ok {
                let invariant = match nb.body {
                    Body::Observer(_) => "matrix is not Lorentz (M^T eta M != eta)",
                    Body::Photon(_) => "worldline is not a line of slope 1",
                };
                return Err(ModelError::InvalidBody {
                    body: nb.name.clone(),
                    invariant: invariant.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Indices of the registered bodies that `m` coordinatizes at `x`.
    pub fn event(&self, m: &AffineMap, x: &SpacetimeVec) -> Vec<usize> {
        self.bodies
            .iter()
            .enumerate()
            .filter(|(_, b)| worldview(m, &b.body, x))
            .map(|(i, _)| i)
            .collect()
    }

    /// `ev_m(x) = ev_k(y)` read over the registry only. A finite registry
    /// cannot always separate events, so this may hold for distinct events.
    pub fn registry_events_agree(
        &self,
        m: &AffineMap,
        x: &SpacetimeVec,
        k: &AffineMap,
        y: &SpacetimeVec,
    ) -> bool {
        self.bodies
            .iter()
            .all(|b| worldview(m, &b.body, x) == worldview(k, &b.body, y))
    }

    /// `ev_m(x) = ev_k(y)` over the full model: the registry must agree, and
    /// so must the separating witness observers through `m(x)` and `k(y)`,
    /// which stand in for the rest of the carrier.
    pub fn events_agree(
        &self,
        m: &AffineMap,
        x: &SpacetimeVec,
        k: &AffineMap,
        y: &SpacetimeVec,
    ) -> bool {
        let d = self.dimension;
        if m.dim() != d || k.dim() != d || x.dim() != d || y.dim() != d {
            return false;
        }
        if !self.registry_events_agree(m, x, k, y) {
            return false;
        }
        let zx = m.apply(x).expect("dimension checked");
        let zy = k.apply(y).expect("dimension checked");
        separating_witnesses(&zx)
            .iter()
            .chain(separating_witnesses(&zy).iter())
            .all(|w| worldview(m, w, x) == worldview(k, w, y))
    }

    /// The built-in scenario: `Id`, boosts of speed 3/5, 5/13 and 8/17 along
    /// successive spatial axes, one rotated (for `d = 2`, reflected) observer,
    /// and six photons in distinct directions.
    pub fn default_scenario(dimension: usize) -> Result<Self, ModelError> {
        let mut model = Model::new(dimension)?;
        let d = dimension;
        let n = d - 1;
        let point = |t: Rational, space: &[(usize, Rational)]| {
            let mut c = vec![Rational::zero(); d];
            c[0] = t;
            for (i, x) in space {
                c[1 + (i % n)] = x.clone();
            }
            SpacetimeVec::new(c)
        };

        let boosts = [
            ("boost-3/5", q(3, 5), q(4, 5), point(q(0, 1), &[])),
            ("boost-5/13", q(5, 13), q(12, 13), point(q(1, 1), &[(0, q(-1, 2))])),
            ("boost-8/17", q(8, 17), q(15, 17), point(q(-2, 3), &[(n - 1, q(3, 4))])),
        ];
        for (i, (name, w, r, shift)) in boosts.into_iter().enumerate() {
            let s = PythagoreanSpeed::new(w, r).expect("pythagorean");
            let b = boost_matrix_along(&s, 1 + i % n, d).expect("valid axis");
            model = model.with_observer(name, PoincareMap::new(b, shift)?)?;
        }

        let (name, linear, shift) = if n >= 2 {
            let mut m = RationalMatrix::identity(d);
            m.set(1, 1, q(3, 5));
            m.set(1, 2, q(-4, 5));
            m.set(2, 1, q(4, 5));
            m.set(2, 2, q(3, 5));
            ("rotated", m, point(q(2, 1), &[(0, q(1, 1)), (1, q(-1, 1))]))
        } else {
            let m = RationalMatrix::diagonal(&[q(1, 1), q(-1, 1)]);
            ("reflected", m, point(q(1, 2), &[(0, q(3, 1))]))
        };
        model = model.with_observer(name, PoincareMap::new(LorentzMatrix::new(linear)?, shift)?)?;

        let unit = |entries: &[(usize, Rational)]| {
            let mut u = vec![Rational::zero(); n];
            for (i, x) in entries {
                u[*i] = x.clone();
            }
            u
        };
        let directions: Vec<Vec<Rational>> = match n {
            1 => [1, -1, 1, -1, 1, -1].iter().map(|&s| vec![q(s, 1)]).collect(),
            2 => vec![
                unit(&[(0, q(1, 1))]),
                unit(&[(1, q(-1, 1))]),
                unit(&[(0, q(3, 5)), (1, q(4, 5))]),
                unit(&[(0, q(-5, 13)), (1, q(12, 13))]),
                unit(&[(0, q(-8, 17)), (1, q(-15, 17))]),
                unit(&[(0, q(-1, 1))]),
            ],
            _ => vec![
                unit(&[(0, q(1, 1))]),
                unit(&[(n - 1, q(-1, 1))]),
                unit(&[(0, q(3, 5)), (1, q(4, 5))]),
                unit(&[(0, q(2, 3)), (1, q(-1, 3)), (2, q(2, 3))]),
                unit(&[(1, q(-5, 13)), (2, q(12, 13))]),
                unit(&[(0, q(-3, 5)), (n - 1, q(4, 5))]),
            ],
        };
        let anchors = [
            point(q(0, 1), &[]),
            point(q(1, 1), &[]),
            point(q(0, 1), &[(0, q(1, 1))]),
            point(q(2, 1), &[(0, q(-1, 2)), (n.saturating_sub(1), q(1, 3))]),
            point(q(-3, 1), &[(1 % n, q(1, 3))]),
            point(q(1, 7), &[(0, q(5, 1))]),
        ];
        for (i, (u, a)) in directions.iter().zip(anchors).enumerate() {
            let p = Photon::new(a, u).expect("unit direction");
            model = model.with_photon(&format!("photon-{}", i + 1), p)?;
        }
        Ok(model)
    }
}
