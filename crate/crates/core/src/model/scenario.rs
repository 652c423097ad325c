use serde::{Deserialize, Serialize};

use super::{Body, Model, ModelError, Photon, ID};
use crate::exact::Rational;
use crate::linalg::{LorentzMatrix, PoincareMap, RationalMatrix, SpacetimeVec};

/// On-disk form of a model. Fractions are strings (`"p/q"` or `"p"`); the
/// identity observer is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub dimension: usize,
    #[serde(default)]
    pub observers: Vec<ObserverEntry>,
    #[serde(default)]
    pub photons: Vec<PhotonEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObserverEntry {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub translation: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhotonEntry {
    pub name: String,
    pub anchor: Vec<String>,
    /// Spatial unit vector.
    pub direction: Vec<String>,
}

fn invalid(body: &str, invariant: impl Into<String>) -> ModelError {
    ModelError::InvalidBody {
        body: body.to_string(),
        invariant: invariant.into(),
    }
}

fn parse_all(body: &str, field: &str, xs: &[String]) -> Result<Vec<Rational>, ModelError> {
    xs.iter()
        .enumerate()
        .map(|(i, s)| {
            s.parse()
                .map_err(|e| invalid(body, format!("{field}[{i}]: {e}")))
        })
        .collect()
}

fn check_len(body: &str, field: &str, len: usize, expected: usize) -> Result<(), ModelError> {
    if len != expected {
        return Err(invalid(
            body,
            format!("{field} has {len} entries, expected {expected}"),
        ));
    }
    Ok(())
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Scenario(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Builds the model, naming the first body that violates an invariant.
    pub fn build(&self) -> Result<Model, ModelError> {
        let d = self.dimension;
        let mut model = Model::new(d)?;
        for o in &self.observers {
            let name = o.name.as_str();
            if name == ID {
                return Err(invalid(name, "name is reserved for the identity observer"));
            }
            check_len(name, "matrix", o.matrix.len(), d)?;
            let mut rows = Vec::with_capacity(d);
            for (r, row) in o.matrix.iter().enumerate() {
                check_len(name, &format!("matrix[{r}]"), row.len(), d)?;
                rows.push(parse_all(name, &format!("matrix[{r}]"), row)?);
            }
            let matrix = RationalMatrix::from_rows(rows)?;
            let linear = LorentzMatrix::new(matrix)
                .map_err(|_| invalid(name, "matrix is not Lorentz (M^T eta M != eta)"))?;
            let translation = match &o.translation {
                Some(t) => {
                    check_len(name, "translation", t.len(), d)?;
                    SpacetimeVec::new(parse_all(name, "translation", t)?)
                }
                None => SpacetimeVec::origin(d),
            };
            model = model.with_observer(name, PoincareMap::new(linear, translation)?)?;
        }
        for p in &self.photons {
            let name = p.name.as_str();
            check_len(name, "anchor", p.anchor.len(), d)?;
            check_len(name, "direction", p.direction.len(), d - 1)?;
            let anchor = SpacetimeVec::new(parse_all(name, "anchor", &p.anchor)?);
            let dir = parse_all(name, "direction", &p.direction)?;
            let photon = Photon::new(anchor, &dir).map_err(|e| invalid(name, e))?;
            model = model.with_photon(name, photon)?;
        }
        Ok(model)
    }
}

impl Model {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        Scenario::from_json(text)?.build()
    }

    /// Scenario form of the registry, without `Id`. Observers are written as
    /// stored, so an unchecked fixture will fail to load back.
    pub fn to_scenario(&self) -> Scenario {
        let strings = |xs: &[Rational]| xs.iter().map(ToString::to_string).collect::<Vec<_>>();
        let mut s = Scenario {
            dimension: self.dimension,
            observers: Vec::new(),
            photons: Vec::new(),
        };
        for nb in self.bodies.iter().skip(1) {
            match &nb.body {
                Body::Observer(m) => s.observers.push(ObserverEntry {
                    name: nb.name.clone(),
                    matrix: m.linear.rows().iter().map(|r| strings(r)).collect(),
                    translation: Some(strings(m.translation.coords())),
                }),
                Body::Photon(p) => {
                    let line = p.line();
                    let t = line.direction().time();
                    let dir: Vec<Rational> = if t.is_zero() {
                        line.direction().spatial().to_vec()
                    } else {
                        line.direction().spatial().iter().map(|x| x / t).collect()
                    };
                    s.photons.push(PhotonEntry {
                        name: nb.name.clone(),
                        anchor: strings(line.anchor().coords()),
                        direction: strings(&dir),
                    });
                }
            }
        }
        s
    }
}
