//! Exact checkers for the kinematic axioms on a [`Model`].
//!
//! Each checker draws its samples from a per-sample ChaCha stream derived
//! from the master seed and the sample index, so a report is the same
//! whether the samples run sequentially or in parallel. A failing report
//! carries the lowest-index counterexample, which [`Witness::replay`]
//! reproduces exactly.

mod field;
pub mod sampling;
mod thexp;

pub use field::{FieldLaw, OrderedField, RationalField};
pub use thexp::{witness_axthexp_minus, ThExpWitness, WitnessError};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::exact::{q, Rational};
use crate::linalg::{space_sq, time_sep, AffineMap, RationalMatrix, SpacetimeVec};
use crate::model::{worldline, worldview, worldview_transform, Body, Line, Model, Photon};
use sampling::{nonzero_rational, off_axis_point, point, rational, sample_rng, sublight_velocity, unit_vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    AxPh = 1,
    AxOField = 2,
    AxEv = 3,
    AxSelf = 4,
    AxSymD = 5,
    AxThExpMinus = 6,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::AxPh,
        Axiom::AxOField,
        Axiom::AxEv,
        Axiom::AxSelf,
        Axiom::AxSymD,
        Axiom::AxThExpMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::AxPh => "AxPh",
            Axiom::AxOField => "AxOField",
            Axiom::AxEv => "AxEv",
            Axiom::AxSelf => "AxSelf",
            Axiom::AxSymD => "AxSymD",
            Axiom::AxThExpMinus => "AxThExp-",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    /// Case-insensitive; `AxThExp-`, `AxThExpMinus` and `thexp` all name the
    /// last axiom.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        Ok(match key.as_str() {
            "axph" | "ph" => Axiom::AxPh,
            "axofield" | "ofield" => Axiom::AxOField,
            "axev" | "ev" => Axiom::AxEv,
            "axself" | "self" => Axiom::AxSelf,
            "axsymd" | "symd" => Axiom::AxSymD,
            "axthexp-" | "axthexpminus" | "axthexp" | "thexp" => Axiom::AxThExpMinus,
            _ => {
                let names: Vec<_> = Axiom::ALL.iter().map(|a| a.name()).collect();
                return Err(format!("unknown axiom '{s}', expected one of {}", names.join(", ")));
            }
        })
    }
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A concrete counterexample. Observers are referenced by registry name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A photon through `x` and `y` exists (for `m`) but the pair is not
    /// lightlike, or the other way round. `photon` names the registered body
    /// that joins them, if any.
    ConeMismatch {
        observer: String,
        x: SpacetimeVec,
        y: SpacetimeVec,
        photon: Option<String>,
        photon_exists: bool,
        lightlike: bool,
    },
    FieldLaw {
        law: FieldLaw,
        values: [Rational; 3],
    },
    /// `m(x)` is outside the image of `k`, so no `y` has the same event.
    NoMatchingEvent {
        m: String,
        k: String,
        x: SpacetimeVec,
    },
    EventMismatch {
        m: String,
        k: String,
        x: SpacetimeVec,
        y: SpacetimeVec,
    },
    SelfMismatch {
        observer: String,
        x: SpacetimeVec,
        coordinatized: bool,
    },
    DistanceMismatch {
        m: String,
        k: String,
        x: SpacetimeVec,
        y: SpacetimeVec,
        x_prime: SpacetimeVec,
        y_prime: SpacetimeVec,
        space_sq_m: Rational,
        space_sq_k: Rational,
    },
    /// The line through `m(0)` and `m(1, 1, 0, ..., 0)` is not of slope 1.
    LightSpeed { observer: String },
    ThExp {
        m: String,
        velocity: Vec<Rational>,
        eps: Rational,
        seed: u64,
        reason: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub status: Status,
    pub samples: usize,
    pub seed: u64,
    /// Samples that had nothing to test (degenerate simultaneity planes).
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub light_speed: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_sample: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Settings for [`run_suite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    /// Samples per axiom unless overridden.
    pub samples: usize,
    pub overrides: BTreeMap<Axiom, usize>,
    /// Which checkers to run, in order.
    pub axioms: Vec<Axiom>,
    pub parallel: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 1,
            samples: 1000,
            overrides: BTreeMap::new(),
            axioms: Axiom::ALL.to_vec(),
            parallel: true,
        }
    }
}

impl CheckConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        CheckConfig {
            samples,
            seed,
            ..Default::default()
        }
    }

    pub fn samples_for(&self, axiom: Axiom) -> usize {
        self.overrides.get(&axiom).copied().unwrap_or(self.samples)
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(Witness),
}

fn run_samples<F>(axiom: Axiom, samples: usize, seed: u64, parallel: bool, f: F) -> AxiomReport
where
    F: Fn(u64) -> Outcome + Sync,
{
    let outcomes: Vec<Outcome> = if parallel {
        (0..samples as u64).into_par_iter().map(&f).collect()
    } else {
        (0..samples as u64).map(&f).collect()
    };
    let skipped = outcomes.iter().filter(|o| matches!(o, Outcome::Skip)).count();
    let failure = outcomes.into_iter().enumerate().find_map(|(i, o)| match o {
        Outcome::Fail(w) => Some((i as u64, w)),
        _ => None,
    });
    let (status, failing_sample, witness) = match failure {
        Some((i, w)) => (Status::Fail, Some(i), Some(w)),
        None => (Status::Pass, None, None),
    };
    AxiomReport {
        axiom,
        status,
        samples,
        seed,
        skipped,
        light_speed: None,
        failing_sample,
        witness,
    }
}

fn observer_list(model: &Model) -> Vec<(String, AffineMap)> {
    model
        .observers()
        .map(|(n, m)| (n.to_string(), m.clone()))
        .collect()
}

fn lookup<'a>(model: &'a Model, name: &str) -> Option<&'a AffineMap> {
    model.observer(name)
}

fn is_lightlike(x: &SpacetimeVec, y: &SpacetimeVec) -> bool {
    space_sq(x, y) == time_sep(x, y).square()
}

/// Both sides of AxPh for `m` at `(x, y)`: whether some photon of the model
/// (any slope-1 line, or any registered photon body) is coordinatized by `m`
/// at both points, and whether the pair is lightlike with `c = 1`.
fn axph_sides(model: &Model, m: &AffineMap, x: &SpacetimeVec, y: &SpacetimeVec) -> (bool, Option<String>, bool) {
    let lightlike = is_lightlike(x, y);
    let zx = m.apply(x).expect("dimension");
    let zy = m.apply(y).expect("dimension");
    let registered = model
        .photons()
        .find(|(_, p)| {
            let b = Body::Photon((*p).clone());
            worldview(m, &b, x) && worldview(m, &b, y)
        })
        .map(|(n, _)| n.to_string());
    let exists = is_lightlike(&zx, &zy) || registered.is_some();
    (exists, registered, lightlike)
}

/// AxPh: for every observer, a photon joins two events exactly when they are
/// lightlike-separated with light speed 1.
pub fn check_axph(model: &Model, samples: usize, seed: u64) -> AxiomReport {
    check_axph_with(model, samples, seed, true)
}

fn check_axph_with(model: &Model, samples: usize, seed: u64, parallel: bool) -> AxiomReport {
    let d = model.dimension();
    let observers = observer_list(model);
    let photons: Vec<Photon> = model.photons().map(|(_, p)| p.clone()).collect();
    let mut report = run_samples(Axiom::AxPh, samples, seed, parallel, |i| {
        let mut rng = sample_rng(seed, Axiom::AxPh, i);
        let (name, m) = &observers[i as usize % observers.len()];
        let case = (i as usize / observers.len()) % 3;
        let x = point(&mut rng, d);
        let on_photon = (case == 2 && !photons.is_empty())
            .then(|| {
                let p = &photons[rng.random_range(0..photons.len())];
                let wl = worldline(m, &Body::Photon(p.clone())).ok()?;
                let s = rational(&mut rng);
                let t = nonzero_rational(&mut rng);
                Some((
                    wl.anchor() + &wl.direction().scale(&s),
                    wl.anchor() + &wl.direction().scale(&(&s + &t)),
                ))
            })
            .flatten();
        let (x, y) = match (case, on_photon) {
            (_, Some(pair)) => pair,
            (1, _) => {
                let u = unit_vector(&mut rng, d - 1);
                let step = SpacetimeVec::from_time_space(Rational::one(), u.coords());
                let y = &x + &step.scale(&nonzero_rational(&mut rng));
                (x, y)
            }
            _ => {
                let y = point(&mut rng, d);
                (x, y)
            }
        };
        let (exists, photon, lightlike) = axph_sides(model, m, &x, &y);
        if exists == lightlike {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness::ConeMismatch {
                observer: name.clone(),
                x,
                y,
                photon,
                photon_exists: exists,
                lightlike,
            })
        }
    });
    if report.passed() {
        // c_m from the worldline of the photon through the origin along the
        // first spatial axis, for each invertible observer.
        let mut dir = vec![Rational::zero(); d];
        dir[0] = Rational::one();
        dir[1] = Rational::one();
        let probe = Body::Photon(
            Photon::from_line(Line::new(SpacetimeVec::origin(d), SpacetimeVec::new(dir)).expect("dim"))
                .expect("slope 1"),
        );
        let speeds: Vec<Rational> = observers
            .iter()
            .filter_map(|(_, m)| worldline(m, &probe).ok()?.speed_sq())
            .collect();
        if speeds.iter().all(|c| *c == Rational::one()) {
            report.light_speed = Some(Rational::one());
        }
    }
    report
}

/// AxOField over the rationals.
pub fn check_axofield(samples: usize, seed: u64) -> AxiomReport {
    check_axofield_for(&RationalField, samples, seed)
}

/// AxOField against arbitrary field operations; used with broken fixtures to
/// test the harness itself.
pub fn check_axofield_for<F: OrderedField>(field: &F, samples: usize, seed: u64) -> AxiomReport {
    run_samples(Axiom::AxOField, samples, seed, true, |i| {
        match field::check_field_sample(field, seed, i) {
            None => Outcome::Pass,
            Some((law, values)) => Outcome::Fail(Witness::FieldLaw { law, values }),
        }
    })
}

/// AxEv: for every pair of observers and every `x` there is `y` with
/// `ev_m(x) = ev_k(y)`; `y` is taken to be `w_mk(x)`.
pub fn check_axev(model: &Model, samples: usize, seed: u64) -> AxiomReport {
    check_axev_with(model, samples, seed, true)
}

fn check_axev_with(model: &Model, samples: usize, seed: u64, parallel: bool) -> AxiomReport {
    let d = model.dimension();
    let observers = observer_list(model);
    let pairs = observers.len() * observers.len();
    run_samples(Axiom::AxEv, samples, seed, parallel, |i| {
        let mut rng = sample_rng(seed, Axiom::AxEv, i);
        let p = i as usize % pairs;
        let (mn, m) = &observers[p / observers.len()];
        let (kn, k) = &observers[p % observers.len()];
        let x = point(&mut rng, d);
        let y = match worldview_transform(m, k) {
            Ok(w) => w.apply(&x).expect("dimension"),
            Err(_) => {
                let z = &m.apply(&x).expect("dimension") - &k.translation;
                match k.linear.solve(&z) {
                    Some(y) => y,
                    None => {
                        return Outcome::Fail(Witness::NoMatchingEvent {
                            m: mn.clone(),
                            k: kn.clone(),
                            x,
                        })
                    }
                }
            }
        };
        if model.events_agree(m, &x, k, &y) {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness::EventMismatch {
                m: mn.clone(),
                k: kn.clone(),
                x,
                y,
            })
        }
    })
}

/// AxSelf: every observer sees itself exactly on its time axis.
pub fn check_axself(model: &Model, samples: usize, seed: u64) -> AxiomReport {
    check_axself_with(model, samples, seed, true)
}

fn check_axself_with(model: &Model, samples: usize, seed: u64, parallel: bool) -> AxiomReport {
    let d = model.dimension();
    let observers = observer_list(model);
    run_samples(Axiom::AxSelf, samples, seed, parallel, |i| {
        let mut rng = sample_rng(seed, Axiom::AxSelf, i);
        let (name, m) = &observers[i as usize % observers.len()];
        let on_axis = (i as usize / observers.len()) % 2 == 0;
        let x = if on_axis {
            SpacetimeVec::unit_time(d).scale(&rational(&mut rng))
        } else {
            off_axis_point(&mut rng, d)
        };
        let seen = worldview(m, &Body::Observer(m.clone()), &x);
        let expected = x.spatial().iter().all(Rational::is_zero);
        if seen == expected {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness::SelfMismatch {
                observer: name.clone(),
                x,
                coordinatized: seen,
            })
        }
    })
}

fn light_speed_clause(m: &AffineMap) -> bool {
    let d = m.dim();
    let o = SpacetimeVec::origin(d);
    let mut c = vec![Rational::zero(); d];
    c[0] = Rational::one();
    c[1] = Rational::one();
    let p = SpacetimeVec::new(c);
    is_lightlike(&m.apply(&o).expect("dim"), &m.apply(&p).expect("dim"))
}

/// Events simultaneous for both `m` and `k` (through `w = w_mk`): a random
/// nonzero `delta` with `delta_1 = 0` and `(w_lin delta)_1 = 0`, or `None`
/// when only `delta = 0` qualifies.
fn simultaneous_step<R: Rng>(rng: &mut R, w: &AffineMap) -> Option<SpacetimeVec> {
    let d = w.dim();
    let mut e1 = vec![Rational::zero(); d];
    e1[0] = Rational::one();
    let rows = vec![e1, w.linear.rows().swap_remove(0)];
    let basis = RationalMatrix::nullspace_of_rows(&rows, d);
    if basis.is_empty() {
        return None;
    }
    let mut delta = SpacetimeVec::origin(d);
    for b in &basis {
        delta = &delta + &SpacetimeVec::new(b.clone()).scale(&nonzero_rational(rng));
    }
    Some(delta)
}

/// AxSymD: observers agree on spatial distances of events simultaneous for
/// both, and every observer sees light move at speed 1.
pub fn check_axsymd(model: &Model, samples: usize, seed: u64) -> AxiomReport {
    check_axsymd_with(model, samples, seed, true)
}

fn check_axsymd_with(model: &Model, samples: usize, seed: u64, parallel: bool) -> AxiomReport {
    let d = model.dimension();
    let observers = observer_list(model);
    let pairs = observers.len() * observers.len();
    run_samples(Axiom::AxSymD, samples, seed, parallel, |i| {
        let mut rng = sample_rng(seed, Axiom::AxSymD, i);
        let (on, om) = &observers[i as usize % observers.len()];
        if !light_speed_clause(om) {
            return Outcome::Fail(Witness::LightSpeed {
                observer: on.clone(),
            });
        }
        let p = i as usize % pairs;
        let (mn, m) = &observers[p / observers.len()];
        let (kn, k) = &observers[p % observers.len()];
        let Ok(w) = worldview_transform(m, k) else {
            return Outcome::Skip;
        };
        let Some(delta) = simultaneous_step(&mut rng, &w) else {
            return Outcome::Skip;
        };
        let x = point(&mut rng, d);
        let y = &x + &delta;
        let solve = |z: &SpacetimeVec| k.linear.solve(&(&m.apply(z).expect("dim") - &k.translation));
        let (Some(xp), Some(yp)) = (solve(&x), solve(&y)) else {
            return Outcome::Skip;
        };
        debug_assert_eq!(xp.time(), yp.time());
        let sm = space_sq(&x, &y);
        let sk = space_sq(&xp, &yp);
        if sm == sk {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness::DistanceMismatch {
                m: mn.clone(),
                k: kn.clone(),
                x,
                y,
                x_prime: xp,
                y_prime: yp,
                space_sq_m: sm,
                space_sq_k: sk,
            })
        }
    })
}

/// `10^-(2 + i mod 5)`: tolerances from 1/100 down to 1/10^6.
fn thexp_eps(i: u64) -> Rational {
    let mut eps = q(1, 100);
    for _ in 0..(i % 5) {
        eps = eps / Rational::from(10);
    }
    eps
}

/// AxThExp-: for sampled observers `m` and sub-light velocities, a witness
/// observer exists and re-verifies exactly.
pub fn check_axthexp_minus(model: &Model, samples: usize, seed: u64) -> AxiomReport {
    check_axthexp_with(model, samples, seed, true)
}

fn thexp_sample(model: &Model, seed: u64, i: u64) -> (usize, Vec<Rational>, Rational, u64) {
    let observers = model.observers().count();
    let mut rng = sample_rng(seed, Axiom::AxThExpMinus, i);
    let v = sublight_velocity(&mut rng, model.dimension() - 1);
    let sub_seed = rng.random();
    (i as usize % observers, v, thexp_eps(i), sub_seed)
}

fn check_axthexp_with(model: &Model, samples: usize, seed: u64, parallel: bool) -> AxiomReport {
    let observers = observer_list(model);
    run_samples(Axiom::AxThExpMinus, samples, seed, parallel, |i| {
        let (idx, v, eps, sub_seed) = thexp_sample(model, seed, i);
        let (name, m) = &observers[idx];
        let result = witness_axthexp_minus(model, m, &v, &eps, sub_seed)
            .map_err(|e| e.to_string())
            .and_then(|w| w.verify(m, &v, &eps));
        match result {
            Ok(()) => Outcome::Pass,
            Err(reason) => Outcome::Fail(Witness::ThExp {
                m: name.clone(),
                velocity: v,
                eps,
                seed: sub_seed,
                reason,
            }),
        }
    })
}

/// Runs the configured checkers in order.
pub fn run_suite(model: &Model, config: &CheckConfig) -> Vec<AxiomReport> {
    let p = config.parallel;
    config
        .axioms
        .iter()
        .map(|&a| {
            let n = config.samples_for(a);
            let s = config.seed;
            match a {
                Axiom::AxPh => check_axph_with(model, n, s, p),
                Axiom::AxOField => check_axofield(n, s),
                Axiom::AxEv => check_axev_with(model, n, s, p),
                Axiom::AxSelf => check_axself_with(model, n, s, p),
                Axiom::AxSymD => check_axsymd_with(model, n, s, p),
                Axiom::AxThExpMinus => check_axthexp_with(model, n, s, p),
            }
        })
        .collect()
}

impl Witness {
    /// Re-evaluates the violated predicate on `model`; `true` when the
    /// violation reproduces.
    pub fn replay(&self, model: &Model) -> bool {
        match self {
            Witness::ConeMismatch { observer, x, y, .. } => lookup(model, observer)
                .is_some_and(|m| {
                    let (exists, _, lightlike) = axph_sides(model, m, x, y);
                    exists != lightlike
                }),
            Witness::FieldLaw { law, values } => {
                let [x, y, z] = values;
                !law.holds(&RationalField, x, y, z)
            }
            Witness::NoMatchingEvent { m, k, x } => match (lookup(model, m), lookup(model, k)) {
                (Some(m), Some(k)) => {
                    let z = &m.apply(x).expect("dim") - &k.translation;
                    k.linear.solve(&z).is_none()
                }
                _ => false,
            },
            Witness::EventMismatch { m, k, x, y } => match (lookup(model, m), lookup(model, k)) {
                (Some(m), Some(k)) => !model.events_agree(m, x, k, y),
                _ => false,
            },
            Witness::SelfMismatch { observer, x, .. } => lookup(model, observer).is_some_and(|m| {
                let seen = worldview(m, &Body::Observer(m.clone()), x);
                seen != x.spatial().iter().all(Rational::is_zero)
            }),
            Witness::DistanceMismatch {
                m,
                k,
                x,
                y,
                x_prime,
                y_prime,
                ..
            } => match (lookup(model, m), lookup(model, k)) {
                (Some(m), Some(k)) => {
                    x.time() == y.time()
                        && x_prime.time() == y_prime.time()
                        && model.events_agree(m, x, k, x_prime)
                        && model.events_agree(m, y, k, y_prime)
                        && space_sq(x, y) != space_sq(x_prime, y_prime)
                }
                _ => false,
            },
            Witness::LightSpeed { observer } => {
                lookup(model, observer).is_some_and(|m| !light_speed_clause(m))
            }
            Witness::ThExp {
                m,
                velocity,
                eps,
                seed,
                ..
            } => lookup(model, m).is_some_and(|mm| {
                witness_axthexp_minus(model, mm, velocity, eps, *seed)
                    .map_err(|e| e.to_string())
                    .and_then(|w| w.verify(mm, velocity, eps))
                    .is_err()
            }),
        }
    }
}
