//! Special-relativistic kinematics over the field of rational numbers.
//!
//! The crate builds a coordinate model of special relativity in which every
//! quantity is an exact rational: inertial observers are rational Poincaré
//! maps, photons are rational lines of slope one. On top of that it provides
//! certified approximation of real boosts, rotations and Poincaré maps by
//! rational ones, and a sampling harness that checks each kinematic axiom on
//! a concrete model.
//!
//! - [`exact`]: rationals and interval enclosures
//! - [`linalg`]: vectors, matrices, Lorentz and Poincaré maps
//! - [`sphere`]: rational points on unit spheres
//! - [`approx`]: certified rational approximations
//! - [`model`]: bodies, worldview relation, worldview transformations
//! - [`axioms`]: axiom checkers and witnesses
//!
//! ```
//! use ratrel_core::approx::approx_boost;
//! use ratrel_core::{q, BoostSpec};
//!
//! let spec = BoostSpec::new(q(1, 3)).unwrap();
//! let (_speed, cert) = approx_boost(&spec, &q(1, 1_000_000), 4).unwrap();
//! assert!(cert.error_bound < q(1, 1_000_000));
//! assert!(cert.output.is_lorentz());
//! ```

pub mod approx;
pub mod axioms;
pub mod exact;
pub mod linalg;
pub mod model;
pub mod sphere;

pub use approx::{ApproxCertificate, ApproxError, BoostSpec, OrthogonalSpec, PoincareSpec, PythagoreanSpeed};
pub use axioms::{AxiomReport, CheckConfig};
pub use exact::{q, Rational, RationalInterval};
pub use linalg::{LorentzMatrix, PoincareMap, RationalMatrix, SpacetimeVec};
pub use model::{Body, Model};
pub use sphere::RationalSpherePoint;
