//! Fixed inputs shared by the benchmarks, so numbers stay comparable across
//! runs.

use ratrel_core::{q, Rational};

/// Tolerances from coarse to fine.
pub fn tolerances() -> Vec<(&'static str, Rational)> {
    vec![("1e-2", q(1, 100)), ("1e-6", q(1, 1_000_000)), ("1e-9", q(1, 1_000_000_000))]
}

/// A speed whose square root of `1 - v^2` is irrational.
pub fn generic_speed() -> Rational {
    q(1, 2)
}

/// Velocity for observer benchmarks in dimension `d`.
pub fn generic_velocity(d: usize) -> Vec<Rational> {
    let base = [q(1, 2), q(1, 3), q(-1, 5), q(1, 7)];
    base.iter().take(d - 1).cloned().collect()
}

/// Direction for sphere benchmarks on `S^(n-1)`.
pub fn generic_direction(n: usize) -> Vec<Rational> {
    (0..n).map(|i| q(1 + i as i64, 1)).collect()
}
