//! Large sieve machinery for sparse sets of moduli.
//!
//! The crate evaluates both sides of large sieve inequalities when the
//! moduli run over a sparse set (primes, perfect squares, or an arbitrary
//! user-supplied set): the exponential-sum left-hand side over Farey
//! fractions, the window-maximum counts `A_t(u, k, l)`, the congruence
//! weights `δ_t(k, l)`, Farey crowding statistics `P(α)` and `K(Δ)`, and
//! right-hand-side evaluators for the classical bound, Zhao's square-moduli
//! bound, and the sharpened sparse-moduli bounds.
//!
//! All counting quantities are exact (integer or rational arithmetic);
//! floating point only enters through the exponential sums and the
//! closed-form bound formulas.

pub mod bounds;
pub mod expsum;
pub mod farey;
pub mod modmath;
pub mod moduli;

use thiserror::Error;

/// Default work guard: enumeration and direct-evaluation paths refuse
/// instances whose Farey fraction count Σ φ(q) exceeds this.
pub const DEFAULT_MAX_WORK: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arguments not coprime: gcd({a}, {m}) > 1")]
    NotCoprime { a: u64, m: u64 },
    #[error("capacity exceeded: instance needs {required} units, limit {limit}")]
    CapacityExceeded { required: u64, limit: u64 },
    #[error("invalid moduli file: {0}")]
    InvalidModuliFile(String),
    #[error("invalid coefficient file: {0}")]
    InvalidCoefficientFile(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
