//! Exact enumeration of permutations whose cycle lengths lie in a prescribed
//! set (primarily the primes), together with numerical probes of the
//! generating functions near `z = 1`, the Mertens-type constants, and
//! reproducible Monte Carlo estimates.
//!
//! Modules:
//! - [`primes`]: sieving, `π(y)`, `p_k`, Mertens sums/products and the constant `c`.
//! - [`counting`]: exact counts `P_{n,A}`, independent oracles, fixed-point decimals,
//!   partial sums and coefficient-inequality scans.
//! - [`asymptotics`]: probes of `φ`, `φ′`, `f` near `z = 1`, the Lanczos `Γ`,
//!   the density-based estimator and the limit-ratio table.
//! - [`sampling`]: uniform and exact `A`-restricted permutation samplers and
//!   seeded parallel Monte Carlo estimates.

pub mod asymptotics;
pub mod counting;
mod error;
pub mod io;
pub mod primes;
pub mod sampling;

pub use error::{Error, Result};
