//! Prime tables and the Mertens-type quantities built on them.

mod dump;
pub mod sieve;

use serde::Serialize;

use crate::{Error, Result};

/// Euler's constant to 20 significant digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default sieve limit.
pub const DEFAULT_LIMIT: u64 = 1_000_000;

/// Largest limit accepted by [`PrimeTable::build`].
pub const MAX_LIMIT: u64 = 100_000_000;

/// Limits above this switch from the plain sieve to the segmented one.
const PLAIN_SIEVE_MAX: u64 = 1 << 22;

/// Immutable ascending list of the primes up to `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieves all primes `<= limit` with the default memory budget.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_budget(limit, MAX_LIMIT)
    }

    pub fn build_with_budget(limit: u64, max_limit: u64) -> Result<Self> {
        if limit > max_limit {
            return Err(Error::Resource {
                what: "prime limit",
                requested: limit,
                max: max_limit,
                hint: format!("the sieve supports limits up to {max_limit}"),
            });
        }
        let bits = if limit <= PLAIN_SIEVE_MAX {
            sieve::plain(limit)
        } else {
            sieve::segmented(limit)
        };
        Ok(PrimeTable {
            limit,
            primes: bits.to_primes(),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn count(&self) -> usize {
        self.primes.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// π(y): the number of primes `<= y`.
    pub fn prime_count(&self, y: f64) -> Result<usize> {
        if y.is_nan() || y < 0.0 {
            return Err(Error::Domain(format!("prime_count needs y >= 0, got {y}")));
        }
        self.check_range(y)?;
        let floor = y.floor() as u64;
        Ok(self.primes.partition_point(|&p| p <= floor))
    }

    /// The `k`-th smallest prime, 1-based.
    pub fn nth_prime(&self, k: usize) -> Result<u64> {
        if k == 0 || k > self.primes.len() {
            return Err(Error::OutOfRange {
                what: "prime index k",
                value: k.to_string(),
                max: self.primes.len().to_string(),
            });
        }
        Ok(self.primes[k - 1])
    }

    /// Σ_{p<=y} 1/p, accumulated in ascending order of p.
    pub fn mertens_sum(&self, y: f64) -> Result<f64> {
        Ok(self.upto(y)?.iter().map(|&p| 1.0 / p as f64).sum())
    }

    /// Π_{p<=y} (1 - 1/p).
    pub fn mertens_product(&self, y: f64) -> Result<f64> {
        Ok(self.upto(y)?.iter().map(|&p| 1.0 - 1.0 / p as f64).product())
    }

    /// γ + Σ_{p<=limit} (log(1 - 1/p) + 1/p), the truncated Mertens constant.
    ///
    /// The omitted tail is about `-1/(2 N log N)`, i.e. below `4e-8` at `N = 10^6`.
    pub fn mertens_constant(&self) -> Result<MertensReport> {
        let y = self.limit as f64;
        let (sum, product) = (self.mertens_sum(y)?, self.mertens_product(y)?);
        let correction: f64 = self
            .primes
            .iter()
            .map(|&p| {
                let inv = 1.0 / p as f64;
                (-inv).ln_1p() + inv
            })
            .sum();
        Ok(MertensReport {
            limit: self.limit,
            sum_reciprocals: sum,
            product_one_minus: product,
            constant_c_estimate: EULER_GAMMA + correction,
            gamma_used: EULER_GAMMA,
        })
    }

    fn upto(&self, y: f64) -> Result<&[u64]> {
        if !(y >= 2.0) {
            return Err(Error::Domain(format!("Mertens quantities need y >= 2, got {y}")));
        }
        self.check_range(y)?;
        let end = self.primes.partition_point(|&p| (p as f64) <= y);
        Ok(&self.primes[..end])
    }

    fn check_range(&self, y: f64) -> Result<()> {
        if y > self.limit as f64 {
            return Err(Error::OutOfRange {
                what: "y",
                value: y.to_string(),
                max: self.limit.to_string(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MertensReport {
    pub limit: u64,
    pub sum_reciprocals: f64,
    pub product_one_minus: f64,
    pub constant_c_estimate: f64,
    pub gamma_used: f64,
}
