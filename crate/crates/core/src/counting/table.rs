use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::AdmissibleSet;
use crate::{Error, Result};

/// Default exact-arithmetic budget for [`CountTable::build`].
pub const DEFAULT_MAX_N: usize = 3000;

/// Exact counts `P_{n,A}` for `n = 0..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    set: AdmissibleSet,
    members: Vec<bool>,
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn build(set: &AdmissibleSet, max_n: usize) -> Result<Self> {
        Self::build_with_budget(set, max_n, DEFAULT_MAX_N)
    }

    pub fn build_with_budget(set: &AdmissibleSet, max_n: usize, budget: usize) -> Result<Self> {
        check_budget(max_n, budget)?;
        let mut table = CountTable {
            set: set.clone(),
            members: set.membership_upto(max_n),
            counts: vec![BigUint::one()],
        };
        table.grow(max_n);
        Ok(table)
    }

    /// Wraps counts loaded from elsewhere; callers are responsible for validation.
    pub(crate) fn from_counts(set: &AdmissibleSet, counts: Vec<BigUint>) -> Self {
        CountTable {
            set: set.clone(),
            members: set.membership_upto(counts.len().saturating_sub(1)),
            counts,
        }
    }

    /// Extends the table to `max_n` (no-op when already that long).
    pub fn extend_to(&mut self, max_n: usize, budget: usize) -> Result<()> {
        check_budget(max_n, budget)?;
        if max_n > self.max_n() {
            self.members = self.set.membership_upto(max_n);
            self.grow(max_n);
        }
        Ok(())
    }

    fn grow(&mut self, max_n: usize) {
        self.counts.reserve(max_n + 1 - self.counts.len());
        while self.counts.len() <= max_n {
            let next = next_count(&self.members, &self.counts);
            self.counts.push(next);
        }
    }

    pub fn set(&self) -> &AdmissibleSet {
        &self.set
    }

    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, n: usize) -> Result<&BigUint> {
        self.counts.get(n).ok_or_else(|| Error::OutOfRange {
            what: "n",
            value: n.to_string(),
            max: self.max_n().to_string(),
        })
    }

    /// Recurrence terms for the cycle through the smallest element when `m`
    /// elements remain: `(k, C(m-1,k-1)·(k-1)!·P_{m-k})` for admissible `k <= m`,
    /// ascending in `k`. They sum to `P_m`.
    pub fn weights(&self, m: usize) -> Result<Vec<(usize, BigUint)>> {
        self.get(m)?;
        let mut out = Vec::new();
        let mut falling = BigUint::one(); // (m-1)!/(m-k)!
        for k in 1..=m {
            if k > 1 {
                falling *= (m - k + 1) as u64;
            }
            if self.members[k] {
                out.push((k, &falling * &self.counts[m - k]));
            }
        }
        Ok(out)
    }
}

fn check_budget(max_n: usize, budget: usize) -> Result<()> {
    if max_n > budget {
        return Err(Error::Resource {
            what: "n",
            requested: max_n as u64,
            max: budget as u64,
            hint: "load a count cache or request a smaller n".into(),
        });
    }
    Ok(())
}

/// `P_n = Σ_{k∈A, k<=n} (n-1)!/(n-k)! · P_{n-k}` for `n = prefix.len()`, given
/// `P_0..P_{n-1}` in `prefix` and membership flags covering `n`.
///
/// Evaluated in Horner form from the largest `k` down so that each step is a
/// big-by-word multiplication.
pub(crate) fn next_count(members: &[bool], prefix: &[BigUint]) -> BigUint {
    let n = prefix.len();
    let mut acc = BigUint::zero();
    for k in (1..=n).rev() {
        if !acc.is_zero() {
            acc *= (n - k) as u64;
        }
        if members[k] {
            acc += &prefix[n - k];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::cycle_type::factorial;

    fn ints(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn golden_sequences() {
        let p = CountTable::build(&AdmissibleSet::Primes, 7).unwrap();
        assert_eq!(p.counts(), ints(&[1, 0, 1, 2, 3, 44, 55, 1434]).as_slice());
        let p1 = CountTable::build(&AdmissibleSet::PrimesWithOne, 8).unwrap();
        assert_eq!(p1.counts(), ints(&[1, 1, 2, 6, 18, 90, 420, 2940, 19740]).as_slice());
    }

    #[test]
    fn all_gives_factorials() {
        let t = CountTable::build(&AdmissibleSet::All, 60).unwrap();
        for n in 0..=60 {
            assert_eq!(t.counts()[n], factorial(n));
        }
    }

    #[test]
    fn empty_and_budget() {
        let t = CountTable::build(&AdmissibleSet::Primes, 0).unwrap();
        assert_eq!(t.counts(), &[BigUint::one()]);
        let err = CountTable::build_with_budget(&AdmissibleSet::Primes, 11, 10).unwrap_err();
        assert!(matches!(err, Error::Resource { max: 10, .. }));
        assert!(err.to_string().contains("cache"));
        assert!(CountTable::build(&AdmissibleSet::Primes, DEFAULT_MAX_N + 1).is_err());
    }

    #[test]
    fn extend_matches_fresh_build() {
        let mut t = CountTable::build(&AdmissibleSet::Odd, 10).unwrap();
        t.extend_to(40, DEFAULT_MAX_N).unwrap();
        assert_eq!(t, CountTable::build(&AdmissibleSet::Odd, 40).unwrap());
        assert!(t.get(41).is_err());
    }

    #[test]
    fn weights_sum_to_count() {
        for set in [AdmissibleSet::Primes, AdmissibleSet::PrimesWithOne, AdmissibleSet::Odd, AdmissibleSet::All] {
            let t = CountTable::build(&set, 150).unwrap();
            assert!(t.weights(0).unwrap().is_empty());
            for m in 1..=150 {
                let total: BigUint = t.weights(m).unwrap().into_iter().map(|(_, w)| w).sum();
                assert_eq!(&total, t.get(m).unwrap(), "{set} m={m}");
            }
        }
        let t = CountTable::build(&AdmissibleSet::Primes, 6).unwrap();
        // 6 = 3 + 3 (40) and 2 + 2 + 2 (15): cycle through 1 has length 2 or 3.
        let nonzero: Vec<_> = t.weights(6).unwrap().into_iter().filter(|(_, w)| !w.is_zero()).collect();
        assert_eq!(nonzero, vec![(2, BigUint::from(15u32)), (3, BigUint::from(40u32))]);
    }

    #[test]
    fn set_monotonicity() {
        let n = 300;
        let p = CountTable::build(&AdmissibleSet::Primes, n).unwrap();
        let p1 = CountTable::build(&AdmissibleSet::PrimesWithOne, n).unwrap();
        let mut fact = BigUint::one();
        for k in 0..=n {
            if k > 0 {
                fact *= k as u64;
            }
            assert!(p.counts()[k] <= p1.counts()[k] && p1.counts()[k] <= fact, "n={k}");
        }
    }
}
