use std::fmt;
use std::str::FromStr;

use crate::primes::sieve;
use crate::{Error, Result};

/// Largest element allowed in an explicit admissible list.
pub const EXPLICIT_MAX: u64 = 1_000_000;

/// A set of admissible cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibleSet {
    /// The primes.
    Primes,
    /// The primes together with 1 (fixed points allowed).
    PrimesWithOne,
    /// The odd positive integers.
    Odd,
    /// Every positive integer.
    All,
    /// A finite ascending list of distinct positive integers.
    Explicit(Vec<u64>),
}

impl AdmissibleSet {
    pub fn explicit(mut members: Vec<u64>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        match (members.first(), members.last()) {
            (None, _) => Err(Error::Domain("explicit set must not be empty".into())),
            (Some(0), _) => Err(Error::Domain("cycle lengths must be positive".into())),
            (_, Some(&max)) if max > EXPLICIT_MAX => Err(Error::OutOfRange {
                what: "explicit set element",
                value: max.to_string(),
                max: EXPLICIT_MAX.to_string(),
            }),
            _ => Ok(AdmissibleSet::Explicit(members)),
        }
    }

    pub fn id(&self) -> String {
        match self {
            AdmissibleSet::Primes => "primes".into(),
            AdmissibleSet::PrimesWithOne => "primes1".into(),
            AdmissibleSet::Odd => "odd".into(),
            AdmissibleSet::All => "all".into(),
            AdmissibleSet::Explicit(m) => {
                let items: Vec<String> = m.iter().map(u64::to_string).collect();
                items.join(",")
            }
        }
    }

    pub fn contains(&self, k: u64) -> bool {
        match self {
            AdmissibleSet::Primes => is_prime(k),
            AdmissibleSet::PrimesWithOne => k == 1 || is_prime(k),
            AdmissibleSet::Odd => k % 2 == 1,
            AdmissibleSet::All => k >= 1,
            AdmissibleSet::Explicit(m) => m.binary_search(&k).is_ok(),
        }
    }

    /// Natural density ρ; finite lists have density 0.
    pub fn density(&self) -> Option<f64> {
        Some(match self {
            AdmissibleSet::Primes | AdmissibleSet::PrimesWithOne | AdmissibleSet::Explicit(_) => 0.0,
            AdmissibleSet::Odd => 0.5,
            AdmissibleSet::All => 1.0,
        })
    }

    /// The set with 1 added.
    pub fn with_one(&self) -> Self {
        match self {
            AdmissibleSet::Primes => AdmissibleSet::PrimesWithOne,
            AdmissibleSet::Explicit(m) => {
                let mut m = m.clone();
                m.push(1);
                AdmissibleSet::explicit(m).expect("adding 1 keeps the list valid")
            }
            other => other.clone(),
        }
    }

    /// Members of `A ∩ [1, n]`, ascending.
    pub fn members_upto(&self, n: u64) -> Vec<u64> {
        match self {
            AdmissibleSet::Primes => sieve::segmented(n).to_primes(),
            AdmissibleSet::PrimesWithOne => {
                let mut v = sieve::segmented(n).to_primes();
                if n >= 1 {
                    v.insert(0, 1);
                }
                v
            }
            AdmissibleSet::Odd => (1..=n).step_by(2).collect(),
            AdmissibleSet::All => (1..=n).collect(),
            AdmissibleSet::Explicit(m) => m.iter().copied().take_while(|&k| k <= n).collect(),
        }
    }

    /// `flags[k]` is true iff `k ∈ A`, for `0 <= k <= n`.
    pub fn membership_upto(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n + 1];
        for k in self.members_upto(n as u64) {
            flags[k as usize] = true;
        }
        flags
    }

    /// `|A ∩ [n]| / n`.
    pub fn empirical_density(&self, n: u64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        self.members_upto(n).len() as f64 / n as f64
    }

    /// `|{1 <= k <= m-1 : k ∈ A, m-k ∈ A}| / n`.
    pub fn pair_density(&self, m: u64, n: u64) -> Result<f64> {
        if m == 0 || n == 0 {
            return Err(Error::Domain("pair_density needs m, n >= 1".into()));
        }
        let flags = self.membership_upto(m as usize);
        let hits = (1..m as usize).filter(|&k| flags[k] && flags[m as usize - k]).count();
        Ok(hits as f64 / n as f64)
    }
}

impl fmt::Display for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for AdmissibleSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "primes" => Ok(AdmissibleSet::Primes),
            "primes1" => Ok(AdmissibleSet::PrimesWithOne),
            "odd" => Ok(AdmissibleSet::Odd),
            "all" => Ok(AdmissibleSet::All),
            other => {
                let members: std::result::Result<Vec<u64>, _> =
                    other.split(',').map(|t| t.trim().parse::<u64>()).collect();
                match members {
                    Ok(m) if !m.is_empty() => AdmissibleSet::explicit(m),
                    _ => Err(Error::UnknownSet(s.to_string())),
                }
            }
        }
    }
}

/// Deterministic trial division; used for single membership queries.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BUILTINS: [AdmissibleSet; 4] =
        [AdmissibleSet::Primes, AdmissibleSet::PrimesWithOne, AdmissibleSet::Odd, AdmissibleSet::All];

    #[test]
    fn members_and_density() {
        assert_eq!(AdmissibleSet::Primes.members_upto(10), vec![2, 3, 5, 7]);
        assert_eq!(AdmissibleSet::Primes.empirical_density(10), 0.4);
        assert_eq!(AdmissibleSet::All.members_upto(5), vec![1, 2, 3, 4, 5]);
        assert_eq!(AdmissibleSet::All.empirical_density(5), 1.0);
        assert_eq!(AdmissibleSet::Primes.members_upto(100).len(), 25);
        assert_eq!(AdmissibleSet::Primes.empirical_density(100), 0.25);
        assert_eq!(AdmissibleSet::PrimesWithOne.members_upto(5), vec![1, 2, 3, 5]);
        assert!(AdmissibleSet::Primes.members_upto(0).is_empty());
        assert!(AdmissibleSet::PrimesWithOne.members_upto(0).is_empty());
    }

    #[test]
    fn pair_density_examples() {
        assert!((AdmissibleSet::All.pair_density(100, 100).unwrap() - 0.99).abs() < 1e-15);
        assert_eq!(AdmissibleSet::Odd.pair_density(100, 100).unwrap(), 0.5);
        assert_eq!(AdmissibleSet::Odd.pair_density(101, 100).unwrap(), 0.0);
        assert_eq!(AdmissibleSet::Odd.pair_density(2, 2).unwrap(), 0.5);
        assert!(AdmissibleSet::Odd.pair_density(0, 2).is_err());
    }

    #[test]
    fn parse_and_ids() {
        for s in &BUILTINS {
            assert_eq!(&s.id().parse::<AdmissibleSet>().unwrap(), s);
        }
        let e: AdmissibleSet = "5, 2,2".parse().unwrap();
        assert_eq!(e, AdmissibleSet::Explicit(vec![2, 5]));
        assert_eq!(e.id(), "2,5");
        assert!(matches!("evens".parse::<AdmissibleSet>(), Err(Error::UnknownSet(_))));
        assert!("0,3".parse::<AdmissibleSet>().is_err());
        assert!("1,1000001".parse::<AdmissibleSet>().is_err());
        assert_eq!(e.with_one(), AdmissibleSet::Explicit(vec![1, 2, 5]));
        assert_eq!(AdmissibleSet::Primes.with_one(), AdmissibleSet::PrimesWithOne);
    }

    proptest! {
        #[test]
        fn members_agree_with_predicate(n in 0u64..3_000) {
            let mut sets = BUILTINS.to_vec();
            sets.push(AdmissibleSet::explicit(vec![1, 4, 9, 16, 2_500]).unwrap());
            for set in &sets {
                let listed = set.members_upto(n);
                let filtered: Vec<u64> = (1..=n).filter(|&k| set.contains(k)).collect();
                prop_assert_eq!(listed, filtered);
            }
        }
    }
}
