use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::AdmissibleSet;

/// Multiset of cycle lengths: length `k` -> multiplicity `m_k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycleType {
    parts: BTreeMap<usize, usize>,
}

impl CycleType {
    /// Builds a cycle type from cycle lengths; zero lengths are rejected with `None`.
    pub fn from_lengths<I: IntoIterator<Item = usize>>(lengths: I) -> Option<Self> {
        let mut parts = BTreeMap::new();
        for k in lengths {
            if k == 0 {
                return None;
            }
            *parts.entry(k).or_insert(0) += 1;
        }
        Some(CycleType { parts })
    }

    /// Total size `Σ k·m_k`.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|(k, m)| k * m).sum()
    }

    pub fn parts(&self) -> &BTreeMap<usize, usize> {
        &self.parts
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.get(&k).copied().unwrap_or(0)
    }

    pub fn cycle_count(&self) -> usize {
        self.parts.values().sum()
    }

    pub fn all_in(&self, set: &AdmissibleSet) -> bool {
        self.parts.keys().all(|&k| set.contains(k as u64))
    }

    /// Number of permutations of `[n]` with this type: `n! / Π k^{m_k} m_k!`.
    pub fn permutation_count(&self) -> BigUint {
        let mut denom = BigUint::one();
        for (&k, &m) in &self.parts {
            denom *= BigUint::from(k).pow(m as u32) * factorial(m);
        }
        factorial(self.n()) / denom
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        let items: Vec<String> = self.parts.iter().map(|(k, m)| format!("{k}:{m}")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// `n!`
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}
