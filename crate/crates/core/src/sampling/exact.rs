//! Exactly uniform sampling from the permutations whose cycle lengths all lie in `A`.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use super::permutation::Permutation;
use crate::counting::CountTable;
use crate::{Error, Result};

/// Uniform integer in `[0, bound)` by rejection on the bit length of `bound`.
pub fn uniform_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    if bits <= 64 {
        let b = bound.iter_u64_digits().next().unwrap_or(0);
        return BigUint::from(rng.random_range(0..b));
    }
    let words = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (words as u64 - 1);
    let mask = if top_bits == 32 { u32::MAX } else { (1u32 << top_bits) - 1 };
    let mut digits = vec![0u32; words];
    loop {
        digits.iter_mut().for_each(|d| *d = rng.random());
        digits[words - 1] &= mask;
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Draws uniformly from `S_{n,A}` using exact cumulative weights taken from a count table.
#[derive(Debug, Clone)]
pub struct ExactSampler<'a> {
    table: &'a CountTable,
    n: usize,
    /// `cumulative[m]`: running sums of the weights for a remaining size `m`.
    cumulative: Vec<Vec<(usize, BigUint)>>,
}

impl<'a> ExactSampler<'a> {
    pub fn new(table: &'a CountTable, n: usize) -> Result<Self> {
        if table.get(n)?.is_zero() {
            return Err(Error::EmptySupport {
                set: table.set().id(),
                n,
            });
        }
        let mut cumulative = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = BigUint::zero();
            let steps = table
                .weights(m)?
                .into_iter()
                .map(|(k, w)| {
                    acc += w;
                    (k, acc.clone())
                })
                .collect::<Vec<_>>();
            debug_assert!(m == 0 || acc == table.counts()[m]);
            cumulative.push(steps);
        }
        Ok(ExactSampler { table, n, cumulative })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cumulative weights for a remaining size `m`; the last entry equals `P_{m,A}`.
    pub fn cumulative_weights(&self, m: usize) -> &[(usize, BigUint)] {
        &self.cumulative[m]
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut image = vec![usize::MAX; self.n];
        let mut remaining: Vec<usize> = (0..self.n).collect();
        while !remaining.is_empty() {
            let m = remaining.len();
            let draw = uniform_below(&self.table.counts()[m], rng);
            let k = self.cumulative[m]
                .iter()
                .find(|(_, c)| &draw < c)
                .map(|&(k, _)| k)
                .expect("draw is below the total weight");
            let first = remaining.remove(0);
            let mut prev = first;
            for _ in 1..k {
                let next = remaining.remove(rng.random_range(0..remaining.len()));
                image[prev] = next;
                prev = next;
            }
            image[prev] = first;
        }
        Permutation::from_raw(image)
    }
}

/// One exact draw from `S_{n,A}`, where `A` is the table's set.
pub fn sample_a_permutation<R: Rng + ?Sized>(n: usize, counts: &CountTable, rng: &mut R) -> Result<Permutation> {
    Ok(ExactSampler::new(counts, n)?.sample(rng))
}
