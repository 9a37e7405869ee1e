//! Independent routes to `P_{n,A}` used to cross-check the recurrence.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::cycle_type::{factorial, CycleType};
use super::AdmissibleSet;
use crate::{Error, Result};

/// Default size limit for the cycle-type oracle.
pub const CYCLE_TYPE_MAX_N: usize = 120;

/// Largest `n` the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_N: usize = 9;

/// Largest number of explicit cycle types [`cycle_types`] will list.
pub const MAX_LISTED_TYPES: usize = 1_000_000;

/// `P_{n,A}` as `Σ n!/Π k^{m_k} m_k!` over cycle types with parts in `A`.
///
/// Types are grouped by the multiplicity of each admissible part, processed
/// from the largest part down with results memoized on (remaining size, part).
pub fn count_by_cycle_types(set: &AdmissibleSet, n: usize) -> Result<BigUint> {
    count_by_cycle_types_with_budget(set, n, CYCLE_TYPE_MAX_N)
}

pub fn count_by_cycle_types_with_budget(set: &AdmissibleSet, n: usize, budget: usize) -> Result<BigUint> {
    if n > budget {
        return Err(Error::Resource {
            what: "n",
            requested: n as u64,
            max: budget as u64,
            hint: "the cycle-type oracle only covers small n".into(),
        });
    }
    let parts: Vec<usize> = set.members_upto(n as u64).into_iter().map(|k| k as usize).collect();
    let fact: Vec<BigUint> = (0..=n).map(factorial).collect();
    let binom = |a: usize, b: usize| &fact[a] / (&fact[b] * &fact[a - b]);

    // memo[j][m]: permutations of an m-set whose cycle lengths are among parts[..j]
    let mut memo: Vec<Vec<BigUint>> = Vec::with_capacity(parts.len() + 1);
    let mut base = vec![BigUint::zero(); n + 1];
    base[0] = BigUint::one();
    memo.push(base);
    for (j, &k) in parts.iter().enumerate() {
        let prev = &memo[j];
        let mut row = vec![BigUint::zero(); n + 1];
        for (m, slot) in row.iter_mut().enumerate() {
            let mut total = BigUint::zero();
            // t cycles of length k: choose their t·k elements, then arrange them.
            let mut k_pow = BigUint::one();
            for t in 0..=m / k {
                if t > 0 {
                    k_pow *= k as u64;
                }
                let rest = &prev[m - t * k];
                if rest.is_zero() {
                    continue;
                }
                let used = t * k;
                let arrangements = &fact[used] / (&k_pow * &fact[t]);
                total += binom(m, used) * arrangements * rest;
            }
            *slot = total;
        }
        memo.push(row);
    }
    Ok(memo.pop().unwrap().swap_remove(n))
}

/// Every cycle type of size `n` with all parts in `A`, parts listed in
/// descending order during enumeration.
pub fn cycle_types(set: &AdmissibleSet, n: usize) -> Result<Vec<CycleType>> {
    let parts: Vec<usize> = set.members_upto(n as u64).into_iter().map(|k| k as usize).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(&parts, parts.len(), n, &mut stack, &mut out)?;
    Ok(out)
}

fn descend(
    parts: &[usize],
    upto: usize,
    remaining: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<CycleType>,
) -> Result<()> {
    if remaining == 0 {
        if out.len() == MAX_LISTED_TYPES {
            return Err(Error::Resource {
                what: "cycle types",
                requested: MAX_LISTED_TYPES as u64 + 1,
                max: MAX_LISTED_TYPES as u64,
                hint: "use count_by_cycle_types for totals".into(),
            });
        }
        out.push(CycleType::from_lengths(stack.iter().copied()).expect("parts are positive"));
        return Ok(());
    }
    for j in (0..upto).rev() {
        let k = parts[j];
        if k <= remaining {
            stack.push(k);
            descend(parts, j + 1, remaining - k, stack, out)?;
            stack.pop();
        }
    }
    Ok(())
}

/// Counts `A`-permutations of `[n]` by visiting all `n!` permutations.
pub fn brute_force_count(set: &AdmissibleSet, n: usize) -> Result<BigUint> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Resource {
            what: "n",
            requested: n as u64,
            max: BRUTE_FORCE_MAX_N as u64,
            hint: "brute force visits n! permutations".into(),
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut hits = 0u64;
    let mut check = |p: &[usize]| {
        if cycle_lengths(p).into_iter().all(|k| set.contains(k as u64)) {
            hits += 1;
        }
    };
    // Heap's algorithm, iterative form.
    check(&perm);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(BigUint::from(hits))
}

fn cycle_lengths(image: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; image.len()];
    let mut out = Vec::new();
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = image[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::CountTable;

    const SETS: [AdmissibleSet; 4] =
        [AdmissibleSet::Primes, AdmissibleSet::PrimesWithOne, AdmissibleSet::Odd, AdmissibleSet::All];

    #[test]
    fn cycle_type_examples() {
        assert_eq!(count_by_cycle_types(&AdmissibleSet::Primes, 6).unwrap(), BigUint::from(55u32));
        assert_eq!(count_by_cycle_types(&AdmissibleSet::Primes, 0).unwrap(), BigUint::one());
        assert_eq!(count_by_cycle_types(&AdmissibleSet::Primes, 1).unwrap(), BigUint::zero());
        assert!(count_by_cycle_types(&AdmissibleSet::Primes, 121).is_err());

        let types = cycle_types(&AdmissibleSet::Primes, 6).unwrap();
        let mut listed: Vec<(String, BigUint)> =
            types.iter().map(|t| (t.to_string(), t.permutation_count())).collect();
        listed.sort();
        assert_eq!(
            listed,
            vec![("{2:3}".to_string(), BigUint::from(15u32)), ("{3:2}".to_string(), BigUint::from(40u32))]
        );
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_count(&AdmissibleSet::Primes, 5).unwrap(), BigUint::from(44u32));
        assert_eq!(brute_force_count(&AdmissibleSet::Primes, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(brute_force_count(&AdmissibleSet::PrimesWithOne, 3).unwrap(), BigUint::from(6u32));
        assert_eq!(brute_force_count(&AdmissibleSet::Primes, 0).unwrap(), BigUint::one());
        assert!(matches!(brute_force_count(&AdmissibleSet::Primes, 10), Err(Error::Resource { .. })));
    }

    #[test]
    fn three_routes_agree_small_n() {
        for set in &SETS {
            let table = CountTable::build(set, 8).unwrap();
            for n in 0..=8 {
                let brute = brute_force_count(set, n).unwrap();
                assert_eq!(brute, count_by_cycle_types(set, n).unwrap(), "{set} n={n}");
                assert_eq!(&brute, table.get(n).unwrap(), "{set} n={n}");
            }
        }
    }

    #[test]
    fn oracle_matches_recurrence_to_120() {
        for set in &SETS {
            let table = CountTable::build(set, CYCLE_TYPE_MAX_N).unwrap();
            for n in (0..=CYCLE_TYPE_MAX_N).step_by(7).chain([CYCLE_TYPE_MAX_N]) {
                assert_eq!(&count_by_cycle_types(set, n).unwrap(), table.get(n).unwrap(), "{set} n={n}");
            }
        }
    }

    #[test]
    fn explicit_types_sum_to_oracle() {
        for set in [AdmissibleSet::Primes, AdmissibleSet::Odd, AdmissibleSet::explicit(vec![2, 3, 7]).unwrap()] {
            for n in 0..=30 {
                let total: BigUint = cycle_types(&set, n).unwrap().iter().map(CycleType::permutation_count).sum();
                assert_eq!(total, count_by_cycle_types(&set, n).unwrap(), "{set} n={n}");
            }
        }
    }

    #[test]
    fn odd_even_sizes_are_double_factorial_squares() {
        for m in 1..=10usize {
            let dfact = (1..2 * m as u64).step_by(2).fold(BigUint::one(), |a, k| a * k);
            assert_eq!(count_by_cycle_types(&AdmissibleSet::Odd, 2 * m).unwrap(), &dfact * &dfact);
        }
    }
}
