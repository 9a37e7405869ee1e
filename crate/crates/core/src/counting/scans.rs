//! Coefficient scans over the exact counts for `A = primes` and `A = primes ∪ {1}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use super::CountTable;
use crate::{Error, Result};

/// `h_n = (P_{n+1,1} - n·P_{n,1})/n!` for `n = 1..=n_max`, with the smallest `n·h_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauberianReport {
    /// `coefficients[n-1] = h_n`.
    pub coefficients: Vec<BigRational>,
    pub min_margin: BigRational,
    pub argmin: usize,
}

impl TauberianReport {
    pub fn h(&self, n: usize) -> &BigRational {
        &self.coefficients[n - 1]
    }
}

/// Computes `h_1..h_{n_max}` from a `primes ∪ {1}` table covering `n_max + 1`.
pub fn tauberian_coefficients(primes1: &CountTable, n_max: usize) -> Result<TauberianReport> {
    if n_max == 0 {
        return Err(Error::Domain("tauberian_coefficients needs n_max >= 1".into()));
    }
    primes1.get(n_max + 1)?;
    let c = primes1.counts();
    let mut fact = BigUint::one();
    let mut coefficients = Vec::with_capacity(n_max);
    let mut best: Option<(BigRational, usize)> = None;
    for n in 1..=n_max {
        fact *= n as u64;
        let numer = BigInt::from(c[n + 1].clone()) - BigInt::from(&c[n] * n as u64);
        let h = BigRational::new(numer, BigInt::from(fact.clone()));
        let margin = &h * BigInt::from(n);
        if best.as_ref().is_none_or(|(m, _)| &margin < m) {
            best = Some((margin, n));
        }
        coefficients.push(h);
    }
    let (min_margin, argmin) = best.expect("n_max >= 1");
    Ok(TauberianReport {
        coefficients,
        min_margin,
        argmin,
    })
}

/// Which right-hand side the inequality `P_{n+1,1} >= n·X_n` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InequalityVariant {
    /// `X_n = P_{n,1}`.
    Primes1,
    /// `X_n = P_n` (the remaining cycles all have prime length).
    PrimesRest,
}

/// All `1 <= n <= n_max` violating the chosen inequality.
pub fn inequality_scan(
    primes1: &CountTable,
    primes: &CountTable,
    n_max: usize,
    variant: InequalityVariant,
) -> Result<Vec<usize>> {
    primes1.get(n_max + 1)?;
    let rhs = match variant {
        InequalityVariant::Primes1 => primes1,
        InequalityVariant::PrimesRest => {
            primes.get(n_max)?;
            primes
        }
    };
    let lhs = primes1.counts();
    Ok((1..=n_max)
        .filter(|&n| lhs[n + 1] < &rhs.counts()[n] * n as u64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::AdmissibleSet;

    fn tables(n: usize) -> (CountTable, CountTable) {
        (
            CountTable::build(&AdmissibleSet::PrimesWithOne, n + 1).unwrap(),
            CountTable::build(&AdmissibleSet::Primes, n + 1).unwrap(),
        )
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn coefficient_examples() {
        let (p1, _) = tables(10);
        let r = tauberian_coefficients(&p1, 10).unwrap();
        assert_eq!(r.h(3), &q(0, 1));
        assert_eq!(r.h(4), &q(3, 4));
        assert_eq!(r.h(5), &q(-1, 4));
        assert_eq!(r.h(5) * BigInt::from(5), q(-5, 4));
        assert!(r.min_margin <= q(-5, 4));
        assert!(tauberian_coefficients(&p1, 11).is_err());
        assert!(tauberian_coefficients(&p1, 0).is_err());
    }

    #[test]
    fn partial_sums_telescope() {
        // P_{1,1} + Σ_{k<=n-1} h_k = P_{n,1}/(n-1)!
        let (p1, _) = tables(30);
        let r = tauberian_coefficients(&p1, 29).unwrap();
        let mut acc = BigRational::from_integer(BigInt::from(p1.counts()[1].clone()));
        let mut fact = BigUint::one();
        for n in 2..=30usize {
            acc += r.h(n - 1);
            fact *= (n - 1) as u64;
            assert_eq!(acc, BigRational::new(p1.counts()[n].clone().into(), fact.clone().into()));
        }
    }

    #[test]
    fn inequality_examples() {
        let (p1, p) = tables(10);
        assert!(inequality_scan(&p1, &p, 4, InequalityVariant::Primes1).unwrap().is_empty());
        let v = inequality_scan(&p1, &p, 10, InequalityVariant::Primes1).unwrap();
        assert_eq!(v.first(), Some(&5));
        assert!(inequality_scan(&p1, &p, 10, InequalityVariant::PrimesRest).unwrap().is_empty());
    }

    #[test]
    fn margin_sign_matches_scan() {
        let (p1, p) = tables(200);
        let r = tauberian_coefficients(&p1, 200).unwrap();
        let negative: Vec<usize> = (1..=200).filter(|&n| r.h(n) < &q(0, 1)).collect();
        assert_eq!(negative, inequality_scan(&p1, &p, 200, InequalityVariant::Primes1).unwrap());
    }
}
