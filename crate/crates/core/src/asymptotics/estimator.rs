use crate::counting::{big_ratio_f64, factorial, AdmissibleSet, CountTable};
use crate::primes::EULER_GAMMA;
use crate::{Error, Result};

use super::gamma_fn;

/// Density-based estimate of `P_{n,A}/n!`:
/// `n^{ρ-1} · exp(L(n) - γρ) / Γ(ρ)` with `L(n) = Σ_{k∈A, k<=n} 1/k - ρ log n`.
pub fn yakymiv_ratio(set: &AdmissibleSet, n: usize) -> Result<f64> {
    let rho = match set.density() {
        Some(r) if r > 0.0 => r,
        _ => {
            return Err(Error::NotApplicable(format!(
                "set {set} has density 0; the estimate needs rho > 0"
            )))
        }
    };
    if n == 0 {
        return Err(Error::Domain("yakymiv_ratio needs n >= 1".into()));
    }
    let nf = n as f64;
    let harmonic: f64 = set.members_upto(n as u64).iter().map(|&k| 1.0 / k as f64).sum();
    let slowly_varying = harmonic - rho * nf.ln();
    Ok(nf.powf(rho - 1.0) * (slowly_varying - EULER_GAMMA * rho).exp() / gamma_fn(rho)?)
}

/// `exp(H_n - log n - γ)`: the estimate for `A = all` written out directly.
pub fn harmonic_estimate(n: usize) -> f64 {
    let h: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
    (h - (n as f64).ln() - EULER_GAMMA).exp()
}

/// `|estimate · n!/P_{n,A} - 1|` against exact counts.
pub fn yakymiv_relative_error(table: &CountTable, n: usize) -> Result<f64> {
    let estimate = yakymiv_ratio(table.set(), n)?;
    let exact = big_ratio_f64(table.get(n)?, &factorial(n));
    if exact == 0.0 {
        return Err(Error::NotApplicable(format!("P_{n} = 0 for set {}", table.set())));
    }
    Ok((estimate / exact - 1.0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_set() {
        let r = yakymiv_ratio(&AdmissibleSet::All, 1000).unwrap();
        assert!((r - 1.0005).abs() < 1e-4);
        assert!((1.0001..=1.0010).contains(&r));
        assert!((r - harmonic_estimate(1000)).abs() < 1e-12);
        let r1 = yakymiv_ratio(&AdmissibleSet::All, 1).unwrap();
        assert!((r1 - (1.0 - EULER_GAMMA).exp()).abs() < 1e-12);
        assert!((r1 - 1.5262).abs() < 1e-4);
    }

    #[test]
    fn two_paths_agree() {
        for n in [1, 2, 10, 100, 1000, 5000] {
            assert!((yakymiv_ratio(&AdmissibleSet::All, n).unwrap() - harmonic_estimate(n)).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_set_error_shrinks() {
        let t = CountTable::build(&AdmissibleSet::Odd, 800).unwrap();
        let e: Vec<f64> = [200, 400, 800].iter().map(|&n| yakymiv_relative_error(&t, n).unwrap()).collect();
        assert!(e[0] > e[1] && e[1] > e[2], "{e:?}");
    }

    #[test]
    fn zero_density_not_applicable() {
        assert!(matches!(yakymiv_ratio(&AdmissibleSet::Primes, 100), Err(Error::NotApplicable(_))));
        assert!(matches!(yakymiv_ratio(&AdmissibleSet::PrimesWithOne, 100), Err(Error::NotApplicable(_))));
        assert!(yakymiv_ratio(&AdmissibleSet::All, 0).is_err());
    }
}
