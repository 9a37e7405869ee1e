//! Truncated evaluations of `φ(z) = Σ_p z^p/p`, `φ′(z)` and `f(z) = exp φ(z)`
//! on the real segment `0 <= z < 1`, each with a certified bound on the
//! omitted series mass.

use serde::Serialize;

use crate::primes::PrimeTable;
use crate::{Error, Result};

/// Smallest supported probe point for the lemma residuals.
pub const LEMMA_Z_MIN: f64 = 0.9;
/// Largest supported probe point for the lemma residuals.
pub const LEMMA_Z_MAX: f64 = 1.0 - 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbePoint {
    pub z: f64,
    /// Every prime `p <= cutoff` is summed.
    pub cutoff: u64,
    pub value: f64,
    /// Upper bound on the omitted part of the series.
    pub tail_bound: f64,
}

#[derive(Clone, Copy)]
enum Series {
    /// `Σ z^p / p`, tail `<= z^{N+1}/((N+1)(1-z))`
    Phi,
    /// `Σ z^{p-1}`, tail `<= z^N/(1-z)`
    PhiPrime,
}

impl Series {
    fn ln_tail(self, z: f64, cutoff: u64) -> f64 {
        let n = cutoff as f64;
        match self {
            Series::Phi => (n + 1.0) * z.ln() - (n + 1.0).ln() - (1.0 - z).ln(),
            Series::PhiPrime => n * z.ln() - (1.0 - z).ln(),
        }
    }

    fn term(self, z: f64, p: u64) -> f64 {
        match self {
            Series::Phi => z.powf(p as f64) / p as f64,
            Series::PhiPrime => z.powf((p - 1) as f64),
        }
    }

    /// Smallest cutoff whose tail bound is `<= tol`.
    fn required_cutoff(self, z: f64, tol: f64) -> u64 {
        let ln_tol = tol.ln();
        let ok = |n: u64| self.ln_tail(z, n) <= ln_tol;
        let mut hi = 1u64;
        while !ok(hi) {
            hi *= 2;
        }
        let mut lo = 0u64;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if ok(lo) {
            lo
        } else {
            hi
        }
    }
}

fn check_args(z: f64, tol: f64) -> Result<()> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("probe point must satisfy 0 <= z < 1, got {z}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Prime limit needed to evaluate `φ` and `φ′` at `z` within `tol`.
pub fn required_prime_limit(z: f64, tol: f64) -> Result<u64> {
    check_args(z, tol)?;
    if z == 0.0 {
        return Ok(0);
    }
    Ok(Series::Phi
        .required_cutoff(z, tol)
        .max(Series::PhiPrime.required_cutoff(z, tol)))
}

fn evaluate(series: Series, z: f64, table: &PrimeTable, tol: f64) -> Result<ProbePoint> {
    check_args(z, tol)?;
    if z == 0.0 {
        return Ok(ProbePoint {
            z,
            cutoff: 0,
            value: 0.0,
            tail_bound: 0.0,
        });
    }
    let cutoff = series.required_cutoff(z, tol);
    if cutoff > table.limit() {
        return Err(Error::Resource {
            what: "prime limit",
            requested: cutoff,
            max: table.limit(),
            hint: format!("z = {z} with tolerance {tol:e} needs primes up to {cutoff}"),
        });
    }
    let end = table.primes().partition_point(|&p| p <= cutoff);
    let value = table.primes()[..end].iter().map(|&p| series.term(z, p)).sum();
    Ok(ProbePoint {
        z,
        cutoff,
        value,
        tail_bound: series.ln_tail(z, cutoff).exp(),
    })
}

/// `φ(z) = Σ_p z^p / p`.
pub fn phi(z: f64, table: &PrimeTable, tol: f64) -> Result<ProbePoint> {
    evaluate(Series::Phi, z, table, tol)
}

/// `φ′(z) = Σ_p z^{p-1}`.
pub fn phi_prime(z: f64, table: &PrimeTable, tol: f64) -> Result<ProbePoint> {
    evaluate(Series::PhiPrime, z, table, tol)
}

/// `f(z) = exp φ(z)`; the tail bound is `value · expm1(φ tail)`.
pub fn f_eval(z: f64, table: &PrimeTable, tol: f64) -> Result<ProbePoint> {
    let mut inner_tol = tol;
    loop {
        let p = phi(z, table, inner_tol)?;
        let value = p.value.exp();
        let tail_bound = value * p.tail_bound.exp_m1();
        if tail_bound <= tol {
            return Ok(ProbePoint {
                z,
                cutoff: p.cutoff,
                value,
                tail_bound,
            });
        }
        inner_tol *= 0.5 * tol / tail_bound;
    }
}

fn check_lemma_z(z: f64) -> Result<()> {
    const SLACK: f64 = 1e-12;
    if !(LEMMA_Z_MIN - SLACK..=LEMMA_Z_MAX + SLACK).contains(&z) {
        return Err(Error::OutOfRange {
            what: "z",
            value: z.to_string(),
            max: format!("{LEMMA_Z_MAX} (supported range [{LEMMA_Z_MIN}, {LEMMA_Z_MAX}])"),
        });
    }
    Ok(())
}

/// `log(1/(1-z))`
pub fn log_inv_one_minus(z: f64) -> f64 {
    -(-z).ln_1p()
}

/// `φ′(z)(1-z)log(1/(1-z)) - 1`.
pub fn lemma1_residual(z: f64, table: &PrimeTable, tol: f64) -> Result<f64> {
    check_lemma_z(z)?;
    let d = phi_prime(z, table, tol)?;
    Ok(d.value * (1.0 - z) * log_inv_one_minus(z) - 1.0)
}

/// `f(z) - e^c log(1/(1-z))`, with `c` estimated from `table`.
pub fn lemma2_residual(z: f64, table: &PrimeTable, tol: f64) -> Result<f64> {
    check_lemma_z(z)?;
    let e_c = table.mertens_constant()?.constant_c_estimate.exp();
    let f = f_eval(z, table, tol)?;
    Ok(f.value - e_c * log_inv_one_minus(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn table() -> &'static PrimeTable {
        static T: OnceLock<PrimeTable> = OnceLock::new();
        T.get_or_init(|| PrimeTable::build(1_000_000).unwrap())
    }

    /// Direct sum over every integer up to `n`, filtering primes by trial division.
    fn direct(n: u64, term: impl Fn(u64) -> f64) -> f64 {
        (2..=n).filter(|&k| crate::counting::is_prime(k)).map(term).sum()
    }

    #[test]
    fn half_point_values() {
        let t = table();
        let p = phi(0.5, t, 1e-9).unwrap();
        assert!((p.value - 0.174_087).abs() < 1e-6, "{p:?}");
        assert!(p.tail_bound <= 1e-9);
        assert!((p.value - direct(23, |p| 0.5f64.powi(p as i32) / p as f64)).abs() < 1e-9);
        let d = phi_prime(0.5, t, 1e-9).unwrap();
        assert!((d.value - 0.829_365).abs() < 1e-6, "{d:?}");
        assert!((d.value - direct(29, |p| 0.5f64.powi(p as i32 - 1))).abs() < 1e-8);
        let f = f_eval(0.5, t, 1e-9).unwrap();
        assert!((f.value - 1.190_157).abs() < 1e-5);
        assert!((f.value - p.value.exp()).abs() < 1e-8);
    }

    #[test]
    fn zero_point() {
        let t = table();
        assert_eq!(phi(0.0, t, 1e-12).unwrap().value, 0.0);
        assert_eq!(phi_prime(0.0, t, 1e-12).unwrap().value, 0.0);
        assert_eq!(f_eval(0.0, t, 1e-12).unwrap().value, 1.0);
    }

    #[test]
    fn near_one_trends() {
        let t = table();
        let z = 1.0 - 1e-3;
        let l = log_inv_one_minus(z);
        let p = phi(z, t, 1e-10).unwrap();
        let diff = p.value - l.ln();
        assert!((diff - 0.261_497).abs() <= 0.5, "{diff}");
        let d = phi_prime(z, t, 1e-10).unwrap();
        let lead = d.value * (1.0 - z) * l;
        assert!((0.8..=1.3).contains(&lead), "{lead}");
        let f = f_eval(z, t, 1e-10).unwrap();
        assert!((f.value - 0.261_497f64.exp() * 1000f64.ln()).abs() <= 2.0, "{f:?}");
    }

    #[test]
    fn tail_bounds_are_certified() {
        let t = table();
        for &z in &[0.3, 0.9, 0.99, 0.999] {
            for &tol in &[1e-6, 1e-10] {
                let a = phi(z, t, tol).unwrap();
                assert!(a.tail_bound <= tol);
                let b = phi(z, t, tol * 1e-3).unwrap();
                assert!(b.cutoff >= a.cutoff);
                assert!((b.value - a.value).abs() <= a.tail_bound, "z={z}");
                let a = phi_prime(z, t, tol).unwrap();
                let b = phi_prime(z, t, tol * 1e-3).unwrap();
                assert!((b.value - a.value).abs() <= a.tail_bound, "z={z}");
                let a = f_eval(z, t, tol).unwrap();
                assert!(a.tail_bound <= tol);
                assert!((a.value - phi(z, t, tol).unwrap().value.exp()).abs() <= a.value * 1e-12 + tol);
            }
        }
    }

    #[test]
    fn phi_tail_majorant_matches_formula() {
        let t = table();
        let z = 0.99;
        let p = phi(z, t, 1e-8).unwrap();
        let n = p.cutoff as f64;
        let bound = z.powf(n + 1.0) / ((n + 1.0) * (1.0 - z));
        assert!((p.tail_bound / bound - 1.0).abs() < 1e-9);
    }

    #[test]
    fn small_table_reports_required_limit() {
        let t = PrimeTable::build(100).unwrap();
        let err = phi(0.999, &t, 1e-12).unwrap_err();
        match err {
            Error::Resource { requested, max, .. } => {
                assert_eq!(max, 100);
                assert_eq!(requested, Series::Phi.required_cutoff(0.999, 1e-12));
            }
            other => panic!("{other:?}"),
        }
        assert!(phi(1.0, &t, 1e-3).is_err());
        assert!(phi(-0.1, &t, 1e-3).is_err());
        assert!(phi(0.5, &t, 0.0).is_err());
    }

    #[test]
    fn lemma_residuals_on_grid() {
        let t = table();
        for k in 1..=3 {
            let z = 1.0 - 10f64.powi(-k);
            let l = log_inv_one_minus(z);
            let r1 = lemma1_residual(z, t, 1e-12).unwrap();
            assert!(r1.abs() * l <= 3.0, "k={k} r1={r1}");
            let r2 = lemma2_residual(z, t, 1e-12).unwrap();
            assert!(r2.abs() <= 2.0, "k={k} r2={r2}");
        }
        assert!(matches!(lemma1_residual(0.5, t, 1e-9), Err(Error::OutOfRange { .. })));
        assert!(lemma2_residual(0.999_95, t, 1e-9).is_err());
    }
}
