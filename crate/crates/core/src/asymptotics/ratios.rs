use std::f64::consts::E;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::counting::{big_ratio_f64, CountTable, FixedDecimal};
use crate::Result;

pub const CSV_HEADER: &str = "n,r_primes,r_primes1,transfer,rg,conjecture_diag";

/// One row of the limit-ratio table.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    /// `P_n/(n-1)!`
    pub r_primes: FixedDecimal,
    /// `P_{n,1}/(n-1)!`
    pub r_primes1: FixedDecimal,
    /// `P_{n,1}/(e·P_n)`; infinite when `P_n = 0`
    pub transfer: f64,
    /// `n·P_{n,1}/P_{n+1,1}`
    pub rg: f64,
    /// `(P_n/(n-1)! - e^c)·log log n`
    pub conjecture_diag: f64,
}

/// Rows `n = 1..=n_max`. `primes` must cover `n_max`, `primes1` must cover `n_max + 1`.
pub fn limit_ratios(
    primes: &CountTable,
    primes1: &CountTable,
    n_max: usize,
    digits: u32,
    e_c: f64,
) -> Result<Vec<RatioRow>> {
    primes.get(n_max)?;
    primes1.get(n_max + 1)?;
    let (p, p1) = (primes.counts(), primes1.counts());
    let mut fact = BigUint::one(); // (n-1)!
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            fact *= (n - 1) as u64;
        }
        let r_p = big_ratio_f64(&p[n], &fact);
        let transfer = if p[n] == BigUint::ZERO {
            f64::INFINITY
        } else {
            big_ratio_f64(&p1[n], &p[n]) / E
        };
        rows.push(RatioRow {
            n,
            r_primes: FixedDecimal::from_unsigned_ratio(&p[n], &fact, digits),
            r_primes1: FixedDecimal::from_unsigned_ratio(&p1[n], &fact, digits),
            transfer,
            rg: big_ratio_f64(&(&p1[n] * n as u64), &p1[n + 1]),
            conjecture_diag: (r_p - e_c) * (n as f64).ln().ln(),
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[RatioRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{:.10},{:.10},{:.10}",
            r.n, r.r_primes, r.r_primes1, r.transfer, r.rg, r.conjecture_diag
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct JsonRow {
    n: usize,
    r_primes: String,
    r_primes1: String,
    transfer: Option<f64>,
    rg: Option<f64>,
    conjecture_diag: Option<f64>,
}

/// JSON array of rows; fixed decimals as strings, non-finite floats as `null`.
pub fn to_json(rows: &[RatioRow]) -> String {
    let finite = |x: f64| x.is_finite().then_some(x);
    let items: Vec<JsonRow> = rows
        .iter()
        .map(|r| JsonRow {
            n: r.n,
            r_primes: r.r_primes.to_string(),
            r_primes1: r.r_primes1.to_string(),
            transfer: finite(r.transfer),
            rg: finite(r.rg),
            conjecture_diag: finite(r.conjecture_diag),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&items).expect("rows serialize");
    s.push('\n');
    s
}
