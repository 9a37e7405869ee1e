use serde::Serialize;

use crate::primes::{PrimeTable, EULER_GAMMA};
use crate::Result;

/// Published six-digit value of the Mertens constant `c`.
pub const PUBLISHED_C: f64 = 0.261_497;
/// Published value of `e^c`.
pub const PUBLISHED_E_C: f64 = 1.298_873;

/// γ, c, e^c and e^{c+1} with a note on where each value comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constants {
    pub gamma: f64,
    pub c: f64,
    pub e_c: f64,
    pub e_c1: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub gamma: String,
    pub c: String,
    pub e_c: String,
    pub e_c1: String,
}

impl Constants {
    pub fn from_table(table: &PrimeTable) -> Result<Self> {
        let report = table.mertens_constant()?;
        let c = report.constant_c_estimate;
        Ok(Constants {
            gamma: EULER_GAMMA,
            c,
            e_c: c.exp(),
            e_c1: (c + 1.0).exp(),
            provenance: Provenance {
                gamma: "compiled-in 20-digit value 0.57721566490153286061".into(),
                c: format!(
                    "gamma + sum over {} primes p <= {} of log(1-1/p) + 1/p (tail ~ -1/(2 N log N) omitted)",
                    table.count(),
                    table.limit()
                ),
                e_c: "exp(c)".into(),
                e_c1: "exp(c + 1)".into(),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_published_values() {
        let t = PrimeTable::build(1_000_000).unwrap();
        let k = Constants::from_table(&t).unwrap();
        assert!((k.c - PUBLISHED_C).abs() < 1e-5);
        assert!((k.e_c - PUBLISHED_E_C).abs() < 1e-5);
        assert_eq!(k.e_c, k.c.exp());
        assert_eq!(k.e_c1, (k.c + 1.0).exp());
        assert!((k.e_c1 - std::f64::consts::E * k.e_c).abs() < 1e-14);
        assert!((k.e_c1 - 3.5307).abs() < 1e-4);
        assert_eq!(k.c, t.mertens_constant().unwrap().constant_c_estimate);
    }
}
