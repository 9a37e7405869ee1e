use std::f64::consts::PI;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for `x > 0` by the Lanczos approximation (g = 7, 9 terms).
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma_fn needs a finite x > 0, got {x}")));
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        return PI / ((PI * x).sin() * lanczos(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Γ(1/2) = 2∫_0^∞ e^{-u²} du by composite Simpson on [0, 10].
    fn half_gamma_by_quadrature() -> f64 {
        let (a, b, n) = (0.0f64, 10.0f64, 20_000usize);
        let h = (b - a) / n as f64;
        let f = |u: f64| (-u * u).exp();
        let mut s = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * h);
        }
        2.0 * s * h / 3.0
    }

    #[test]
    fn known_values() {
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-13);
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 1e-11);
        let oracle = half_gamma_by_quadrature();
        assert!((oracle - 1.772_453_850_9).abs() < 1e-9);
        assert!((gamma_fn(0.5).unwrap() - oracle).abs() < 1e-9);
    }

    #[test]
    fn domain() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
        assert!(gamma_fn(f64::NAN).is_err());
    }

    #[test]
    fn functional_equation() {
        for x in [0.5, 1.5, 2.5, 3.3, 0.1, 0.25] {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!(((lhs - rhs) / lhs).abs() < 1e-10, "x={x}");
        }
    }
}
