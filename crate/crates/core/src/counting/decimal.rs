use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::cycle_type::factorial;
use super::CountTable;
use crate::{Error, Result};

/// A decimal truncated toward zero at `scale` fractional digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedDecimal {
    scaled: BigInt,
    scale: u32,
}

impl FixedDecimal {
    /// `num/den` truncated toward zero.
    pub fn from_ratio(num: &BigInt, den: &BigUint, scale: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let pow = BigUint::from(10u32).pow(scale);
        let mag = num.magnitude() * pow / den;
        FixedDecimal {
            scaled: BigInt::from_biguint(num.sign(), mag),
            scale,
        }
    }

    pub fn from_unsigned_ratio(num: &BigUint, den: &BigUint, scale: u32) -> Self {
        Self::from_ratio(&BigInt::from(num.clone()), den, scale)
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// The value times `10^scale`.
    pub fn scaled(&self) -> &BigInt {
        &self.scaled
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().expect("rendered decimal parses")
    }
}

impl fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.scaled.sign() == Sign::Minus { "-" } else { "" };
        let digits = self.scaled.magnitude().to_str_radix(10);
        let scale = self.scale as usize;
        if scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{sign}{int}.{frac}")
    }
}

/// `P_{n,A}/(n-1)!` truncated to `digits` fractional digits.
pub fn ratio_fixed(table: &CountTable, n: usize, digits: u32) -> Result<FixedDecimal> {
    if n == 0 {
        return Err(Error::UndefinedRatio);
    }
    let p = table.get(n)?;
    Ok(FixedDecimal::from_unsigned_ratio(p, &factorial(n - 1), digits))
}

/// Exact partial sums `S_n = Σ_{k<=n} P_k/k!` kept as `T_n / n!` with
/// `T_n = n·T_{n-1} + P_n`.
#[derive(Debug, Clone)]
pub struct PartialSums<'a> {
    table: &'a CountTable,
    n: usize,
    numer: BigUint,
    denom: BigUint,
}

impl<'a> PartialSums<'a> {
    pub fn new(table: &'a CountTable) -> Self {
        PartialSums {
            table,
            n: 0,
            numer: table.counts()[0].clone(),
            denom: BigUint::from(1u32),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    /// `n!`
    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn to_fixed(&self, digits: u32) -> FixedDecimal {
        FixedDecimal::from_unsigned_ratio(&self.numer, &self.denom, digits)
    }

    pub fn to_f64(&self) -> f64 {
        big_ratio_f64(&self.numer, &self.denom)
    }

    /// Advances to `n + 1`; `false` once the table is exhausted.
    pub fn advance(&mut self) -> bool {
        let next = self.n + 1;
        match self.table.counts().get(next) {
            Some(p) => {
                self.numer = &self.numer * next as u64 + p;
                self.denom *= next as u64;
                self.n = next;
                true
            }
            None => false,
        }
    }
}

/// `Σ_{k<=n} P_k/k!` truncated to `digits` fractional digits.
pub fn partial_sum_egf(table: &CountTable, n: usize, digits: u32) -> Result<FixedDecimal> {
    table.get(n)?;
    let mut sums = PartialSums::new(table);
    while sums.n() < n {
        sums.advance();
    }
    Ok(sums.to_fixed(digits))
}

/// Correctly scaled `num/den` as `f64` for arbitrarily large operands.
pub fn big_ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    // Shift so the integer quotient carries about 64 significant bits.
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let (mut q, r) = if shift >= 0 {
        (num << shift as u64).div_rem(den)
    } else {
        num.div_rem(&(den << (-shift) as u64))
    };
    // sticky bit: q has >= 64 bits, so this only breaks exact-midpoint ties
    if !r.is_zero() {
        q |= BigUint::from(1u32);
    }
    scale_pow2(q.to_f64().expect("finite"), -shift)
}

/// A big rational as the nearest `f64`.
pub fn rational_f64(q: &BigRational) -> f64 {
    let v = big_ratio_f64(q.numer().magnitude(), q.denom().magnitude());
    let negative = (q.numer().sign() == Sign::Minus) != (q.denom().sign() == Sign::Minus);
    if negative {
        -v
    } else {
        v
    }
}

fn scale_pow2(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}
