//! Odd-only, bit-packed sieves of Eratosthenes.
//!
//! Bit `i` of a sieve word stream stands for the odd number `2i + 1`; a set bit
//! means "prime". Two independent strategies live here: a plain sieve over the
//! whole range and a segmented sieve that walks the range in cache-sized blocks.

/// Odd numbers covered by one segment (32 KiB of bits).
pub const SEGMENT_ODDS: u64 = 32 * 1024 * 8;

/// Bit-packed primality flags for the odd numbers `1, 3, 5, ..., <= limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddBits {
    pub(crate) limit: u64,
    pub(crate) words: Vec<u64>,
}

impl OddBits {
    fn all_set(limit: u64) -> Self {
        let odds = odd_slots(limit);
        let mut words = vec![u64::MAX; odds.div_ceil(64) as usize];
        if let Some(last) = words.last_mut() {
            let used = odds % 64;
            if used != 0 {
                *last = (1u64 << used) - 1;
            }
        }
        let mut bits = OddBits { limit, words };
        if odds > 0 {
            bits.clear(0); // 1 is not prime
        }
        bits
    }

    #[inline]
    fn clear(&mut self, i: u64) {
        self.words[(i / 64) as usize] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub(crate) fn get(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    /// Number of odd slots (`1, 3, ..., <= limit`).
    pub fn slots(&self) -> u64 {
        odd_slots(self.limit)
    }

    /// Expands the bitset into the ascending list of primes `<= limit`.
    pub fn to_primes(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(estimate_count(self.limit));
        if self.limit >= 2 {
            out.push(2);
        }
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let tz = bits.trailing_zeros() as u64;
                out.push(2 * (w as u64 * 64 + tz) + 1);
                bits &= bits - 1;
            }
        }
        out
    }

    pub(crate) fn from_primes(limit: u64, primes: &[u64]) -> Self {
        let odds = odd_slots(limit);
        let mut words = vec![0u64; odds.div_ceil(64) as usize];
        for &p in primes.iter().filter(|&&p| p % 2 == 1) {
            let i = p / 2;
            words[(i / 64) as usize] |= 1u64 << (i % 64);
        }
        OddBits { limit, words }
    }
}

fn odd_slots(limit: u64) -> u64 {
    limit.div_ceil(2)
}

/// Rough upper bound on π(limit) used for preallocation.
fn estimate_count(limit: u64) -> usize {
    if limit < 17 {
        return 7;
    }
    let x = limit as f64;
    (1.26 * x / x.ln()) as usize + 16
}

/// Plain sieve over `[1, limit]`.
pub fn plain(limit: u64) -> OddBits {
    let mut bits = OddBits::all_set(limit);
    let mut p = 3u64;
    while p * p <= limit {
        if bits.get(p / 2) {
            let mut m = p * p;
            while m <= limit {
                bits.clear(m / 2);
                m += 2 * p;
            }
        }
        p += 2;
    }
    bits
}

/// Segmented sieve over `[1, limit]`; base primes come from [`plain`] up to `√limit`.
pub fn segmented(limit: u64) -> OddBits {
    let mut bits = OddBits::all_set(limit);
    let slots = bits.slots();
    if slots == 0 {
        return bits;
    }
    let root = isqrt(limit);
    let base: Vec<u64> = plain(root).to_primes().into_iter().filter(|&p| p > 2).collect();

    let mut seg = vec![0u64; (SEGMENT_ODDS / 64) as usize];
    let mut lo_slot = 0u64;
    while lo_slot < slots {
        let hi_slot = (lo_slot + SEGMENT_ODDS).min(slots);
        seg.iter_mut().for_each(|w| *w = u64::MAX);
        for &p in &base {
            // first odd multiple >= max(p², 2·lo_slot+1)
            let lo_val = 2 * lo_slot + 1;
            let mut m = (p * p).max(lo_val.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            let mut s = m / 2;
            while s < hi_slot {
                let off = s - lo_slot;
                seg[(off / 64) as usize] &= !(1u64 << (off % 64));
                s += p;
            }
        }
        for s in lo_slot..hi_slot {
            let off = s - lo_slot;
            if seg[(off / 64) as usize] >> (off % 64) & 1 == 0 {
                bits.clear(s);
            }
        }
        lo_slot = hi_slot;
    }
    bits
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
