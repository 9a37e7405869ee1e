//! Binary cache of a [`PrimeTable`].
//!
//! Layout: `b"PCT1"`, little-endian `u64` limit, little-endian `u64` count,
//! then the odd-only primality bitset as little-endian `u64` words.

use std::path::Path;

use super::sieve::OddBits;
use super::PrimeTable;
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"PCT1";
const HEADER_LEN: usize = 4 + 8 + 8;

impl PrimeTable {
    pub fn to_bytes(&self) -> Vec<u8> {
        let bits = OddBits::from_primes(self.limit, &self.primes);
        let mut out = Vec::with_capacity(HEADER_LEN + bits.words.len() * 8);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.limit.to_le_bytes());
        out.extend_from_slice(&(self.primes.len() as u64).to_le_bytes());
        for w in &bits.words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |why: &str| Error::Cache(format!("prime table dump: {why}"));
        if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
            return Err(bad("missing PCT1 header"));
        }
        let limit = u64::from_le_bytes(bytes[4..12].try_into().unwrap());
        let count = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
        let body = &bytes[HEADER_LEN..];
        let words = limit.div_ceil(2).div_ceil(64) as usize;
        if body.len() != words * 8 {
            return Err(bad("bitset length does not match limit"));
        }
        let words = body
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let primes = OddBits { limit, words }.to_primes();
        if primes.len() as u64 != count {
            return Err(bad("prime count does not match bitset"));
        }
        Ok(PrimeTable { limit, primes })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::io::write_atomic(path, &self.to_bytes())
    }

    /// Loads a cached table; `Ok(None)` when the file does not exist.
    pub fn load(path: &Path) -> Result<Option<Self>> {
        match std::fs::read(path) {
            Ok(bytes) => Self::from_bytes(&bytes).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Loads `path` if it holds a table covering `limit`, otherwise sieves and
    /// refreshes the cache. A corrupt cache is rebuilt rather than reported.
    pub fn load_or_build(path: &Path, limit: u64) -> Result<Self> {
        if let Ok(Some(t)) = Self::load(path) {
            if t.limit == limit {
                return Ok(t);
            }
        }
        let t = Self::build(limit)?;
        t.save(path)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let t = PrimeTable::build(10).unwrap();
        let b = t.to_bytes();
        assert_eq!(&b[..4], b"PCT1");
        assert_eq!(u64::from_le_bytes(b[4..12].try_into().unwrap()), 10);
        assert_eq!(u64::from_le_bytes(b[12..20].try_into().unwrap()), 4);
        // odd slots 1,3,5,7,9 -> primes 3,5,7 -> bits 1,2,3
        assert_eq!(u64::from_le_bytes(b[20..28].try_into().unwrap()), 0b1110);
        assert_eq!(PrimeTable::from_bytes(&b).unwrap(), t);
    }

    #[test]
    fn rejects_corruption() {
        let mut b = PrimeTable::build(1000).unwrap().to_bytes();
        b[12] ^= 1;
        assert!(PrimeTable::from_bytes(&b).is_err());
        assert!(PrimeTable::from_bytes(b"PCT0").is_err());
        let b = PrimeTable::build(1000).unwrap().to_bytes();
        assert!(PrimeTable::from_bytes(&b[..b.len() - 8]).is_err());
    }

    #[test]
    fn missing_file_is_not_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("primes.pct");
        assert!(PrimeTable::load(&path).unwrap().is_none());
        let t = PrimeTable::load_or_build(&path, 5_000).unwrap();
        assert_eq!(PrimeTable::load(&path).unwrap().unwrap(), t);
        std::fs::write(&path, b"garbage").unwrap();
        assert_eq!(PrimeTable::load_or_build(&path, 5_000).unwrap(), t);
    }
}
