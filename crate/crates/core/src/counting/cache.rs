//! Line-oriented JSON cache of exact counts.
//!
//! ```text
//! {"format":"prime-cycles-counts","version":1}
//! {"set_id":"primes","n":0,"count":"1"}
//! {"set_id":"primes","n":1,"count":"0"}
//! ```

use std::io::{BufRead, BufReader};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::table::next_count;
use super::{AdmissibleSet, CountTable};
use crate::{Error, Result};

pub const FORMAT: &str = "prime-cycles-counts";
pub const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    set_id: String,
    n: usize,
    count: String,
}

pub fn to_cache_string(table: &CountTable) -> String {
    let header = Header {
        format: FORMAT.into(),
        version: VERSION,
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    let set_id = table.set().id();
    for (n, c) in table.counts().iter().enumerate() {
        let rec = Record {
            set_id: set_id.clone(),
            n,
            count: c.to_str_radix(10),
        };
        out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn save_cache(table: &CountTable, path: &Path) -> Result<()> {
    crate::io::write_atomic(path, to_cache_string(table).as_bytes())
}

/// Loads a cache for `set`. Returns `Ok(None)` if the file does not exist and
/// an error if it exists but fails validation.
pub fn load_cache(path: &Path, set: &AdmissibleSet) -> Result<Option<CountTable>> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    parse_cache(BufReader::new(file), set).map(Some)
}

fn parse_cache<R: BufRead>(reader: R, set: &AdmissibleSet) -> Result<CountTable> {
    let bad = |line: usize, why: String| Error::Cache(format!("line {line}: {why}"));
    let mut lines = reader.lines();
    let first = lines.next().ok_or_else(|| bad(1, "empty file".into()))??;
    let header: Header = serde_json::from_str(&first).map_err(|e| bad(1, e.to_string()))?;
    if header.format != FORMAT || header.version != VERSION {
        return Err(bad(1, format!("unsupported header {first}")));
    }
    let set_id = set.id();
    let mut counts = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line).map_err(|e| bad(lineno, e.to_string()))?;
        if rec.set_id != set_id {
            return Err(bad(lineno, format!("set_id {} does not match {set_id}", rec.set_id)));
        }
        if rec.n != counts.len() {
            return Err(bad(lineno, format!("expected n = {}, found {}", counts.len(), rec.n)));
        }
        let count = BigUint::parse_bytes(rec.count.as_bytes(), 10)
            .filter(|_| rec.count.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| bad(lineno, format!("count {:?} is not a decimal integer", rec.count)))?;
        counts.push(count);
    }
    if counts.first() != Some(&BigUint::one()) {
        return Err(Error::Cache("cache must start with n = 0, count 1".into()));
    }
    verify_sample(set, &counts)?;
    Ok(CountTable::from_counts(set, counts))
}

/// Re-derives a deterministic 5% sample (and the last entry) from the recurrence.
fn verify_sample(set: &AdmissibleSet, counts: &[BigUint]) -> Result<()> {
    let max_n = counts.len() - 1;
    if max_n == 0 {
        return Ok(());
    }
    let members = set.membership_upto(max_n);
    let amount = max_n.div_ceil(20);
    let mut rng = ChaCha8Rng::seed_from_u64(counts.len() as u64);
    let mut picks: Vec<usize> = sample(&mut rng, max_n, amount).into_iter().map(|i| i + 1).collect();
    picks.push(max_n);
    for n in picks {
        if next_count(&members, &counts[..n]) != counts[n] {
            return Err(Error::Cache(format!("count for n = {n} fails the recurrence")));
        }
    }
    Ok(())
}
