use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is out of range (maximum {max})")]
    OutOfRange {
        what: &'static str,
        value: String,
        max: String,
    },
    #[error("{what} = {requested} exceeds the supported maximum {max}; {hint}")]
    Resource {
        what: &'static str,
        requested: u64,
        max: u64,
        hint: String,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("ratio P_n/(n-1)! is undefined at n = 0")]
    UndefinedRatio,
    #[error("no permutation of [{n}] has all cycle lengths in {set}")]
    EmptySupport { set: String, n: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown admissible set '{0}' (expected primes, primes1, odd, all or a list like 1,2,5)")]
    UnknownSet(String),
    #[error("cache rejected: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
