use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prime_cycles::counting::AdmissibleSet;

/// Exact counts, analytic probes and Monte Carlo checks for permutations
/// whose cycle lengths are prime.
#[derive(Debug, Parser)]
#[command(name = "prime-cycles", version, about, propagate_version = true)]
pub struct Cli {
    /// Directory for count caches; used when a command gets no explicit --cache.
    #[arg(long, global = true, env = "PRIME_CYCLES_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sieve primes up to a limit; optionally dump the table in PCT1 format.
    Sieve {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        /// Write the binary table to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the exact count P_{n,A}.
    Count {
        #[arg(long, value_parser = parse_set)]
        set: AdmissibleSet,
        #[arg(long)]
        n: usize,
        /// Count cache file (line-oriented JSON); created or extended as needed.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Table of P_n/(n-1)!, P_{n,1}/(n-1)!, the transfer ratio and n·P_{n,1}/P_{n+1,1}.
    RatioTable {
        /// Base set A; the second column uses A with 1 added.
        #[arg(long, value_parser = parse_set, default_value = "primes")]
        set: AdmissibleSet,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        digits: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Print γ, c, e^c and e^(c+1) with provenance.
    Constants {
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(2..))]
        prime_limit: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Lemma residuals at z = 1 - 10^-k for each k in the grid; exit 1 if a bound fails.
    Probe {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        lemma: u8,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        grid: Vec<u32>,
        /// Truncation tolerance for the prime series.
        #[arg(long, default_value_t = 1e-12, value_parser = parse_positive_f64)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Density-based estimate of P_{n,A}/n! against exact counts.
    Yakymiv {
        #[arg(long, value_parser = parse_set)]
        set: AdmissibleSet,
        /// One or more sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
        n: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact partial sums Σ_{k<=n} P_k/k! next to e^c·log n.
    PartialSums {
        #[arg(long, value_parser = parse_set, default_value = "primes")]
        set: AdmissibleSet,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 6)]
        digits: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Seeded Monte Carlo estimates over uniform or exactly sampled permutations.
    Sample {
        /// One or more sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw exactly uniform permutations from S_{n,A} and test cycle-type frequencies.
        #[arg(long, conflicts_with = "coincidence")]
        exact: bool,
        /// Estimate P(order = product) and P(all cycle lengths prime) on one stream.
        #[arg(long)]
        coincidence: bool,
        /// Admissible set for --exact.
        #[arg(long, value_parser = parse_set, default_value = "primes")]
        set: AdmissibleSet,
        /// Worker threads (results do not depend on this).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
        #[command(flatten)]
        output: JsonOutput,
    },
    /// Run verification checks and print a summary; exit 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Samples for the exact-sampler check.
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Write the summary to this path instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Oracles,
    Inequality,
    Tauberian,
    Sampler,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report to this path (atomically) instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct JsonOutput {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to this path (atomically) instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_set(s: &str) -> Result<AdmissibleSet, String> {
    s.parse().map_err(|e: prime_cycles::Error| e.to_string())
}

fn parse_positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s}")),
    }
}
