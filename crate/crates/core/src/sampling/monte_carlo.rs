//! Seeded, schedule-independent Monte Carlo estimates.
//!
//! Trial `i` draws from ChaCha8 with the key derived from `seed` and stream
//! number `i`, so every trial sees the same random words no matter which
//! worker runs it. Reductions only add integer counts.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::exact::ExactSampler;
use super::permutation::{cycle_lengths, lengths_pairwise_coprime, uniform_permutation};
use crate::counting::{is_prime, CountTable, CycleType};
use crate::sampling::cycle_type_of;
use crate::{Error, Result};

/// Random stream for one trial.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    base: ChaCha8Rng,
}

impl TrialStreams {
    pub fn new(seed: u64) -> Self {
        TrialStreams {
            base: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn stream(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(trial);
        rng.set_word_pos(0);
        rng
    }
}

/// Proportion of successes over `trials` Bernoulli trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialSummary {
    pub n: usize,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub seed: u64,
}

impl TrialSummary {
    pub fn new(n: usize, trials: u64, successes: u64, seed: u64) -> Self {
        let estimate = successes as f64 / trials as f64;
        TrialSummary {
            n,
            trials,
            successes,
            estimate,
            std_error: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
            seed,
        }
    }

    /// `(estimate - reference) / std_error`; infinite if the error is zero and they differ.
    pub fn z_score(&self, reference: f64) -> f64 {
        let d = self.estimate - reference;
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    Ok(())
}

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool when `None`.
fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn all_prime(lengths: &[usize]) -> bool {
    lengths.iter().all(|&k| is_prime(k as u64))
}

/// Fraction of uniform permutations of `[n]` whose cycle lengths are all prime.
pub fn estimate_prime_fraction(n: usize, trials: u64, seed: u64) -> Result<TrialSummary> {
    estimate_prime_fraction_with_workers(n, trials, seed, None)
}

pub fn estimate_prime_fraction_with_workers(
    n: usize,
    trials: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<TrialSummary> {
    check_trials(trials)?;
    let streams = TrialStreams::new(seed);
    let successes = with_workers(workers, || {
        (0..trials)
            .into_par_iter()
            .filter(|&i| {
                let mut rng = streams.stream(i);
                let p = uniform_permutation(n, &mut rng);
                all_prime(&cycle_lengths(p.image()))
            })
            .count() as u64
    })?;
    Ok(TrialSummary::new(n, trials, successes, seed))
}

/// `P(order = product)` and `P(all cycle lengths prime)` on one shared sample stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoincidenceSummary {
    pub order_equals_product: TrialSummary,
    pub all_prime: TrialSummary,
    /// Trials on which the two events had the same truth value.
    pub agreements: u64,
    pub difference: f64,
    /// Standard error of the paired difference.
    pub difference_std_error: f64,
}

pub fn coincidence_estimate(n: usize, trials: u64, seed: u64) -> Result<CoincidenceSummary> {
    coincidence_estimate_with_workers(n, trials, seed, None)
}

pub fn coincidence_estimate_with_workers(
    n: usize,
    trials: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<CoincidenceSummary> {
    check_trials(trials)?;
    let streams = TrialStreams::new(seed);
    // (order = product, all prime, only first, only second)
    let (coprime, prime, only_a, only_b) = with_workers(workers, || {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = streams.stream(i);
                let p = uniform_permutation(n, &mut rng);
                let lengths = cycle_lengths(p.image());
                let a = lengths_pairwise_coprime(&lengths);
                let b = all_prime(&lengths);
                (a as u64, b as u64, (a && !b) as u64, (b && !a) as u64)
            })
            .reduce(|| (0, 0, 0, 0), |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2, x.3 + y.3))
    })?;
    let t = trials as f64;
    let (pa, pb) = (only_a as f64 / t, only_b as f64 / t);
    // per-trial difference takes values +1, -1, 0
    let var = (pa + pb - (pa - pb).powi(2)) / t;
    Ok(CoincidenceSummary {
        order_equals_product: TrialSummary::new(n, trials, coprime, seed),
        all_prime: TrialSummary::new(n, trials, prime, seed),
        agreements: trials - only_a - only_b,
        difference: (coprime as f64 - prime as f64) / t,
        difference_std_error: var.sqrt(),
    })
}

/// Mean number of fixed points of a uniform permutation, with its standard error.
pub fn mean_fixed_points(n: usize, trials: u64, seed: u64) -> Result<(f64, f64)> {
    check_trials(trials)?;
    let streams = TrialStreams::new(seed);
    let (sum, sum_sq) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = streams.stream(i);
            let f = uniform_permutation(n, &mut rng).fixed_points() as u64;
            (f, f * f)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let t = trials as f64;
    let mean = sum as f64 / t;
    let var = (sum_sq as f64 / t - mean * mean) * t / (t - 1.0).max(1.0);
    Ok((mean, (var / t).sqrt()))
}

/// Observed cycle-type frequencies of the exact sampler against exact probabilities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiSquareReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// `(cycle type, observed count, expected probability)`
    pub cells: Vec<(String, u64, f64)>,
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Every sample had all cycle lengths in the set and was a valid bijection.
    pub all_admissible: bool,
}

/// Pearson χ² statistic and upper-tail p-value.
pub fn chi_square(observed: &[u64], expected_probs: &[f64]) -> (f64, usize, f64) {
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(expected_probs)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dof = observed.len().saturating_sub(1).max(1);
    let p = ChiSquared::new(dof as f64).expect("dof > 0").sf(stat);
    (stat, dof, p)
}

/// Draws `samples` permutations with the exact sampler and tests the cycle-type
/// frequencies against `count(type)/P_{n,A}`.
pub fn exact_sampler_chi_square(counts: &CountTable, n: usize, samples: u64, seed: u64) -> Result<ChiSquareReport> {
    check_trials(samples)?;
    let sampler = ExactSampler::new(counts, n)?;
    let types = crate::counting::cycle_types(counts.set(), n)?;
    let total = counts.get(n)?;
    let probs: Vec<f64> = types
        .iter()
        .map(|t| crate::counting::big_ratio_f64(&t.permutation_count(), total))
        .collect();
    let streams = TrialStreams::new(seed);
    let set = counts.set();
    let observed: BTreeMap<CycleType, u64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = streams.stream(i);
            let p = sampler.sample(&mut rng);
            let mut m = BTreeMap::new();
            m.insert(cycle_type_of(&p), 1u64);
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let all_admissible = observed.keys().all(|t| t.all_in(set) && t.n() == n);
    let counts_per_type: Vec<u64> = types.iter().map(|t| observed.get(t).copied().unwrap_or(0)).collect();
    let (statistic, dof, p_value) = chi_square(&counts_per_type, &probs);
    Ok(ChiSquareReport {
        n,
        samples,
        seed,
        cells: types
            .iter()
            .zip(&counts_per_type)
            .zip(&probs)
            .map(|((t, &o), &p)| (t.to_string(), o, p))
            .collect(),
        statistic,
        dof,
        p_value,
        all_admissible: all_admissible && observed.values().sum::<u64>() == samples,
    })
}
