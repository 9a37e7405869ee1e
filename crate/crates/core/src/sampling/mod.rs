//! Uniform and exact `A`-restricted permutation samplers and reproducible
//! Monte Carlo estimates over them.

mod exact;
mod monte_carlo;
mod permutation;

pub use exact::{sample_a_permutation, uniform_below, ExactSampler};
pub use monte_carlo::{
    chi_square, coincidence_estimate, coincidence_estimate_with_workers, estimate_prime_fraction,
    estimate_prime_fraction_with_workers, exact_sampler_chi_square, mean_fixed_points, ChiSquareReport,
    CoincidenceSummary, TrialStreams, TrialSummary,
};
pub use permutation::{cycle_type_of, order_and_product, uniform_permutation, Permutation};
