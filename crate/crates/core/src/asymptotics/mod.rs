//! Floating-point probes of the generating functions near `z = 1`, the
//! constants they converge to, the density-based estimator and the table of
//! limit ratios built from exact counts.

mod constants;
mod estimator;
mod gamma;
mod probes;
mod ratios;

pub use constants::{Constants, Provenance, PUBLISHED_C, PUBLISHED_E_C};
pub use estimator::{harmonic_estimate, yakymiv_ratio, yakymiv_relative_error};
pub use gamma::gamma_fn;
pub use probes::{
    f_eval, lemma1_residual, lemma2_residual, log_inv_one_minus, phi, phi_prime, required_prime_limit,
    ProbePoint, LEMMA_Z_MAX, LEMMA_Z_MIN,
};
pub use ratios::{limit_ratios, to_csv as ratios_csv, to_json as ratios_json, RatioRow, CSV_HEADER};
