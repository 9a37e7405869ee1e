//! Exact counts of permutations whose cycle lengths lie in an admissible set,
//! with independent oracles, fixed-point renderings and coefficient scans.

pub mod cache;
mod cycle_type;
mod decimal;
mod oracle;
mod scans;
mod sets;
mod table;

pub use cycle_type::CycleType;
pub use decimal::{big_ratio_f64, partial_sum_egf, rational_f64, ratio_fixed, FixedDecimal, PartialSums};
pub use oracle::{
    brute_force_count, count_by_cycle_types, count_by_cycle_types_with_budget, cycle_types,
    BRUTE_FORCE_MAX_N, CYCLE_TYPE_MAX_N,
};
pub use scans::{inequality_scan, tauberian_coefficients, InequalityVariant, TauberianReport};
pub use sets::{is_prime, AdmissibleSet, EXPLICIT_MAX};
pub use table::{CountTable, DEFAULT_MAX_N};

pub use cycle_type::factorial;
