//! Random maximal chains `X(0) ⊂ X(1) ⊂ ⋯ ⊂ X(n)` coupling all slices, and
//! the statistics built on them.

mod binomial;
mod chain;
mod distribution;
mod influence;
mod martingale;
mod parallel;
mod pmf;
mod profile;
mod tv;

pub use binomial::{binomial_pmf, chernoff_bound, deviation_tail};
pub use chain::{sample_chain, ChainSample};
pub use distribution::{
    coupled_second_moment, coupled_second_moment_enumerated, exact_distribution,
    exact_distribution_enumerated, exact_distribution_with_budget, symmetry_classes, Domain,
    MomentMode, SecondMoment, NESTED_PAIR_BUDGET,
};
pub use influence::{
    disagreement, hybrid_bound, total_influence, total_influence_slice_sum, BooleanFunction,
    HybridBound,
};
pub use martingale::{
    c_identity_rhs, down_increment, expect_partial_chain, martingale_moment, martingale_terms,
    telescoping_sides, up_increment, MartingaleTerms, Step,
};
pub use parallel::{run_workers, split_counts, worker_rng};
pub use pmf::{cdf_distance, levy_distance, levy_distance_bisect, tv_distance, Pmf};
pub use profile::{empirical_profile, mixture_samples, ProfileSamples};
pub use tv::projected_tv;
