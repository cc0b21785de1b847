//! Reproducible parallel Monte Carlo engine and experiment statistics.
//!
//! Replicate `i` of a run draws from a stream derived only from
//! `(master_seed, i)`, results are merged in replicate order, and every
//! output is therefore bit-identical across worker counts and scheduling.

mod engine;
mod stats;
mod stream;

pub use engine::{
    berry_esseen_distance, coverage_experiment, run_replicates, tail_ratio_sweep, Ar1StatMode,
    CoverageEstimate, KsEstimate, McConfig, ModelSpec, TailRatioEstimate, TailSide,
    write_tail_ratio_csv,
};
pub use stats::{dkw_bound, ks_one_sample, ks_two_sample, rate_fit, wilson_95, RateFit, WilsonInterval, WILSON_Z95};
pub use stream::replicate_rng;
