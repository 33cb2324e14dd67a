//! Sampling, Monte Carlo oracles and maximum-likelihood fitting.
//!
//! Every random quantity is a pure function of `(seed, n)`: see [`rng`] for
//! the substream rule that keeps chunked parallel runs identical to serial
//! ones.

mod carrier;
mod mc;
mod mle;
pub mod rng;
mod sampler;

pub use carrier::{
    carrier_expectation_exact, log_carrier_expectation_exact, mc_carrier_expectation,
    sm_entropy_carrier_corrected,
};
pub use mc::{mc_c_alpha, mc_malpha, mc_sm_divergence, mc_sm_entropy, McEstimate};
pub use mle::mle_fit;
pub use sampler::{sample, SampleSet};

/// Default Monte Carlo sample count.
pub const DEFAULT_SAMPLES: usize = 1_000_000;
