//! Closed-form Sharma-Mittal, Rényi, Tsallis and Shannon entropies and
//! divergences for exponential families, with Monte Carlo oracles and
//! maximum-likelihood fitting.
//!
//! ```
//! use expfam_core::{families::GaussianSource, measures::{sm_entropy, OrderPair}};
//!
//! let theta = GaussianSource::univariate(0.0, 1.0).unwrap().to_natural();
//! let h = sm_entropy(&theta, OrderPair::shannon()).unwrap();
//! assert!((h.value - 1.4189385332046727).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimation;
pub mod expfam;
pub mod families;
pub mod linalg;
pub mod measures;

pub use error::{Error, Result};
pub use expfam::{sufficient_stat, ExpectationParam, FamilyId, FamilySpec, NaturalParam};
pub use linalg::{SpdMatrix, SymMatrix};
pub use measures::{OrderPair, Regime};
