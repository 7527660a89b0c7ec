//! Ordinal-pattern statistics of real-valued time series and the group
//! entropies built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! - [`ordinal`]: ordinal patterns of windows, Lehmer encoding, sliding extraction.
//! - [`census`]: pattern distributions, missing patterns, transition matrices and
//!   the finite permutation-complexity curve `g(L,T)`.
//! - [`entropy`]: Shannon, Rényi, Tsallis and the Z-entropy family, group
//!   logarithms, composition laws, the principal Lambert W branch.
//! - [`classes`]: permutation-complexity classes (exponential, factorial,
//!   sub-factorial), class-tailored permutation entropies and rates, growth
//!   classification.
//! - [`process`]: seeded generators (white noise, fGn, fBm, logistic and
//!   noisy maps) and series I/O.
//! - [`logistic`]: closed-form ordinal partition, arcsine measure and exact
//!   transition probabilities of the full logistic map.
//! - [`cli`]: the `ordent` command-line front end.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod census;
pub mod classes;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod logistic;
pub mod ordinal;
pub mod process;

pub use census::{
    census, finite_pc_curve, forbidden_patterns, transition_matrix, CensusCurve,
    PatternDistribution, TransitionMatrix,
};
pub use classes::{
    classify_growth, entropy_rate, metric_perm_entropy, topological_perm_entropy,
    ComplexityClass, EntropyOrder, GrowthClass, GrowthFit, RateEstimate,
};
pub use entropy::{Distribution, GroupLogarithm, CompositionLaw};
pub use error::{Error, Result};
pub use ordinal::{decode, encode, extract_patterns, pattern_of, OrdinalPattern, PatternCode, TimeSeries};
pub use process::{generate, ProcessKind, ProcessSpec};
