//! Nearest-neighbor digraph invariants of point samples and the exact
//! distribution theory of those invariants for one-dimensional uniform data.
//!
//! The crate is `no_std` and needs only `alloc`. IO, simulation and the
//! command-line front end live in the `nnstat` companion crate.
//!
//! * [`digraph`] builds nearest-neighbor digraphs in any dimension and counts
//!   reflexive pairs `R_n`, shared-NN pairs `Q_n` and in-degree classes.
//! * [`perm`] reduces a 1-D sample to the rank permutation of its interior
//!   spacings and evaluates the indicator sums that reproduce `R_n` and `Q_n`.
//! * [`exact`] holds the exact pmf of `R_n`, closed-form moments, indicator
//!   covariance tables, enumeration oracles and the dimension constants.
//! * [`inference`] turns the exact pmf into one-sample tests.
//! * [`special`] provides the normal distribution function and the
//!   Kolmogorov-Smirnov machinery used by the simulation harness.
#![no_std]

extern crate alloc;

pub mod digraph;
mod error;
pub mod exact;
pub mod inference;
pub mod perm;
pub mod special;

pub use digraph::{build_nn_digraph, count_pairs, NnDigraph, PairCounts, PointSample};
pub use error::{Error, Result};
pub use exact::{ExactPmf, MomentSource, Rational, SourcedMoment};
pub use inference::{Alternative, TestMethod, TestResult};
pub use perm::{RankPermutation, SpacingVector};
