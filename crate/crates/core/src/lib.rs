//! Partial information decomposition of the mutual information between a
//! discrete target and up to five discrete sources, using the
//! shared-exclusions redundancy measure, with the representational
//! complexity summary and its coarse-graining/subsampling reductions.
//!
//! The crate is organized along the pipeline:
//!
//! - [`lattice`]: antichains over source-index sets, the redundancy lattice
//!   and its order.
//! - [`distribution`] / [`records`]: sparse discrete joints, estimated from
//!   activation records or constructed exactly.
//! - [`isx`]: per-antichain shared-exclusion redundancies (informative and
//!   misinformative parts), data-parallel across antichains.
//! - [`pid`]: Moebius inversion into atoms; complexity, multiplicity and
//!   backbone summaries; the end-to-end [`pid::analyze`] driver.
//! - [`reduction`]: coarse-graining (with two-sided complexity bounds) and
//!   subsampling (no bounds).
//! - [`baselines`]: directed local differences and the derived order-k
//!   complexity.
//! - [`toys`]: exact golden encodings with published complexity values.
//!
//! Probability arithmetic is generic over [`prob::Prob`]: plain `f64` or
//! exact rationals (`--rational` mode in the CLI) for small golden cases.
//!
//! With the default `parallel` feature the per-antichain phase runs on a
//! rayon pool; disabling it leaves a purely sequential build. Results are
//! identical either way.

pub mod baselines;
pub mod distribution;
pub mod error;
pub mod isx;
pub mod lattice;
pub mod pid;
pub mod prob;
pub mod random;
pub mod records;
pub mod reduction;
pub mod report;
pub mod toys;

#[cfg(feature = "oracle")]
pub mod oracle;

pub use error::{Error, Result};
