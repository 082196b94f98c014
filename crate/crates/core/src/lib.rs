//! Exact commuting probabilities of `p`-elements in finite permutation groups.
//!
//! `Pr_p(G)` is the probability that two uniformly random `p`-elements of `G`
//! commute. This crate computes it (and related centralizer ratios) exactly
//! over a catalog of permutation groups and checks the known structural
//! statements about it across a corpus.

pub mod arith;
pub mod error;
pub mod fpr;
pub mod groups;
pub mod perm;
pub mod prob;
pub mod verify;

pub use error::{Error, Result};
pub use groups::{construct, GroupKind, GroupSpec};
pub use perm::{PermGroup, Permutation};
pub use prob::Rational;

/// Version of the computation engine; cached results are keyed on it.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
