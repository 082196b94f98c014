//! Permutation groups: elements, stabilizer chains, enumeration, conjugacy
//! classes and normal structure.

mod chain;
mod group;
mod permutation;
mod structure;

pub use chain::StabChain;
pub use group::{ClassData, ConjClass, ElementSet, PermGroup, DEFAULT_ENUMERATION_BOUND};
pub use permutation::Permutation;
