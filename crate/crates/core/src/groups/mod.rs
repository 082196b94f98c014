//! Catalog of concrete group families as permutation groups.

mod construct;
mod fingerprint;
mod spec;

pub use construct::{construct, construct_str, ex1_witness, ex2_witness, smallgroup_420_30_normal_c3};
pub use fingerprint::{fingerprint, Fingerprint, PrimeFingerprint};
pub use spec::{parse_cycles, GroupKind, GroupSpec};

#[cfg(test)]
pub(crate) use construct::smallgroup_420_30_variant;
