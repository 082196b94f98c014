use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image table is not a bijection on 0..{degree}")]
    NotAPermutation { degree: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: u128, bound: usize },

    #[error("coset action of index {index} exceeds the degree bound {bound}")]
    IndexTooLarge { index: u128, bound: usize },

    #[error("element is not in the group")]
    NotAMember,

    #[error("subgroup is not contained in the group")]
    NotASubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("element is not a {p}-element")]
    NotPElement { p: u64 },

    #[error("group has no nontrivial {p}-element")]
    NoNontrivialPElement { p: u64 },

    #[error("orders are not coprime: |K| = {k_order}, o(x)o(y) = {element_orders}")]
    NotCoprime { k_order: u128, element_orders: u128 },

    #[error("x and y lie in different cosets of K")]
    DifferentCosets,

    #[error("element does not normalize K")]
    DoesNotNormalize,

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}
