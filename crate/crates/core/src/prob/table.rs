use serde::{Deserialize, Serialize};

use super::Rational;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRow {
    pub representative: Permutation,
    pub element_order: u64,
    pub class_size: u128,
    /// `|C_G(x)_p|`
    pub centralizer_p: u128,
    /// `|C_G(x)_p| / |G_p|`
    pub ratio: Rational,
}

/// Per-class centralizer ratios of `p`-elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub prime: u64,
    pub p_elements: u128,
    pub rows: Vec<RatioRow>,
}

impl RatioTable {
    /// `Σ |x^G|·|C_G(x)_p|`, the number of commuting pairs of `p`-elements.
    pub fn numerator(&self) -> u128 {
        self.rows.iter().map(|r| r.class_size * r.centralizer_p).sum()
    }

    pub fn pr_p(&self) -> Rational {
        Rational::new(self.numerator(), self.p_elements * self.p_elements)
    }

    pub fn fp_max(&self) -> Option<Rational> {
        self.nontrivial().map(|r| r.ratio.clone()).max()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &RatioRow> {
        self.rows.iter().filter(|r| r.element_order > 1)
    }
}
