use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::prime_divisors;
use crate::error::Result;
use crate::perm::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFingerprint {
    pub p: u64,
    pub p_elements: u128,
    pub sylow_order: u128,
    pub sylow_normal: bool,
    pub sylow_abelian: bool,
    pub core_order: u128,
}

/// Isomorphism invariants. Equal fingerprints are necessary, not sufficient,
/// for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u128,
    /// element order -> number of elements of that order
    pub element_orders: BTreeMap<u64, u128>,
    pub center_order: u128,
    pub derived_order: u128,
    pub primes: Vec<PrimeFingerprint>,
}

pub fn fingerprint(group: &PermGroup) -> Result<Fingerprint> {
    let elems = group.elements()?;
    let mut element_orders = BTreeMap::new();
    for x in elems.iter() {
        *element_orders.entry(x.order()).or_insert(0u128) += 1;
    }
    let mut primes = Vec::new();
    for p in prime_divisors(group.order()) {
        let sylow = group.sylow_subgroup(p)?;
        let p_elements = element_orders
            .iter()
            .filter(|(&o, _)| crate::arith::is_power_of(o, p))
            .map(|(_, &c)| c)
            .sum();
        primes.push(PrimeFingerprint {
            p,
            p_elements,
            sylow_order: sylow.order(),
            sylow_normal: group.is_normal(&sylow)?,
            sylow_abelian: sylow.is_abelian(),
            core_order: group.p_core(p)?.order(),
        });
    }
    Ok(Fingerprint {
        order: group.order(),
        element_orders,
        center_order: group.center()?.order(),
        derived_order: group.derived_subgroup()?.order(),
        primes,
    })
}
