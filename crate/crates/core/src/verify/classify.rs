use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::p_part;
use crate::error::Result;
use crate::groups::{construct, fingerprint, GroupSpec};
use crate::perm::PermGroup;

/// The five shapes of a group `G = O^{p'}(G)` with `Pr_p(G) = f(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EqualityTag {
    /// `p`-group with `|G:Z(G)| = p²`
    #[serde(rename = "i")]
    PGroup,
    /// `SL₂(p) × Q` or `PSL₂(p) × Q`, `Q` abelian, `p ≥ 5`
    #[serde(rename = "ii")]
    Linear,
    /// `(C_2)^r : C_{p^k} × A`, `p = 2^r − 1`
    #[serde(rename = "iii")]
    Singer,
    /// `Q_8 : C_{3^k} × A`, `p = 3`
    #[serde(rename = "iv")]
    Quaternion,
    /// `C_3 : C_{2^k} × A`, `p = 2`
    #[serde(rename = "v")]
    Dihedral,
}

impl fmt::Display for EqualityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EqualityTag::PGroup => "i",
            EqualityTag::Linear => "ii",
            EqualityTag::Singer => "iii",
            EqualityTag::Quaternion => "iv",
            EqualityTag::Dihedral => "v",
        })
    }
}

/// Partitions of `n` into nonincreasing positive parts.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `p^e`, as lists of cyclic factors.
pub fn abelian_p_groups(p: u64, e: u32) -> Vec<Vec<GroupSpec>> {
    partitions(e)
        .into_iter()
        .map(|parts| parts.into_iter().map(|a| GroupSpec::cyclic(p.pow(a))).collect())
        .collect()
}

fn with_abelian_factor(base: GroupSpec, abelian: Vec<GroupSpec>) -> GroupSpec {
    if abelian.is_empty() {
        base
    } else {
        let mut factors = vec![base];
        factors.extend(abelian);
        GroupSpec::direct_product(factors)
    }
}

/// Reference groups of the given order for the shapes other than a `p`-group.
fn references(p: u64, order: u128) -> Vec<(EqualityTag, GroupSpec)> {
    let mut bases: Vec<(EqualityTag, GroupSpec)> = Vec::new();
    if p >= 5 {
        bases.push((EqualityTag::Linear, GroupSpec::psl2(p)));
        bases.push((EqualityTag::Linear, GroupSpec::sl2(p)));
    }
    if (p + 1).is_power_of_two() && p >= 3 {
        let r = (p + 1).trailing_zeros() as u64;
        let mut k = 1;
        while (1u128 << r) * (p as u128).pow(k as u32) <= order {
            bases.push((EqualityTag::Singer, GroupSpec::singer_mersenne(r, k)));
            k += 1;
        }
    }
    let mut k = 1;
    while p == 3 && 8 * 3u128.pow(k as u32) <= order {
        bases.push((EqualityTag::Quaternion, GroupSpec::q8_ext(k)));
        k += 1;
    }
    let mut k = 1;
    while p == 2 && 3 * 2u128.pow(k as u32) <= order {
        bases.push((EqualityTag::Dihedral, GroupSpec::c3_ext(k)));
        k += 1;
    }
    let mut out = Vec::new();
    for (tag, base) in bases {
        let Ok(base_order) = base.expected_order() else { continue };
        if !order.is_multiple_of(base_order) {
            continue;
        }
        let cofactor = order / base_order;
        if p_part(cofactor, p) != cofactor {
            continue;
        }
        let e = exponent(cofactor, p);
        for abelian in abelian_p_groups(p, e) {
            out.push((tag, with_abelian_factor(base.clone(), abelian)));
        }
    }
    out
}

/// `e` with `p^e = n`, for `n` a power of `p`.
fn exponent(mut n: u128, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        n /= p as u128;
        e += 1;
    }
    e
}

/// Assigns a shape to `group`, assumed to satisfy `G = O^{p'}(G)` and
/// `Pr_p(G) = f(p)`. Shapes beyond a `p`-group are recognized by fingerprint
/// against constructed references; `None` means no shape fits.
pub fn classify_equality(group: &PermGroup, p: u64) -> Result<Option<(EqualityTag, Option<GroupSpec>)>> {
    let order = group.order();
    if group.is_p_group(p) {
        let center = group.center()?.order();
        let p2 = (p as u128) * (p as u128);
        return Ok((order / center == p2).then_some((EqualityTag::PGroup, None)));
    }
    let fp = fingerprint(group)?;
    for (tag, spec) in references(p, order) {
        let reference = construct(&spec)?.with_bound(group.enumeration_bound());
        if fingerprint(&reference)? == fp {
            return Ok(Some((tag, Some(spec))));
        }
    }
    Ok(None)
}
