//! Exact commuting probabilities and centralizer ratios.
//!
//! For a prime `p`, `G_p` is the set of `p`-elements of `G` (identity
//! included), `Pr_p(G)` the proportion of commuting pairs in `G_p × G_p`, and
//! `f_p(x) = |C_G(x)_p| / |G_p|`.

mod rational;
mod table;

pub use rational::Rational;
pub use table::{RatioRow, RatioTable};

use rayon::prelude::*;

use crate::arith::{is_power_of, is_prime, p_part};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `f(p) = (p² + p − 1) / p³`.
pub fn f_threshold(p: u64) -> Result<Rational> {
    check_prime(p)?;
    let p = p as u128;
    Ok(Rational::new(p * p + p - 1, p * p * p))
}

/// `|G_p|`, counted class-wise.
pub fn count_p_elements(group: &PermGroup, p: u64) -> Result<u128> {
    check_prime(p)?;
    if p_part(group.order(), p) == 1 {
        return Ok(1);
    }
    let data = group.class_data()?;
    Ok(data.classes.iter().filter(|c| is_power_of(c.element_order, p)).map(|c| c.size).sum())
}

/// Number of `p`-elements commuting with `x`, i.e. `|C_G(x)_p|`.
fn centralizer_p_count(pelems: &[Permutation], x: &Permutation) -> u128 {
    pelems.iter().filter(|y| y.commutes_with(x)).count() as u128
}

/// `Pr_p(G)`, summed over conjugacy classes of `p`-elements:
/// `Σ |x^G|·|C_G(x)_p| / |G_p|²`. Equals 1 when `p ∤ |G|`.
pub fn pr_p(group: &PermGroup, p: u64) -> Result<Rational> {
    check_prime(p)?;
    if p_part(group.order(), p) == 1 {
        return Ok(Rational::one());
    }
    Ok(ratio_table(group, p)?.pr_p())
}

/// `Pr_p(G)` straight from the definition: commuting pairs in `G_p × G_p`.
/// Quadratic in `|G_p|`; serves as the oracle for the class-wise route.
pub fn pr_p_pair_count(group: &PermGroup, p: u64) -> Result<Rational> {
    let (pairs, n) = commuting_p_pairs(group, p)?;
    Ok(Rational::new(pairs, n * n))
}

/// `(#commuting pairs in G_p × G_p, |G_p|)`.
pub fn commuting_p_pairs(group: &PermGroup, p: u64) -> Result<(u128, u128)> {
    check_prime(p)?;
    let pelems = group.p_elements(p)?;
    let pairs: u128 = pelems.par_iter().map(|x| centralizer_p_count(&pelems, x)).sum();
    Ok((pairs, pelems.len() as u128))
}

/// `Pr(G) = k(G) / |G|`.
pub fn pr_global(group: &PermGroup) -> Result<Rational> {
    let k = group.class_data()?.classes.len() as u128;
    Ok(Rational::new(k, group.order()))
}

/// `Pr(G)` from the definition, by counting commuting pairs.
pub fn pr_global_pair_count(group: &PermGroup) -> Result<Rational> {
    let elems = group.elements()?;
    let pairs: u128 = elems
        .as_slice()
        .par_iter()
        .map(|x| elems.iter().filter(|y| y.commutes_with(x)).count() as u128)
        .sum();
    let n = elems.len() as u128;
    Ok(Rational::new(pairs, n * n))
}

fn check_p_element(group: &PermGroup, p: u64, x: &Permutation) -> Result<()> {
    check_prime(p)?;
    group.require_enumerable()?;
    if !group.contains(x) {
        return Err(Error::NotAMember);
    }
    if !is_power_of(x.order(), p) {
        return Err(Error::NotPElement { p });
    }
    Ok(())
}

/// `f_p(x) = |C_G(x)_p| / |G_p|`.
pub fn fp_ratio(group: &PermGroup, p: u64, x: &Permutation) -> Result<Rational> {
    check_p_element(group, p, x)?;
    let pelems = group.p_elements(p)?;
    Ok(Rational::new(centralizer_p_count(&pelems, x), pelems.len() as u128))
}

/// `f_p(G)`: the largest `f_p(x)` over nontrivial `p`-elements.
pub fn fp_max(group: &PermGroup, p: u64) -> Result<Rational> {
    ratio_table(group, p)?.fp_max().ok_or(Error::NoNontrivialPElement { p })
}

/// `Ψ(x)/Ψ(1)` for the conjugation action of `G` on `G_p`: the proportion of
/// `p`-elements fixed by conjugation by `x`.
pub fn permutation_character_ratio(group: &PermGroup, p: u64, x: &Permutation) -> Result<Rational> {
    check_p_element(group, p, x)?;
    let pelems = group.p_elements(p)?;
    let fixed = pelems.par_iter().filter(|y| y.conjugate_by(x) == **y).count();
    Ok(Rational::new(fixed as u128, pelems.len() as u128))
}

/// Per-class `f_p` values, identity row first.
pub fn ratio_table(group: &PermGroup, p: u64) -> Result<RatioTable> {
    check_prime(p)?;
    let data = group.class_data()?;
    let pelems = group.p_elements(p)?;
    let n = pelems.len() as u128;
    let rows = data
        .classes
        .par_iter()
        .filter(|c| is_power_of(c.element_order, p))
        .map(|c| {
            let cp = centralizer_p_count(&pelems, &c.representative);
            RatioRow {
                representative: c.representative.clone(),
                element_order: c.element_order,
                class_size: c.size,
                centralizer_p: cp,
                ratio: Rational::new(cp, n),
            }
        })
        .collect();
    Ok(RatioTable { group: None, prime: p, p_elements: n, rows })
}

/// Closed forms `(|C_G(x)_p|, |G_p|)` for `ex1(p, r)` and its witness `x`:
/// `((p³−p²)r^p + p², (p³−p²)r^p + (p⁴−p³)r^{p−1} + p²)`.
pub fn ex1_counts(p: u64, r: u64) -> Result<(u128, u128)> {
    crate::groups::GroupSpec::ex1(p, r).validate()?;
    let (p, r) = (p as u128, r as u128);
    let rp = r.pow(p as u32);
    let head = (p.pow(3) - p.pow(2)) * rp;
    Ok((head + p * p, head + (p.pow(4) - p.pow(3)) * r.pow(p as u32 - 1) + p * p))
}

/// Closed forms `(|C_G(x)_2|, |G_2|) = (4r² + 4, 4r² + 8r + 4)` for `ex2(r)`.
pub fn ex2_counts(r: u64) -> Result<(u128, u128)> {
    crate::groups::GroupSpec::ex2(r).validate()?;
    let r = r as u128;
    Ok((4 * r * r + 4, 4 * r * r + 8 * r + 4))
}

#[cfg(test)]
mod tests;
