//! Coset actions and fixed point ratios.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::prob::Rational;

/// Largest index accepted by [`coset_action`].
pub const DEFAULT_DEGREE_BOUND: usize = 10_000;

/// The action of `G` on the right cosets `Hg` of a subgroup `H`.
///
/// Cosets are numbered in increasing order of their minimal element.
#[derive(Clone, Debug)]
pub struct CosetAction {
    parent: PermGroup,
    stabilizer: PermGroup,
    image: PermGroup,
    /// Coset of each element of the parent, indexed like its sorted element set.
    coset_of: Vec<u32>,
    representatives: Vec<Permutation>,
}

impl CosetAction {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn stabilizer(&self) -> &PermGroup {
        &self.stabilizer
    }

    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    /// The homomorphic image as a permutation group of degree `|G:H|`.
    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn kernel_order(&self) -> u128 {
        self.parent.order() / self.image.order()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    fn coset_index(&self, g: &Permutation) -> Result<usize> {
        let elems = self.parent.elements()?;
        let pos = elems.position(g).ok_or(Error::NotAMember)?;
        Ok(self.coset_of[pos] as usize)
    }

    /// Image of `z ∈ G`: coset `Hg ↦ Hgz`.
    pub fn image_of(&self, z: &Permutation) -> Result<Permutation> {
        if !self.parent.contains(z) {
            return Err(Error::NotAMember);
        }
        let images = self
            .representatives
            .iter()
            .map(|g| self.coset_index(&g.mul(z)).map(|i| i as u32))
            .collect::<Result<Vec<_>>>()?;
        Ok(Permutation::from_images_unchecked(images))
    }
}

pub fn coset_action(group: &PermGroup, subgroup: &PermGroup) -> Result<CosetAction> {
    coset_action_bounded(group, subgroup, DEFAULT_DEGREE_BOUND)
}

pub fn coset_action_bounded(group: &PermGroup, subgroup: &PermGroup, bound: usize) -> Result<CosetAction> {
    if !subgroup.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    let index = group.order() / subgroup.order();
    if index > bound as u128 {
        return Err(Error::IndexTooLarge { index, bound });
    }
    let elems = group.elements()?;
    let helems = subgroup.elements()?;
    const UNSET: u32 = u32::MAX;
    let mut coset_of = vec![UNSET; elems.len()];
    let mut representatives = Vec::with_capacity(index as usize);
    for (i, g) in elems.iter().enumerate() {
        if coset_of[i] != UNSET {
            continue;
        }
        let id = representatives.len() as u32;
        for h in helems.iter() {
            let pos = elems.position(&h.mul(g)).expect("H ≤ G");
            coset_of[pos] = id;
        }
        representatives.push(g.clone());
    }
    let mut action = CosetAction {
        parent: group.clone(),
        stabilizer: subgroup.clone(),
        image: PermGroup::trivial(representatives.len()),
        coset_of,
        representatives,
    };
    let gens = group.generators().iter().map(|g| action.image_of(g)).collect::<Result<Vec<_>>>()?;
    action.image = PermGroup::new(action.degree(), gens)?.with_bound(group.enumeration_bound());
    Ok(action)
}

/// `G/N` realized as the action on the cosets of a normal subgroup `N`. The
/// kernel is checked to be exactly `N`.
pub fn quotient(group: &PermGroup, normal: &PermGroup) -> Result<CosetAction> {
    quotient_bounded(group, normal, DEFAULT_DEGREE_BOUND)
}

pub fn quotient_bounded(group: &PermGroup, normal: &PermGroup, bound: usize) -> Result<CosetAction> {
    if !group.is_normal(normal)? {
        return Err(Error::NotNormal);
    }
    let act = coset_action_bounded(group, normal, bound)?;
    assert_eq!(act.kernel_order(), normal.order(), "kernel of the coset action of a normal subgroup");
    Ok(act)
}

/// Proportion of cosets fixed by `z`.
pub fn fixed_point_ratio(act: &CosetAction, z: &Permutation) -> Result<Rational> {
    let image = act.image_of(z)?;
    Ok(Rational::new(image.fixed_points() as u128, act.degree() as u128))
}

/// `|z^G ∩ H| / |z^G|`, which equals the fixed point ratio of `z` on `G/H`.
pub fn fixed_point_ratio_by_class(act: &CosetAction, z: &Permutation) -> Result<Rational> {
    let class = act.parent.class_elements(z)?;
    let inside = class.iter().filter(|y| act.stabilizer.contains(y)).count();
    Ok(Rational::new(inside as u128, class.len() as u128))
}

/// `|y^G ∩ C_G(x)| / |y^G|`: the chance that a random conjugate of `y`
/// commutes with `x`.
pub fn class_commuting_ratio(group: &PermGroup, x: &Permutation, y: &Permutation) -> Result<Rational> {
    if !group.contains(x) {
        return Err(Error::NotAMember);
    }
    let class = group.class_elements(y)?;
    let commuting = class.iter().filter(|z| z.commutes_with(x)).count();
    Ok(Rational::new(commuting as u128, class.len() as u128))
}

/// Average number of fixed points over all elements of `G` (Burnside), which
/// counts the orbits of the action.
pub fn burnside_orbit_count(act: &CosetAction) -> Result<Rational> {
    let mut total = 0u128;
    for class in act.parent.conjugacy_classes()? {
        total += class.size * act.image_of(&class.representative)?.fixed_points() as u128;
    }
    Ok(Rational::new(total, act.parent.order()))
}

/// Orbit count of a permutation group on its points, by union–find over the
/// generators.
pub fn orbit_count(group: &PermGroup) -> usize {
    let n = group.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for g in group.generators() {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Stabilizer of a point in `G`.
pub fn point_stabilizer(group: &PermGroup, point: usize) -> Result<PermGroup> {
    let elems = group.elements()?;
    let stab: Vec<Permutation> = elems.iter().filter(|g| g.apply(point) == point).cloned().collect();
    Ok(group.subgroup_from_elements(stab))
}
