use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::chain::StabChain;
use super::Permutation;
use crate::error::{Error, Result};

/// Default limit on `|G|` for operations that enumerate the whole group.
pub const DEFAULT_ENUMERATION_BOUND: usize = 200_000;

/// The sorted element list of a group together with a reverse index.
#[derive(Debug)]
pub struct ElementSet {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl ElementSet {
    fn new(mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        Self { elements, index }
    }

    pub fn as_slice(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub representative: Permutation,
    pub size: u128,
    pub element_order: u64,
}

/// Conjugacy classes in canonical order plus the class index of every element.
#[derive(Debug)]
pub struct ClassData {
    pub classes: Vec<ConjClass>,
    /// `class_of[i]` is the class of the `i`-th element of the sorted element set.
    pub class_of: Vec<u32>,
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain and (for groups within the enumeration bound) a lazily built element
/// set. Subgroups always live on the parent's degree.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    bound: usize,
    /// Order known in closed form; lets huge groups be flagged without
    /// building a chain.
    known_order: Option<u128>,
    chain: OnceLock<Arc<StabChain>>,
    elements: OnceLock<Arc<ElementSet>>,
    classes: OnceLock<Arc<ClassData>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        Ok(Self::from_parts(degree, generators, DEFAULT_ENUMERATION_BOUND))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new(), DEFAULT_ENUMERATION_BOUND)
    }

    fn from_parts(degree: usize, mut generators: Vec<Permutation>, bound: usize) -> Self {
        generators.retain(|g| !g.is_identity());
        Self {
            degree,
            generators,
            bound,
            known_order: None,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// Same group, different enumeration bound.
    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    pub fn enumeration_bound(&self) -> usize {
        self.bound
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| Arc::new(StabChain::new(self.degree, &self.generators)))
    }

    pub fn order(&self) -> u128 {
        self.known_order.unwrap_or_else(|| self.chain().order())
    }

    pub(crate) fn with_known_order(mut self, order: u128) -> Self {
        self.known_order = Some(order);
        self
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        if let Some(elems) = self.elements.get() {
            return elems.contains(x);
        }
        self.chain().contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn fits_bound(&self) -> bool {
        self.order() <= self.bound as u128
    }

    pub(crate) fn require_enumerable(&self) -> Result<()> {
        if self.fits_bound() {
            Ok(())
        } else {
            Err(Error::GroupTooLarge { order: self.order(), bound: self.bound })
        }
    }

    pub fn elements(&self) -> Result<Arc<ElementSet>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        self.require_enumerable()?;
        Ok(self.elements.get_or_init(|| Arc::new(ElementSet::new(self.chain().elements()))).clone())
    }

    /// Subgroup generated by `gens` (which must live on this degree).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch { left: self.degree, right: g.degree() });
            }
        }
        Ok(Self::from_parts(self.degree, gens, self.bound))
    }

    /// Subgroup from a complete, closed element list. Generators are picked
    /// greedily in sorted order; the element cache is filled directly.
    pub(crate) fn subgroup_from_elements(&self, elements: Vec<Permutation>) -> Self {
        let set = ElementSet::new(elements);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabChain::new(self.degree, &gens);
        for x in set.iter() {
            if chain.order() as usize == set.len() {
                break;
            }
            if !chain.contains(x) {
                gens.push(x.clone());
                chain = StabChain::new(self.degree, &gens);
            }
        }
        debug_assert_eq!(chain.order() as usize, set.len());
        let group = Self::from_parts(self.degree, gens, self.bound);
        let _ = group.chain.set(Arc::new(chain));
        let _ = group.elements.set(Arc::new(set));
        group
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same set of elements.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && self.order() == other.order()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    /// Conjugacy classes sorted by element order, then size, then representative.
    pub fn class_data(&self) -> Result<Arc<ClassData>> {
        if let Some(c) = self.classes.get() {
            return Ok(c.clone());
        }
        let elems = self.elements()?;
        Ok(self.classes.get_or_init(|| Arc::new(compute_classes(self, &elems))).clone())
    }

    pub fn conjugacy_classes(&self) -> Result<Vec<ConjClass>> {
        Ok(self.class_data()?.classes.clone())
    }

    /// Index of the class containing `x`.
    pub fn class_index(&self, x: &Permutation) -> Result<usize> {
        let elems = self.elements()?;
        let pos = elems.position(x).ok_or(Error::NotAMember)?;
        Ok(self.class_data()?.class_of[pos] as usize)
    }

    /// All elements of the class of `x`.
    pub fn class_elements(&self, x: &Permutation) -> Result<Vec<Permutation>> {
        let k = self.class_index(x)? as u32;
        let data = self.class_data()?;
        let elems = self.elements()?;
        Ok(elems.iter().zip(&data.class_of).filter(|(_, &c)| c == k).map(|(e, _)| e.clone()).collect())
    }

    pub fn centralizer(&self, x: &Permutation) -> Result<PermGroup> {
        if !self.contains(x) {
            return Err(Error::NotAMember);
        }
        let elems = self.elements()?;
        let c = elems.iter().filter(|g| g.commutes_with(x)).cloned().collect();
        Ok(self.subgroup_from_elements(c))
    }
}

fn compute_classes(group: &PermGroup, elems: &ElementSet) -> ClassData {
    const UNSET: u32 = u32::MAX;
    let mut class_of = vec![UNSET; elems.len()];
    let mut raw: Vec<(ConjClass, u32)> = Vec::new();
    for (start, x) in elems.iter().enumerate() {
        if class_of[start] != UNSET {
            continue;
        }
        let id = raw.len() as u32;
        class_of[start] = id;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let y = &elems.as_slice()[orbit[head]];
            head += 1;
            for g in group.generators() {
                let pos = elems.position(&y.conjugate_by(g)).expect("closed under conjugation");
                if class_of[pos] == UNSET {
                    class_of[pos] = id;
                    orbit.push(pos);
                }
            }
        }
        let class = ConjClass {
            representative: x.clone(),
            size: orbit.len() as u128,
            element_order: x.order(),
        };
        raw.push((class, id));
    }
    raw.sort_by(|(a, _), (b, _)| {
        (a.element_order, a.size, &a.representative).cmp(&(b.element_order, b.size, &b.representative))
    });
    let mut remap = vec![0u32; raw.len()];
    for (new, (_, old)) in raw.iter().enumerate() {
        remap[*old as usize] = new as u32;
    }
    for c in &mut class_of {
        *c = remap[*c as usize];
    }
    ClassData { classes: raw.into_iter().map(|(c, _)| c).collect(), class_of }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}
