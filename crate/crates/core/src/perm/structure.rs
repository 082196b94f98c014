//! Normal structure: closures, Sylow subgroups, cores, centers.

use super::{PermGroup, Permutation};
use crate::arith::{gcd, is_power_of, is_prime, p_part};
use crate::error::{Error, Result};

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

impl PermGroup {
    /// All `p`-elements (identity included), in sorted order.
    pub fn p_elements(&self, p: u64) -> Result<Vec<Permutation>> {
        check_prime(p)?;
        let elems = self.elements()?;
        Ok(elems.iter().filter(|x| is_power_of(x.order(), p)).cloned().collect())
    }

    /// `H` is normal in `self`: every conjugate of a generator of `H` by a
    /// generator of `self` lies in `H`.
    pub fn is_normal(&self, h: &PermGroup) -> Result<bool> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotASubgroup);
        }
        Ok(self.normalizes(h))
    }

    /// Every generator of `self` normalizes `h` (no containment required).
    pub(crate) fn normalizes(&self, h: &PermGroup) -> bool {
        self.generators()
            .iter()
            .all(|g| h.generators().iter().all(|x| h.contains(&x.conjugate_by(g))))
    }

    fn element_normalizes(g: &Permutation, h: &PermGroup) -> bool {
        h.generators().iter().all(|x| h.contains(&x.conjugate_by(g)))
    }

    /// Smallest normal subgroup of `self` containing `s`.
    pub fn normal_closure(&self, s: &[Permutation]) -> Result<PermGroup> {
        for x in s {
            if x.degree() != self.degree() || !self.contains(x) {
                return Err(Error::NotASubgroup);
            }
        }
        let mut gens: Vec<Permutation> = s.iter().filter(|x| !x.is_identity()).cloned().collect();
        let mut closure = self.subgroup(gens.clone())?;
        loop {
            let missing = gens
                .iter()
                .flat_map(|x| self.generators().iter().map(move |g| x.conjugate_by(g)))
                .find(|y| !closure.contains(y));
            match missing {
                Some(y) => {
                    gens.push(y);
                    closure = self.subgroup(gens.clone())?;
                }
                None => return Ok(closure),
            }
        }
    }

    /// Sylow `p`-subgroup by normalizer ascent from a cyclic `p`-subgroup of
    /// maximal order.
    pub fn sylow_subgroup(&self, p: u64) -> Result<PermGroup> {
        check_prime(p)?;
        let target = p_part(self.order(), p);
        let pelems = self.p_elements(p)?;
        let start = pelems.iter().max_by(|a, b| a.order().cmp(&b.order()).then(b.cmp(a))).cloned();
        let mut sylow = match start {
            Some(x) if !x.is_identity() => self.subgroup(vec![x])?,
            _ => return self.subgroup(Vec::new()),
        };
        while sylow.order() < target {
            let y = pelems
                .iter()
                .find(|y| !sylow.contains(y) && Self::element_normalizes(y, &sylow))
                .cloned()
                .expect("a non-Sylow p-subgroup has a p-element in its normalizer outside it");
            let mut gens = sylow.generators().to_vec();
            gens.push(y);
            sylow = self.subgroup(gens)?;
        }
        Ok(sylow)
    }

    /// Number of Sylow `p`-subgroups, `|G : N_G(P)|`.
    pub fn sylow_count(&self, p: u64) -> Result<u128> {
        let sylow = self.sylow_subgroup(p)?;
        let normalizer = self.normalizer(&sylow)?;
        Ok(self.order() / normalizer.order())
    }

    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        let elems = self.elements()?;
        let n = elems.iter().filter(|g| Self::element_normalizes(g, h)).cloned().collect();
        Ok(self.subgroup_from_elements(n))
    }

    /// Largest normal `p`-subgroup `O_p(G)`.
    ///
    /// Starts from a Sylow subgroup `C` and replaces it by `C ∩ C^g` for a
    /// generator `g` not normalizing it; every step keeps `O_p(G)` inside `C`.
    pub fn p_core(&self, p: u64) -> Result<PermGroup> {
        let mut core = self.sylow_subgroup(p)?;
        loop {
            let Some(g) = self.generators().iter().find(|g| !Self::element_normalizes(g, &core)) else {
                return Ok(core);
            };
            // c ∈ C^g  iff  g c g⁻¹ ∈ C
            let ginv = g.inverse();
            let elems = core.elements()?;
            let meet = elems.iter().filter(|c| core.contains(&c.conjugate_by(&ginv))).cloned().collect();
            core = self.subgroup_from_elements(meet);
        }
    }

    /// `O^{p'}(G)`: the normal closure of a Sylow `p`-subgroup, which is the
    /// subgroup generated by all `p`-elements.
    pub fn p_residual(&self, p: u64) -> Result<PermGroup> {
        let sylow = self.sylow_subgroup(p)?;
        self.normal_closure(sylow.generators())
    }

    pub fn center(&self) -> Result<PermGroup> {
        let elems = self.elements()?;
        let z = elems
            .iter()
            .filter(|x| self.generators().iter().all(|g| x.commutes_with(g)))
            .cloned()
            .collect();
        Ok(self.subgroup_from_elements(z))
    }

    /// Commutator subgroup: normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let g = self.generators();
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let c = g[i].inverse().mul(&g[j].inverse()).mul(&g[i]).mul(&g[j]);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Derived series down to the first repeated term.
    pub fn derived_series(&self) -> Result<Vec<PermGroup>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup()?;
            if next.order() == last.order() {
                return Ok(series);
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                return Ok(series);
            }
        }
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().order() == 1)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.order() == p_part(self.order(), p)
    }

    /// Decides whether `x` and `y` are `K`-conjugate, after validating that
    /// `K` is a normal subgroup of coprime order, `Kx = Ky`, and that `x` and
    /// `y` normalize `K`. Under those hypotheses the answer is always yes.
    pub fn coprime_coset_conjugacy_check(
        &self,
        k: &PermGroup,
        x: &Permutation,
        y: &Permutation,
    ) -> Result<bool> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::NotAMember);
        }
        if !self.is_normal(k)? {
            return Err(Error::NotNormal);
        }
        let element_orders = x.order() as u128 * y.order() as u128;
        if gcd(k.order(), element_orders) != 1 {
            return Err(Error::NotCoprime { k_order: k.order(), element_orders });
        }
        if !k.contains(&x.mul(&y.inverse())) {
            return Err(Error::DifferentCosets);
        }
        if !Self::element_normalizes(x, k) || !Self::element_normalizes(y, k) {
            return Err(Error::DoesNotNormalize);
        }
        let kelems = k.elements()?;
        Ok(kelems.iter().any(|c| x.conjugate_by(c) == *y))
    }
}
