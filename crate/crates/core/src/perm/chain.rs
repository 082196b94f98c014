//! Deterministic Schreier–Sims.
//!
//! Each level stores its base point, the strong generators fixing all earlier
//! base points, and an explicit transversal `u_β` with `base^{u_β} = β`
//! (together with the inverses, which sifting needs).

use super::Permutation;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    inverses: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        Self {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverses: vec![None; degree],
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inverses = vec![None; degree];
        let id = Permutation::identity(degree);
        self.transversal[self.point] = Some(id.clone());
        self.inverses[self.point] = Some(id);
        self.orbit = vec![self.point];
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().mul(s);
                    self.inverses[gamma] = Some(u.inverse());
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
        }
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut gens: Vec<Permutation> =
            generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        gens.sort();
        gens.dedup();

        let mut chain = Self { degree, levels: Vec::new() };
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.point) == l.point) {
                let point = g.first_moved_point().unwrap();
                chain.levels.push(Level::new(point, degree));
            }
        }
        for i in 0..chain.levels.len() {
            let fixed: Vec<usize> = chain.levels[..i].iter().map(|l| l.point).collect();
            chain.levels[i].gens =
                gens.iter().filter(|g| fixed.iter().all(|&b| g.apply(b) == b)).cloned().collect();
            chain.levels[i].rebuild_orbit(degree);
        }
        chain.complete();
        chain
    }

    /// Runs the Schreier generator test level by level, bottom up, until every
    /// Schreier generator sifts to the identity.
    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match self.find_missing(level) {
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let point = residue.first_moved_point().unwrap();
                        self.levels.push(Level::new(point, self.degree));
                    }
                    for l in level + 1..=j {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit(self.degree);
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn find_missing(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &beta in &lv.orbit {
            let u = lv.transversal[beta].as_ref().unwrap();
            for s in &lv.gens {
                let gamma = s.apply(beta);
                let schreier = u.mul(s).mul(lv.inverses[gamma].as_ref().unwrap());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, j) = self.sift_from(schreier, level + 1);
                if !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    /// Strips `g` through the levels starting at `start`. Returns the residue
    /// and the level at which sifting stopped (`levels.len()` if it passed
    /// through all of them).
    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (j, lv) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(lv.point);
            match &lv.inverses[beta] {
                Some(inv) => g = g.mul(inv),
                None => return (g, j),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> =
            self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every element, as products `u_{k-1} ⋯ u_1 u_0` of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for lv in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * lv.orbit.len());
            for e in &elems {
                for &beta in &lv.orbit {
                    next.push(e.mul(lv.transversal[beta].as_ref().unwrap()));
                }
            }
            elems = next;
        }
        elems
    }
}
