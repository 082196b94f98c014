use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `0..degree`, stored as its image table.
///
/// Permutations act on the right: the image of `i` under `x` is `x[i]`, and
/// the product `a * b` (see [`Permutation::compose`]) applies `a` first. The
/// conjugate `x^g` is `g⁻¹ x g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            let i = i as usize;
            if i >= degree || seen[i] {
                return Err(Error::NotAPermutation { degree });
            }
            seen[i] = true;
        }
        Ok(Self { images: images.into_boxed_slice() })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1], &[2, 3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree || touched[a as usize] {
                    return Err(Error::NotAPermutation { degree });
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    /// Caller guarantees bijectivity.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images: images.into_boxed_slice() }
    }

    pub(crate) fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Self {
        Self::from_images_unchecked((0..degree).map(|i| f(i) as u32).collect())
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self * other`: maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.mul(other))
    }

    /// Unchecked product; degrees must agree.
    #[inline]
    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self { images: inv.into_boxed_slice() }
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        // (g⁻¹ x g) maps g(i) to g(x(i)).
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Self { images: out.into_boxed_slice() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `xy == yx`, without allocating.
    #[inline]
    pub fn commutes_with(&self, other: &Self) -> bool {
        let (a, b) = (&self.images, &other.images);
        a.iter().zip(b.iter()).all(|(&ai, &bi)| b[ai as usize] == a[bi as usize])
    }

    /// Cycle lengths, including fixed points, in order of smallest element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u32);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `n ≥ 1` with `x^n = 1`.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, len| acc.lcm(&(len as u64)))
    }

    pub fn is_p_element(&self, p: u64) -> Result<bool> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(crate::arith::is_power_of(self.order(), p))
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i as u32 == x).count()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i)
    }

    /// Embeds into a larger degree, shifting points by `offset`.
    pub(crate) fn embed(&self, offset: usize, degree: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Self::from_images_unchecked(images)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Self::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images.into_vec()
    }
}

/// Cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn compose_examples() {
        let x = cyc(5, &[&[0, 3], &[1, 2, 4]]);
        assert_eq!(Permutation::identity(5).compose(&x).unwrap(), x);
        let t = cyc(2, &[&[0, 1]]);
        assert!(t.compose(&t).unwrap().is_identity());
        let c = cyc(3, &[&[0, 1, 2]]);
        assert_eq!(c.compose(&c).unwrap(), cyc(3, &[&[0, 2, 1]]));
    }

    #[test]
    fn compose_is_left_to_right() {
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).unwrap().apply(0), 2);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(cyc(5, &[&[0, 1], &[2, 3, 4]]).order(), 6);
        assert_eq!(cyc(8, &[&[0, 1, 2, 3, 4, 5, 6]]).order(), 7);
    }

    #[test]
    fn p_elements() {
        assert!(Permutation::identity(3).is_p_element(2).unwrap());
        assert!(!cyc(5, &[&[0, 1], &[2, 3, 4]]).is_p_element(2).unwrap());
        assert!(cyc(8, &[&[0, 1, 2, 3, 4, 5, 6]]).is_p_element(7).unwrap());
        assert_eq!(Permutation::identity(3).is_p_element(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn conjugation_convention() {
        let x = cyc(3, &[&[0, 1]]);
        let g = cyc(3, &[&[1, 2]]);
        let direct = g.inverse().mul(&x).mul(&g);
        assert_eq!(x.conjugate_by(&g), direct);
        assert_eq!(direct, cyc(3, &[&[0, 2]]));
    }

    #[test]
    fn display_cycle_notation() {
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(cyc(5, &[&[0, 3], &[1, 2, 4]]).to_string(), "(0 3)(1 2 4)");
    }

    fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
        Just((0..degree as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert!(a.inverse().mul(&a).is_identity());
            prop_assert!(a.pow(a.order()).is_identity());
            prop_assert_eq!(a.commutes_with(&b), a.mul(&b) == b.mul(&a));
            prop_assert_eq!(a.conjugate_by(&b), b.inverse().mul(&a).mul(&b));
        }

        #[test]
        fn order_is_minimal(a in arb_perm(8)) {
            let n = a.order();
            for k in 1..n {
                prop_assert!(!a.pow(k).is_identity());
            }
        }

        #[test]
        fn serde_round_trip(a in arb_perm(6)) {
            let json = serde_json::to_string(&a).unwrap();
            let back: Permutation = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(a, back);
        }
    }
}
