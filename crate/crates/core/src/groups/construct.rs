//! Faithful permutation actions for every catalog family.
//!
//! Degrees:
//! - cyclic `n`: `n`; elementary abelian `(p, r)`: `p·r`
//! - dihedral `D_{2n}`: `n` (Klein four on 4 points when `n = 2`)
//! - symmetric/alternating: natural, `max(n, 1)`
//! - `PSL₂(p)`: projective line, `p + 1`; `SL₂(p)`: nonzero vectors, `p² − 1`
//! - `singer_mersenne(r, k)`: affine space `F_2^r` plus a `p^k`-cycle, `2^r + p^k`
//! - `q8_ext(k)`: holomorph action on `Q₈` plus a `3^k`-cycle, `8 + 3^k`
//! - `c3_ext(k)`: holomorph action on `C₃` plus a `2^k`-cycle, `3 + 2^k`
//! - `ex1(p, r)`: affine `V = F_r^p` plus affine `A = F_p³`, `r^p + p³`
//! - `ex2(r)`: affine `V = F_r²` plus an octagon, `r² + 8`
//! - `smallgroup_420_30`: pentagon, heptagon and hexagon, `5 + 7 + 6 = 18`
//! - direct products: disjoint union

use crate::error::Result;
use crate::perm::{PermGroup, Permutation};

use super::{GroupKind, GroupSpec};

/// Builds the permutation group described by `spec`. Catalog groups carry
/// their closed-form order, so oversized groups can be flagged without a
/// stabilizer chain.
pub fn construct(spec: &GroupSpec) -> Result<PermGroup> {
    spec.validate()?;
    let (degree, gens) = generators(spec)?;
    let group = PermGroup::new(degree, gens)?;
    Ok(match spec.expected_order() {
        Ok(order) => group.with_known_order(order),
        Err(_) => group,
    })
}

pub(crate) fn generators(spec: &GroupSpec) -> Result<(usize, Vec<Permutation>)> {
    let n = |k: &str| spec.param(k).map(|v| v as usize);
    Ok(match spec.kind {
        GroupKind::Cyclic => {
            let n = n("n")?;
            (n, vec![rotation(n)])
        }
        GroupKind::ElementaryAbelian => {
            let (p, r) = (n("p")?, n("r")?);
            let degree = p * r;
            (degree, (0..r).map(|i| rotation(p).embed(i * p, degree)).collect())
        }
        GroupKind::Dihedral => dihedral(n("n")?),
        GroupKind::Symmetric => {
            let n = n("n")?.max(1);
            if n < 2 {
                (n, vec![])
            } else {
                (n, vec![Permutation::from_fn(n, |i| [1, 0].get(i).copied().unwrap_or(i)), rotation(n)])
            }
        }
        GroupKind::Alternating => {
            let n = n("n")?.max(1);
            let gens = (2..n)
                .map(|i| Permutation::from_fn(n, |x| if x == 0 { 1 } else if x == 1 { i } else if x == i { 0 } else { x }))
                .collect();
            (n, gens)
        }
        GroupKind::Psl2 => psl2(n("p")?),
        GroupKind::Sl2 => sl2(n("p")?),
        GroupKind::SingerMersenne => singer_mersenne(n("r")?, n("k")? as u32),
        GroupKind::Q8Ext => q8_ext(n("k")? as u32),
        GroupKind::C3Ext => c3_ext(n("k")? as u32),
        GroupKind::Ex1 => ex1(n("p")?, n("r")?),
        GroupKind::Ex2 => ex2(n("r")?),
        GroupKind::SmallGroup420_30 => smallgroup_420_30(),
        GroupKind::DirectProduct => {
            let parts = spec.factors.iter().map(generators).collect::<Result<Vec<_>>>()?;
            let degree = parts.iter().map(|(d, _)| d).sum();
            let mut offset = 0;
            let mut gens = Vec::new();
            for (d, gs) in parts {
                gens.extend(gs.iter().map(|g| g.embed(offset, degree)));
                offset += d;
            }
            (degree, gens)
        }
        GroupKind::PermGens => {
            let gens = spec
                .gens
                .iter()
                .map(|g| Permutation::from_images(g.clone()))
                .collect::<Result<Vec<_>>>()?;
            (n("n")?, gens)
        }
    })
}

fn rotation(n: usize) -> Permutation {
    Permutation::from_fn(n, |i| (i + 1) % n)
}

fn dihedral(n: usize) -> (usize, Vec<Permutation>) {
    if n == 2 {
        let a = Permutation::from_fn(4, |i| i ^ 1);
        let b = Permutation::from_fn(4, |i| i ^ 2);
        return (4, vec![a, b]);
    }
    (n, vec![rotation(n), Permutation::from_fn(n, |i| (n - i) % n)])
}

fn inverse_mod(a: usize, p: usize) -> usize {
    (1..p).find(|&y| (a * y) % p == 1).expect("unit")
}

/// Smallest generator of `F_p^×`.
pub(crate) fn primitive_root(p: usize) -> usize {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .expect("primes have primitive roots")
}

/// Action on `{0, …, p−1, ∞ = p}` by `z ↦ z+1`, `z ↦ ω²z`, `z ↦ −1/z`.
fn psl2(p: usize) -> (usize, Vec<Permutation>) {
    let inf = p;
    let omega = primitive_root(p);
    let square = omega * omega % p;
    let translate = Permutation::from_fn(p + 1, |z| if z == inf { inf } else { (z + 1) % p });
    let scale = Permutation::from_fn(p + 1, |z| if z == inf { inf } else { z * square % p });
    let invert = Permutation::from_fn(p + 1, |z| match z {
        0 => inf,
        z if z == inf => 0,
        z => (p - inverse_mod(z, p)) % p,
    });
    (p + 1, vec![translate, scale, invert])
}

/// Row vectors `(a, b) ≠ 0` at index `a·p + b − 1`, acted on by the
/// transvections `[[1,1],[0,1]]` and `[[1,0],[1,1]]`.
fn sl2(p: usize) -> (usize, Vec<Permutation>) {
    let degree = p * p - 1;
    let decode = |i: usize| ((i + 1) / p, (i + 1) % p);
    let encode = |a: usize, b: usize| a * p + b - 1;
    let upper = Permutation::from_fn(degree, |i| {
        let (a, b) = decode(i);
        encode(a, (a + b) % p)
    });
    let lower = Permutation::from_fn(degree, |i| {
        let (a, b) = decode(i);
        encode((a + b) % p, b)
    });
    (degree, vec![upper, lower])
}

/// Bitmask of a polynomial `f` of degree `r` over `F_2` such that
/// multiplication by `x` cycles through all `2^r − 1` nonzero residues.
fn primitive_polynomial(r: usize) -> usize {
    let order = (1usize << r) - 1;
    (1usize << r..1usize << (r + 1))
        .filter(|f| f & 1 == 1)
        .find(|&f| {
            let mut v = 1usize;
            for step in 1..=order {
                v = times_x(v, f, r);
                if v == 1 {
                    return step == order;
                }
            }
            false
        })
        .expect("primitive polynomials exist in every degree")
}

fn times_x(v: usize, f: usize, r: usize) -> usize {
    let w = v << 1;
    if w & (1 << r) != 0 {
        w ^ f
    } else {
        w
    }
}

/// `(C_2)^r : C_{p^k}` with `p = 2^r − 1`: a translation of `F_2^r` and a
/// Singer cycle (multiplication by a primitive element) glued to a `p^k`-cycle.
fn singer_mersenne(r: usize, k: u32) -> (usize, Vec<Permutation>) {
    let q = 1usize << r;
    let cyc = (q - 1).pow(k);
    let degree = q + cyc;
    let f = primitive_polynomial(r);
    let translate = Permutation::from_fn(degree, |i| if i < q { i ^ 1 } else { i });
    let singer = Permutation::from_fn(degree, |i| if i < q { times_x(i, f, r) } else { q + (i - q + 1) % cyc });
    (degree, vec![translate, singer])
}

// Q₈ as (sign, unit) with unit 0..4 = 1, i, j, k; index = 4·sign + unit.
fn q8_mul(x: usize, y: usize) -> usize {
    let (sx, ux) = (x / 4, x % 4);
    let (sy, uy) = (y / 4, y % 4);
    // unit products: (sign, unit)
    const TABLE: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let (s, u) = TABLE[ux][uy];
    4 * ((sx + sy + s) % 2) + u
}

/// `Q₈ : C_{3^k}`, where the cyclic factor cycles `i → j → k`.
fn q8_ext(k: u32) -> (usize, Vec<Permutation>) {
    let cyc = 3usize.pow(k);
    let degree = 8 + cyc;
    let right = |q: usize| Permutation::from_fn(degree, move |x| if x < 8 { q8_mul(x, q) } else { x });
    let rotate_units = |x: usize| {
        let (s, u) = (x / 4, x % 4);
        4 * s + if u == 0 { 0 } else { u % 3 + 1 }
    };
    let c = Permutation::from_fn(degree, |x| if x < 8 { rotate_units(x) } else { 8 + (x - 8 + 1) % cyc });
    (degree, vec![right(1), right(2), c])
}

/// `C₃ : C_{2^k}` with the cyclic factor acting by inversion.
fn c3_ext(k: u32) -> (usize, Vec<Permutation>) {
    let cyc = 2usize.pow(k);
    let degree = 3 + cyc;
    let t = Permutation::from_fn(degree, |x| if x < 3 { (x + 1) % 3 } else { x });
    let c = Permutation::from_fn(degree, |x| if x < 3 { (3 - x) % 3 } else { 3 + (x - 3 + 1) % cyc });
    (degree, vec![t, c])
}

fn digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = index % base;
            index /= base;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

/// Element of order `p` in `F_r^×` (requires `r ≡ 1 mod p`).
fn root_of_unity(p: usize, r: usize) -> usize {
    let g = primitive_root(r);
    (0..(r - 1) / p).fold(1, |acc, _| acc * g % r)
}

/// `V : H` with `V = F_r^p` and `H = A : B`, `A = F_p³`, `B = ⟨b⟩` acting on
/// `A` as one Jordan block `(x0, x1, x2) ↦ (x0, x1 + x0, x2 + x1)`.
/// `K = {(0, *, *)}` acts trivially on `V`, `a = (1, 0, 0)` acts as the scalar
/// `μ`, and `b` as `diag(1, μ, …, μ^{p−1})`.
///
/// Generators: the `p` unit translations of `V`, then `a`, the two
/// translations spanning `K`, then `b`.
fn ex1(p: usize, r: usize) -> (usize, Vec<Permutation>) {
    let vsize = r.pow(p as u32);
    let degree = vsize + p * p * p;
    let mu = root_of_unity(p, r);
    let mu_pow: Vec<usize> = (0..p).map(|i| (0..i).fold(1, |acc, _| acc * mu % r)).collect();

    let on_v = |f: &dyn Fn(&mut [usize]), i: usize| {
        let mut v = digits(i, r, p);
        f(&mut v);
        undigits(&v, r)
    };
    let on_a = |f: &dyn Fn(&mut [usize]), i: usize| {
        let mut x = digits(i - vsize, p, 3);
        f(&mut x);
        vsize + undigits(&x, p)
    };
    let make = |fv: &dyn Fn(&mut [usize]), fa: &dyn Fn(&mut [usize])| {
        Permutation::from_fn(degree, |i| if i < vsize { on_v(fv, i) } else { on_a(fa, i) })
    };
    let keep = |_: &mut [usize]| {};

    let mut gens = Vec::new();
    for coord in 0..p {
        gens.push(make(&|v: &mut [usize]| v[coord] = (v[coord] + 1) % r, &keep));
    }
    let translate_a = |coord: usize| move |x: &mut [usize]| x[coord] = (x[coord] + 1) % p;
    gens.push(make(&|v: &mut [usize]| v.iter_mut().for_each(|c| *c = *c * mu % r), &translate_a(0)));
    gens.push(make(&keep, &translate_a(1)));
    gens.push(make(&keep, &translate_a(2)));
    gens.push(make(
        &|v: &mut [usize]| v.iter_mut().zip(&mu_pow).for_each(|(c, m)| *c = *c * m % r),
        &|x: &mut [usize]| {
            let (x0, x1, x2) = (x[0], x[1], x[2]);
            x[1] = (x1 + x0) % p;
            x[2] = (x2 + x1) % p;
        },
    ));
    (degree, gens)
}

/// The element `(0, 1, 0) ∈ K` outside `Z(H)` whose centralizer counts have
/// closed forms.
pub fn ex1_witness(p: u64, r: u64) -> Result<Permutation> {
    GroupSpec::ex1(p, r).validate()?;
    let (_, gens) = ex1(p as usize, r as usize);
    Ok(gens[p as usize + 1].clone())
}

/// `V : D₁₆` with `V = F_r²`, `a ↦ (−1, −1)`, `b ↦ (−1, 1)`; `D₁₆` also acts
/// on an octagon to make the action faithful.
fn ex2(r: usize) -> (usize, Vec<Permutation>) {
    let vsize = r * r;
    let degree = vsize + 8;
    let neg = |c: usize| (r - c) % r;
    let tv = |coord: usize| {
        Permutation::from_fn(degree, move |i| {
            if i >= vsize {
                return i;
            }
            let (mut v0, mut v1) = (i % r, i / r);
            if coord == 0 {
                v0 = (v0 + 1) % r;
            } else {
                v1 = (v1 + 1) % r;
            }
            v0 + r * v1
        })
    };
    let a = Permutation::from_fn(degree, |i| {
        if i < vsize {
            neg(i % r) + r * neg(i / r)
        } else {
            vsize + (i - vsize + 1) % 8
        }
    });
    let b = Permutation::from_fn(degree, |i| {
        if i < vsize {
            neg(i % r) + r * (i / r)
        } else {
            vsize + (8 - (i - vsize)) % 8
        }
    });
    (degree, vec![tv(0), tv(1), a, b])
}

/// `a²`, an element of order 4 in `D₁₆`.
pub fn ex2_witness(r: u64) -> Result<Permutation> {
    GroupSpec::ex2(r).validate()?;
    let (_, gens) = ex2(r as usize);
    Ok(gens[2].pow(2))
}

/// `C₃₅ : D₁₂` of order 420 (GAP's SmallGroup(420, 30)).
///
/// Points 0..5 carry `C₅`, 5..12 carry `C₇`, 12..18 a hexagon for `D₁₂ = ⟨ρ, σ⟩`.
/// The rotation `ρ` (order 6) inverts both `C₅` and `C₇`; the reflection `σ`
/// inverts `C₇` and fixes `C₅`, so the kernels on `C₅` and `C₇` are the two
/// non-conjugate `S₃` subgroups of `D₁₂`. The rotation subgroup `⟨ρ²⟩ ≅ C₃`
/// acts trivially on `C₃₅`, is normal, and the quotient is `D₁₀ × D₁₄`.
/// Of the surjections `D₁₂ → C₂ × C₂ ≤ Aut(C₃₅)`, this is the one with
/// `Pr₂ = 211/1296`.
///
/// Generators: `c₅`, `c₇`, `ρ`, `σ`.
fn smallgroup_420_30() -> (usize, Vec<Permutation>) {
    smallgroup_420_30_variant(true, true, false, true)
}

pub(crate) fn smallgroup_420_30_variant(
    rho_inverts_5: bool,
    rho_inverts_7: bool,
    sigma_inverts_5: bool,
    sigma_inverts_7: bool,
) -> (usize, Vec<Permutation>) {
    const DEGREE: usize = 18;
    let block = |i: usize| -> (usize, usize) {
        match i {
            0..=4 => (0, 5),
            5..=11 => (5, 7),
            _ => (12, 6),
        }
    };
    let rot = |which: usize| {
        Permutation::from_fn(DEGREE, move |i| {
            let (off, n) = block(i);
            if off == which { off + (i - off + 1) % n } else { i }
        })
    };
    let build = |inv5: bool, inv7: bool, hexagon: &dyn Fn(usize) -> usize| {
        Permutation::from_fn(DEGREE, |i| {
            let (off, n) = block(i);
            let x = i - off;
            let invert = match off {
                0 => inv5,
                5 => inv7,
                _ => return off + hexagon(x),
            };
            if invert { off + (n - x) % n } else { i }
        })
    };
    let rho = build(rho_inverts_5, rho_inverts_7, &|x| (x + 1) % 6);
    let sigma = build(sigma_inverts_5, sigma_inverts_7, &|x| (6 - x) % 6);
    (DEGREE, vec![rot(0), rot(5), rho, sigma])
}

/// The normal subgroup `⟨ρ²⟩ ≅ C₃` of [`GroupSpec::smallgroup_420_30`].
pub fn smallgroup_420_30_normal_c3() -> Permutation {
    let (_, gens) = smallgroup_420_30();
    gens[2].pow(2)
}

impl PermGroup {
    /// Shorthand for [`construct`].
    pub fn from_spec(spec: &GroupSpec) -> Result<PermGroup> {
        construct(spec)
    }
}

/// Parses and builds a group from its text form.
pub fn construct_str(text: &str) -> Result<PermGroup> {
    let spec: GroupSpec = text.parse()?;
    construct(&spec)
}
