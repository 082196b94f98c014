use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic,
    ElementaryAbelian,
    Dihedral,
    Symmetric,
    Alternating,
    Psl2,
    Sl2,
    SingerMersenne,
    Q8Ext,
    C3Ext,
    Ex1,
    Ex2,
    #[serde(rename = "smallgroup_420_30")]
    SmallGroup420_30,
    DirectProduct,
    PermGens,
}

impl GroupKind {
    pub const ALL: [GroupKind; 15] = [
        GroupKind::Cyclic,
        GroupKind::ElementaryAbelian,
        GroupKind::Dihedral,
        GroupKind::Symmetric,
        GroupKind::Alternating,
        GroupKind::Psl2,
        GroupKind::Sl2,
        GroupKind::SingerMersenne,
        GroupKind::Q8Ext,
        GroupKind::C3Ext,
        GroupKind::Ex1,
        GroupKind::Ex2,
        GroupKind::SmallGroup420_30,
        GroupKind::DirectProduct,
        GroupKind::PermGens,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Cyclic => "cyclic",
            GroupKind::ElementaryAbelian => "elementary_abelian",
            GroupKind::Dihedral => "dihedral",
            GroupKind::Symmetric => "symmetric",
            GroupKind::Alternating => "alternating",
            GroupKind::Psl2 => "psl2",
            GroupKind::Sl2 => "sl2",
            GroupKind::SingerMersenne => "singer_mersenne",
            GroupKind::Q8Ext => "q8_ext",
            GroupKind::C3Ext => "c3_ext",
            GroupKind::Ex1 => "ex1",
            GroupKind::Ex2 => "ex2",
            GroupKind::SmallGroup420_30 => "smallgroup_420_30",
            GroupKind::DirectProduct => "direct_product",
            GroupKind::PermGens => "perm_gens",
        }
    }

    /// Parameter names, in the order they appear in the text form.
    fn params(self) -> &'static [&'static str] {
        match self {
            GroupKind::Cyclic | GroupKind::Dihedral | GroupKind::Symmetric | GroupKind::Alternating => {
                &["n"]
            }
            GroupKind::ElementaryAbelian => &["p", "r"],
            GroupKind::Psl2 | GroupKind::Sl2 => &["p"],
            GroupKind::SingerMersenne => &["r", "k"],
            GroupKind::Q8Ext | GroupKind::C3Ext => &["k"],
            GroupKind::Ex1 => &["p", "r"],
            GroupKind::Ex2 => &["r"],
            GroupKind::SmallGroup420_30 | GroupKind::DirectProduct => &[],
            GroupKind::PermGens => &["n"],
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown group kind `{s}`")))
    }
}

/// Serializable description of a catalog group.
///
/// Text form: `kind:key=value,...`; products join factors with ` * `;
/// explicit generators are `perm_gens:n=DEG:CYCLES|CYCLES|...`, e.g.
/// `perm_gens:n=4:(0 1)(2 3)|(0 1 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<GroupSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gens: Vec<Vec<u32>>,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, params: &[(&str, u64)]) -> Self {
        Self {
            kind,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            factors: Vec::new(),
            gens: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(GroupKind::Cyclic, &[("n", n)])
    }
    pub fn elementary_abelian(p: u64, r: u64) -> Self {
        Self::new(GroupKind::ElementaryAbelian, &[("p", p), ("r", r)])
    }
    pub fn dihedral(n: u64) -> Self {
        Self::new(GroupKind::Dihedral, &[("n", n)])
    }
    pub fn symmetric(n: u64) -> Self {
        Self::new(GroupKind::Symmetric, &[("n", n)])
    }
    pub fn alternating(n: u64) -> Self {
        Self::new(GroupKind::Alternating, &[("n", n)])
    }
    pub fn psl2(p: u64) -> Self {
        Self::new(GroupKind::Psl2, &[("p", p)])
    }
    pub fn sl2(p: u64) -> Self {
        Self::new(GroupKind::Sl2, &[("p", p)])
    }
    pub fn singer_mersenne(r: u64, k: u64) -> Self {
        Self::new(GroupKind::SingerMersenne, &[("r", r), ("k", k)])
    }
    pub fn q8_ext(k: u64) -> Self {
        Self::new(GroupKind::Q8Ext, &[("k", k)])
    }
    pub fn c3_ext(k: u64) -> Self {
        Self::new(GroupKind::C3Ext, &[("k", k)])
    }
    pub fn ex1(p: u64, r: u64) -> Self {
        Self::new(GroupKind::Ex1, &[("p", p), ("r", r)])
    }
    pub fn ex2(r: u64) -> Self {
        Self::new(GroupKind::Ex2, &[("r", r)])
    }
    pub fn smallgroup_420_30() -> Self {
        Self::new(GroupKind::SmallGroup420_30, &[])
    }

    pub fn direct_product(factors: Vec<GroupSpec>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            if f.kind == GroupKind::DirectProduct {
                flat.extend(f.factors);
            } else {
                flat.push(f);
            }
        }
        Self { kind: GroupKind::DirectProduct, params: BTreeMap::new(), factors: flat, gens: Vec::new() }
    }

    pub fn perm_gens(degree: usize, gens: &[Permutation]) -> Self {
        let mut spec = Self::new(GroupKind::PermGens, &[("n", degree as u64)]);
        spec.gens = gens.iter().map(|g| g.images().to_vec()).collect();
        spec
    }

    pub fn param(&self, name: &str) -> Result<u64> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidSpec(format!("{}: missing parameter `{name}`", self.kind.name())))
    }

    /// Checks the kind-specific parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(format!("{}: {msg}", self.kind.name())));
        for key in self.params.keys() {
            if !self.kind.params().contains(&key.as_str()) {
                return bad(format!("unexpected parameter `{key}`"));
            }
        }
        for key in self.kind.params() {
            self.param(key)?;
        }
        if self.kind != GroupKind::DirectProduct && !self.factors.is_empty() {
            return bad("only direct products have factors".into());
        }
        if self.kind != GroupKind::PermGens && !self.gens.is_empty() {
            return bad("only perm_gens has explicit generators".into());
        }
        let prime = |name: &str| -> Result<u64> {
            let v = self.param(name)?;
            if is_prime(v) {
                Ok(v)
            } else {
                Err(Error::InvalidSpec(format!("{}: {name}={v} is not prime", self.kind.name())))
            }
        };
        match self.kind {
            GroupKind::Cyclic | GroupKind::Symmetric | GroupKind::Alternating => {
                if self.param("n")? < 1 {
                    return bad("n must be at least 1".into());
                }
            }
            GroupKind::Dihedral => {
                if self.param("n")? < 2 {
                    return bad("n must be at least 2".into());
                }
            }
            GroupKind::ElementaryAbelian => {
                prime("p")?;
                if self.param("r")? < 1 {
                    return bad("r must be at least 1".into());
                }
            }
            GroupKind::Psl2 | GroupKind::Sl2 => {
                prime("p")?;
            }
            GroupKind::SingerMersenne => {
                let r = self.param("r")?;
                if !(2..=20).contains(&r) {
                    return bad("r must be in 2..=20".into());
                }
                let p = (1u64 << r) - 1;
                if !is_prime(p) {
                    return bad(format!("2^{r} - 1 = {p} is not a Mersenne prime"));
                }
                if self.param("k")? < 1 {
                    return bad("k must be at least 1".into());
                }
            }
            GroupKind::Q8Ext | GroupKind::C3Ext => {
                if self.param("k")? < 1 {
                    return bad("k must be at least 1".into());
                }
            }
            GroupKind::Ex1 => {
                let p = prime("p")?;
                let r = prime("r")?;
                if p == 2 {
                    return bad("p must be odd".into());
                }
                if r % p != 1 {
                    return bad(format!("r={r} is not congruent to 1 mod p={p}"));
                }
            }
            GroupKind::Ex2 => {
                if prime("r")? == 2 {
                    return bad("r must be odd".into());
                }
            }
            GroupKind::SmallGroup420_30 => {}
            GroupKind::DirectProduct => {
                if self.factors.is_empty() {
                    return bad("needs at least one factor".into());
                }
                for f in &self.factors {
                    f.validate()?;
                }
            }
            GroupKind::PermGens => {
                let n = self.param("n")? as usize;
                for g in &self.gens {
                    if g.len() != n {
                        return bad(format!("generator has degree {}, expected {n}", g.len()));
                    }
                    Permutation::from_images(g.clone())?;
                }
            }
        }
        Ok(())
    }

    /// Closed-form group order.
    pub fn expected_order(&self) -> Result<u128> {
        self.validate()?;
        let p = |k: &str| self.param(k).map(|v| v as u128);
        Ok(match self.kind {
            GroupKind::Cyclic => p("n")?,
            GroupKind::ElementaryAbelian => p("p")?.pow(p("r")? as u32),
            GroupKind::Dihedral => 2 * p("n")?,
            GroupKind::Symmetric => (1..=p("n")?).product(),
            GroupKind::Alternating => {
                let n = p("n")?;
                if n < 2 {
                    1
                } else {
                    (1..=n).product::<u128>() / 2
                }
            }
            GroupKind::Psl2 => {
                let q = p("p")?;
                let full = q * (q * q - 1);
                if q == 2 {
                    full
                } else {
                    full / 2
                }
            }
            GroupKind::Sl2 => {
                let q = p("p")?;
                q * (q * q - 1)
            }
            GroupKind::SingerMersenne => {
                let r = p("r")?;
                let mersenne = (1u128 << r) - 1;
                (1u128 << r) * mersenne.pow(p("k")? as u32)
            }
            GroupKind::Q8Ext => 8 * 3u128.pow(p("k")? as u32),
            GroupKind::C3Ext => 3 * 2u128.pow(p("k")? as u32),
            GroupKind::Ex1 => {
                let (q, r) = (p("p")?, p("r")?);
                q.pow(4) * r.pow(q as u32)
            }
            GroupKind::Ex2 => 16 * p("r")?.pow(2),
            GroupKind::SmallGroup420_30 => 420,
            GroupKind::DirectProduct => {
                let mut o = 1u128;
                for f in &self.factors {
                    o *= f.expected_order()?;
                }
                o
            }
            GroupKind::PermGens => {
                return Err(Error::InvalidSpec("perm_gens has no closed-form order".into()));
            }
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::DirectProduct => {
                for (i, factor) in self.factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            _ => {
                f.write_str(self.kind.name())?;
                let mut sep = ':';
                for (k, v) in &self.params {
                    write!(f, "{sep}{k}={v}")?;
                    sep = ',';
                }
                if self.kind == GroupKind::PermGens {
                    f.write_str(":")?;
                    for (i, g) in self.gens.iter().enumerate() {
                        if i > 0 {
                            f.write_str("|")?;
                        }
                        match Permutation::from_images(g.clone()) {
                            Ok(perm) => write!(f, "{perm}")?,
                            Err(_) => write!(f, "{g:?}")?,
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('*').map(str::trim).collect();
        if parts.len() > 1 {
            let factors = parts.into_iter().map(parse_single).collect::<Result<Vec<_>>>()?;
            let spec = GroupSpec::direct_product(factors);
            spec.validate()?;
            return Ok(spec);
        }
        let spec = parse_single(parts[0])?;
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_single(s: &str) -> Result<GroupSpec> {
    let mut sections = s.splitn(3, ':');
    let kind: GroupKind = sections.next().unwrap_or("").trim().parse()?;
    let mut spec = GroupSpec::new(kind, &[]);
    if let Some(params) = sections.next() {
        for kv in params.split(',').map(str::trim).filter(|kv| !kv.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidSpec(format!("expected key=value, got `{kv}`")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("`{v}` is not a nonnegative integer")))?;
            spec.params.insert(k.trim().to_string(), v);
        }
    }
    if let Some(gens) = sections.next() {
        if kind != GroupKind::PermGens {
            return Err(Error::InvalidSpec(format!("unexpected trailing section in `{s}`")));
        }
        let n = spec.param("n")? as usize;
        for g in gens.split('|').map(str::trim).filter(|g| !g.is_empty()) {
            spec.gens.push(parse_cycles(n, g)?.images().to_vec());
        }
    }
    Ok(spec)
}

/// Parses cycle notation such as `(0 1)(2 3 4)` or `()`.
pub fn parse_cycles(degree: usize, s: &str) -> Result<Permutation> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("bad cycle notation `{s}`")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in `{s}`")))?;
        let body = &open[..close];
        let cycle = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad point `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(degree, &refs)
}
