use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::prob::Rational;

pub const CORPUS_VERSION: u32 = 1;

/// The corpus shipped with the library: every catalog family at small
/// parameters, plus a few aspirational entries beyond the enumeration bound.
pub const DEFAULT_CORPUS: &str = include_str!("../../corpus/default.json");

/// A list of groups to verify, with optional primes and expected values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub version: u32,
    #[serde(default)]
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    #[serde(serialize_with = "spec_to_text", deserialize_with = "spec_from_text")]
    pub spec: GroupSpec,
    /// Defaults to every prime divisor of the group order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub invariant: Invariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub value: Rational,
}

/// Quantities a corpus entry may pin to an exact value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Order,
    /// `k(G)/|G|`
    Pr,
    PrP,
    CountPElements,
    FpMax,
    SylowCount,
    /// `|C_G(x)_p|` for the documented witness `x` of `ex1` / `ex2`.
    WitnessCentralizerP,
    /// `f_p(x)` for the same witness.
    WitnessRatio,
}

impl Invariant {
    pub const ALL: [Invariant; 8] = [
        Invariant::Order,
        Invariant::Pr,
        Invariant::PrP,
        Invariant::CountPElements,
        Invariant::FpMax,
        Invariant::SylowCount,
        Invariant::WitnessCentralizerP,
        Invariant::WitnessRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Order => "order",
            Invariant::Pr => "pr",
            Invariant::PrP => "pr_p",
            Invariant::CountPElements => "count_p_elements",
            Invariant::FpMax => "fp_max",
            Invariant::SylowCount => "sylow_count",
            Invariant::WitnessCentralizerP => "witness_centralizer_p",
            Invariant::WitnessRatio => "witness_ratio",
        }
    }

    pub fn needs_prime(self) -> bool {
        !matches!(self, Invariant::Order | Invariant::Pr)
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn spec_to_text<S: Serializer>(spec: &GroupSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

fn spec_from_text<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<GroupSpec, D::Error> {
    let text = String::deserialize(d)?;
    GroupSpec::from_str(&text).map_err(serde::de::Error::custom)
}

impl Corpus {
    pub fn new(entries: Vec<CorpusEntry>) -> Self {
        Self { version: CORPUS_VERSION, entries }
    }

    pub fn default_corpus() -> Self {
        Self::parse(DEFAULT_CORPUS).expect("the bundled corpus parses")
    }

    /// Parses and validates a corpus. Errors name the line and column, or the
    /// offending entry.
    pub fn parse(text: &str) -> Result<Self> {
        let corpus: Corpus = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        corpus.validate()?;
        Ok(corpus)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CORPUS_VERSION {
            return Err(Error::Parse(format!(
                "unsupported corpus version {} (expected {CORPUS_VERSION})",
                self.version
            )));
        }
        for (i, entry) in self.entries.iter().enumerate() {
            let at = |msg: String| Error::Parse(format!("entry {i} (`{}`): {msg}", entry.spec));
            for &p in entry.primes.iter().flatten() {
                if !is_prime(p) {
                    return Err(at(format!("{p} is not prime")));
                }
            }
            for e in &entry.expected {
                match (e.invariant.needs_prime(), e.prime) {
                    (true, None) => return Err(at(format!("`{}` needs a prime", e.invariant))),
                    (false, Some(_)) => return Err(at(format!("`{}` takes no prime", e.invariant))),
                    (_, Some(p)) if !is_prime(p) => return Err(at(format!("{p} is not prime"))),
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("corpus serializes") + "\n"
    }
}

impl FromStr for Corpus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
