use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The statements a corpus run can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    /// `Pr_p(G) > f(p)` exactly when the Sylow `p`-subgroup is normal and abelian.
    ThresholdBiconditional,
    /// `f_p(x) ≤ 1/p` for `p`-elements outside `O_p(G)`.
    NoncoreRatioBound,
    /// `f_p(x) > 1/p` forces `x ∈ Z(O_p(G))`.
    LargeRatioCentral,
    /// `f_p(x) ≤ 1/p` for `x ∈ O_p(G) \ Z(O_p(G))`.
    CoreNoncentralBound,
    /// At least `p² − 1` elements generate a conjugate of `⟨x⟩`, for `x ∉ O_p(G)`.
    CyclicConjugatesBound,
    /// Class-wise numerator equals the pair count; with trivial `O_p(G)`, the
    /// bound `Pr_p ≤ (1 + (|G_p|−1)/p) / |G_p|`.
    ClasswiseSum,
    /// Conjugation fixed points on `G_p` reproduce `f_p(x)`.
    PermutationCharacter,
    /// `Pr_p ≤ 1/|G_p| + (1 − 1/|G_p|)·f_p(G)`.
    MaxRatioInequality,
    /// Groups with `Pr_p = f(p)` fall in one of five structural families.
    EqualityClassification,
    /// `Pr_2 = 5/8` forces solvability and a metabelian `O^{2'}`; `Pr_3 = 11/27`
    /// forces a solvable `O^{3'}`.
    EqualitySolvable,
    /// Cyclic Sylow of order `p`, `G = O^{p'}(G)` and `Pr_p = f(p)` pin `G`
    /// down to `PSL₂(p)`, `SL₂(p)` or a Singer extension.
    CyclicSylowEquality,
    /// `Pr_p(G) ≤ Pr_p(G/O_p(G))`, also element-wise.
    QuotientMonotonicity,
    /// A normal subgroup of order prime to `p` can break monotonicity.
    QuotientCounterexample,
    /// Quotients by central `p′`-subgroups preserve `Pr_p` and `f_p`.
    CentralQuotientInvariance,
    /// `Pr_p(G) = Pr_p(O^{p'}(G))`, and `p′` direct factors drop out.
    CofactorInvariance,
    /// `Pr(G) > f(p)` for the smallest prime divisor `p` forces `G` abelian.
    ClassCountAbelian,
    /// Values pinned in the corpus entry.
    ExpectedValues,
}

impl CheckId {
    pub const ALL: [CheckId; 17] = [
        CheckId::ThresholdBiconditional,
        CheckId::NoncoreRatioBound,
        CheckId::LargeRatioCentral,
        CheckId::CoreNoncentralBound,
        CheckId::CyclicConjugatesBound,
        CheckId::ClasswiseSum,
        CheckId::PermutationCharacter,
        CheckId::MaxRatioInequality,
        CheckId::EqualityClassification,
        CheckId::EqualitySolvable,
        CheckId::CyclicSylowEquality,
        CheckId::QuotientMonotonicity,
        CheckId::QuotientCounterexample,
        CheckId::CentralQuotientInvariance,
        CheckId::CofactorInvariance,
        CheckId::ClassCountAbelian,
        CheckId::ExpectedValues,
    ];

    /// Checks run once for every prime of an entry.
    pub const PER_PRIME: [CheckId; 15] = [
        CheckId::ThresholdBiconditional,
        CheckId::NoncoreRatioBound,
        CheckId::LargeRatioCentral,
        CheckId::CoreNoncentralBound,
        CheckId::CyclicConjugatesBound,
        CheckId::ClasswiseSum,
        CheckId::PermutationCharacter,
        CheckId::MaxRatioInequality,
        CheckId::EqualityClassification,
        CheckId::EqualitySolvable,
        CheckId::CyclicSylowEquality,
        CheckId::QuotientMonotonicity,
        CheckId::QuotientCounterexample,
        CheckId::CentralQuotientInvariance,
        CheckId::CofactorInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::ThresholdBiconditional => "threshold_biconditional",
            CheckId::NoncoreRatioBound => "noncore_ratio_bound",
            CheckId::LargeRatioCentral => "large_ratio_central",
            CheckId::CoreNoncentralBound => "core_noncentral_bound",
            CheckId::CyclicConjugatesBound => "cyclic_conjugates_bound",
            CheckId::ClasswiseSum => "classwise_sum",
            CheckId::PermutationCharacter => "permutation_character",
            CheckId::MaxRatioInequality => "max_ratio_inequality",
            CheckId::EqualityClassification => "equality_classification",
            CheckId::EqualitySolvable => "equality_solvable",
            CheckId::CyclicSylowEquality => "cyclic_sylow_equality",
            CheckId::QuotientMonotonicity => "quotient_monotonicity",
            CheckId::QuotientCounterexample => "quotient_counterexample",
            CheckId::CentralQuotientInvariance => "central_quotient_invariance",
            CheckId::CofactorInvariance => "cofactor_invariance",
            CheckId::ClassCountAbelian => "class_count_abelian",
            CheckId::ExpectedValues => "expected_values",
        }
    }

    /// Parses a comma-separated list of check names.
    pub fn parse_list(s: &str) -> Result<Vec<CheckId>> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    SkippedTooLarge,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::SkippedTooLarge => "skipped_too_large",
        })
    }
}

/// One (group, prime, check) result. Details hold exact values as strings
/// (`"num/den"` for rationals); a failure carries witness image tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: CheckId,
    pub spec: String,
    pub prime: Option<u64>,
    pub verdict: Verdict,
    pub details: BTreeMap<String, String>,
    pub witness: Vec<Vec<u32>>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub(crate) fn sort_key(&self) -> (&str, Option<u64>, CheckId) {
        (&self.spec, self.prime, self.check)
    }

    /// One line: verdict, check, spec, prime and the details.
    pub fn summary_line(&self) -> String {
        let prime = self.prime.map(|p| format!(" p={p}")).unwrap_or_default();
        let details: Vec<String> = self.details.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{:<17} {:<27} {}{} {}", self.verdict, self.check, self.spec, prime, details.join(" "))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped_too_large: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::SkippedTooLarge => s.skipped_too_large += 1,
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} pass, {} fail, {} skipped_too_large", self.pass, self.fail, self.skipped_too_large)
    }
}
