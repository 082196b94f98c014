use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::sync::{Arc, OnceLock};

use super::classify::classify_equality;
use super::corpus::{Expectation, Invariant};
use super::report::{CheckId, VerificationReport, Verdict};
use super::VerifyConfig;
use crate::arith::{gcd, prime_divisors};
use crate::error::{Error, Result};
use crate::fpr::quotient_bounded;
use crate::groups::{construct, ex1_witness, ex2_witness, fingerprint, smallgroup_420_30_normal_c3, GroupKind, GroupSpec};
use crate::perm::{PermGroup, Permutation};
use crate::prob::{
    commuting_p_pairs, count_p_elements, f_threshold, fp_max, fp_ratio, permutation_character_ratio, pr_global,
    pr_p, ratio_table, Rational, RatioTable,
};

type Details = BTreeMap<String, String>;

fn put(d: &mut Details, key: &str, value: impl Display) {
    d.insert(key.to_string(), value.to_string());
}

pub(super) struct Outcome {
    verdict: Verdict,
    details: Details,
    witness: Vec<Permutation>,
}

impl Outcome {
    fn decide(ok: bool, details: Details, witness: Vec<Permutation>) -> Self {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        Self { verdict, details, witness }
    }

    fn pass(details: Details) -> Self {
        Self::decide(true, details, Vec::new())
    }

    fn vacuous(reason: &str) -> Self {
        let mut d = Details::new();
        put(&mut d, "applies", "false");
        put(&mut d, "reason", reason);
        Self::pass(d)
    }

    fn from_error(e: Error) -> Self {
        let mut d = Details::new();
        put(&mut d, "error", &e);
        let verdict = match e {
            Error::GroupTooLarge { .. } | Error::IndexTooLarge { .. } => Verdict::SkippedTooLarge,
            _ => Verdict::Fail,
        };
        Self { verdict, details: d, witness: Vec::new() }
    }

    pub(super) fn into_report(
        self,
        check: CheckId,
        spec: String,
        prime: Option<u64>,
        wall_time_ms: u64,
        group: &PermGroup,
    ) -> VerificationReport {
        let mut witness: Vec<Vec<u32>> = self.witness.iter().map(|x| x.images().to_vec()).collect();
        if self.verdict == Verdict::Fail && witness.is_empty() {
            witness = group.generators().iter().map(|x| x.images().to_vec()).collect();
            if witness.is_empty() {
                witness.push(group.identity().images().to_vec());
            }
        }
        VerificationReport { check, spec, prime, verdict: self.verdict, details: self.details, witness, wall_time_ms }
    }
}

/// Per-prime data shared by the checks.
struct PrimeData {
    p: u64,
    table: RatioTable,
    pr_p: Rational,
    f: Rational,
    sylow: PermGroup,
    core: PermGroup,
    core_center: PermGroup,
    residual: OnceLock<Result<PermGroup>>,
}

impl PrimeData {
    fn build(group: &PermGroup, p: u64) -> Result<Self> {
        let table = ratio_table(group, p)?;
        let core = group.p_core(p)?;
        Ok(Self {
            p,
            pr_p: table.pr_p(),
            f: f_threshold(p)?,
            sylow: group.sylow_subgroup(p)?,
            core_center: core.center()?,
            core,
            table,
            residual: OnceLock::new(),
        })
    }

    fn one_over_p(&self) -> Rational {
        Rational::new(1, self.p)
    }

    /// Nontrivial class representatives with their `f_p` values.
    fn nontrivial(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.table.nontrivial().map(|r| (&r.representative, &r.ratio))
    }
}

pub(super) struct GroupContext<'a> {
    spec: &'a GroupSpec,
    group: &'a PermGroup,
    config: &'a VerifyConfig,
    primes: BTreeMap<u64, OnceLock<Result<Arc<PrimeData>>>>,
}

impl<'a> GroupContext<'a> {
    pub(super) fn new(spec: &'a GroupSpec, group: &'a PermGroup, config: &'a VerifyConfig, primes: &[u64]) -> Self {
        let mut all: BTreeSet<u64> = primes.iter().copied().collect();
        all.extend(prime_divisors(group.order()));
        let primes = all.into_iter().map(|p| (p, OnceLock::new())).collect();
        Self { spec, group, config, primes }
    }

    fn data(&self, p: u64) -> Result<Arc<PrimeData>> {
        let cell = self.primes.get(&p).expect("prime registered up front");
        cell.get_or_init(|| PrimeData::build(self.group, p).map(Arc::new)).clone()
    }

    fn residual<'d>(&self, d: &'d PrimeData) -> Result<&'d PermGroup> {
        d.residual.get_or_init(|| self.group.p_residual(d.p)).as_ref().map_err(Clone::clone)
    }

    /// Whether `check` is meaningful for this group at `p` at all.
    pub(super) fn applies(&self, check: CheckId, p: u64) -> bool {
        match check {
            CheckId::QuotientCounterexample => self.spec.kind == GroupKind::SmallGroup420_30 && p == 2,
            _ => true,
        }
    }

    pub(super) fn run(&self, check: CheckId, p: u64) -> Outcome {
        let result = self.data(p).and_then(|d| match check {
            CheckId::ThresholdBiconditional => self.threshold_biconditional(&d),
            CheckId::NoncoreRatioBound => Ok(self.noncore_ratio_bound(&d)),
            CheckId::LargeRatioCentral => Ok(self.large_ratio_central(&d)),
            CheckId::CoreNoncentralBound => Ok(self.core_noncentral_bound(&d)),
            CheckId::CyclicConjugatesBound => self.cyclic_conjugates_bound(&d),
            CheckId::ClasswiseSum => self.classwise_sum(&d),
            CheckId::PermutationCharacter => self.permutation_character(&d),
            CheckId::MaxRatioInequality => Ok(self.max_ratio_inequality(&d)),
            CheckId::EqualityClassification => self.equality_classification(&d),
            CheckId::EqualitySolvable => self.equality_solvable(&d),
            CheckId::CyclicSylowEquality => self.cyclic_sylow_equality(&d),
            CheckId::QuotientMonotonicity => self.quotient_monotonicity(&d),
            CheckId::QuotientCounterexample => self.quotient_counterexample(&d),
            CheckId::CentralQuotientInvariance => self.central_quotient_invariance(&d),
            CheckId::CofactorInvariance => self.cofactor_invariance(&d),
            CheckId::ClassCountAbelian => self.class_count_abelian(&d),
            CheckId::ExpectedValues => unreachable!("expected values are checked per entry"),
        });
        result.unwrap_or_else(Outcome::from_error)
    }

    fn threshold_biconditional(&self, d: &PrimeData) -> Result<Outcome> {
        let above = d.pr_p > d.f;
        let normal = self.group.is_normal(&d.sylow)?;
        let abelian = d.sylow.is_abelian();
        let mut det = Details::new();
        put(&mut det, "pr_p", &d.pr_p);
        put(&mut det, "f_p", &d.f);
        put(&mut det, "above_threshold", above);
        put(&mut det, "sylow_normal", normal);
        put(&mut det, "sylow_abelian", abelian);
        Ok(Outcome::decide(above == (normal && abelian), det, d.sylow.generators().to_vec()))
    }

    /// Checks `f_p(x) ≤ 1/p` for every nontrivial class representative
    /// selected by `select`.
    fn ratio_bound(&self, d: &PrimeData, select: impl Fn(&Permutation) -> bool) -> Outcome {
        let bound = d.one_over_p();
        let mut det = Details::new();
        let selected: Vec<(&Permutation, &Rational)> = d.nontrivial().filter(|(x, _)| select(x)).collect();
        put(&mut det, "classes_checked", selected.len());
        if let Some(max) = selected.iter().map(|(_, r)| *r).max() {
            put(&mut det, "max_ratio", max);
        }
        put(&mut det, "bound", &bound);
        let bad: Vec<Permutation> = selected.iter().filter(|(_, r)| **r > bound).map(|(x, _)| (*x).clone()).collect();
        Outcome::decide(bad.is_empty(), det, bad)
    }

    fn noncore_ratio_bound(&self, d: &PrimeData) -> Outcome {
        self.ratio_bound(d, |x| !d.core.contains(x))
    }

    fn core_noncentral_bound(&self, d: &PrimeData) -> Outcome {
        self.ratio_bound(d, |x| d.core.contains(x) && !d.core_center.contains(x))
    }

    fn large_ratio_central(&self, d: &PrimeData) -> Outcome {
        let bound = d.one_over_p();
        let large: Vec<(&Permutation, &Rational)> = d.nontrivial().filter(|(_, r)| **r > bound).collect();
        let mut det = Details::new();
        put(&mut det, "large_ratio_classes", large.len());
        put(&mut det, "core_center_order", d.core_center.order());
        if let Some(max) = d.table.fp_max() {
            put(&mut det, "max_ratio", max);
        }
        let bad: Vec<Permutation> =
            large.iter().filter(|(x, _)| !d.core_center.contains(x)).map(|(x, _)| (*x).clone()).collect();
        Outcome::decide(bad.is_empty(), det, bad)
    }

    fn cyclic_conjugates_bound(&self, d: &PrimeData) -> Result<Outcome> {
        let classes = self.group.class_data()?;
        let needed = (d.p * d.p - 1) as u128;
        let mut smallest: Option<u128> = None;
        let mut bad = Vec::new();
        for (x, _) in d.nontrivial().filter(|(x, _)| !d.core.contains(x)) {
            let n = x.order();
            let mut hit = BTreeSet::new();
            for k in (1..n).filter(|&k| gcd(k as u128, n as u128) == 1) {
                hit.insert(self.group.class_index(&x.pow(k))?);
            }
            let size: u128 = hit.iter().map(|&i| classes.classes[i].size).sum();
            smallest = Some(smallest.map_or(size, |s| s.min(size)));
            if size < needed {
                bad.push(x.clone());
            }
        }
        let mut det = Details::new();
        put(&mut det, "bound", needed);
        match smallest {
            Some(s) => put(&mut det, "min_generating_conjugates", s),
            None => put(&mut det, "applies", "false"),
        }
        Ok(Outcome::decide(bad.is_empty(), det, bad))
    }

    fn classwise_sum(&self, d: &PrimeData) -> Result<Outcome> {
        let n = d.table.p_elements;
        let numerator = d.table.numerator();
        let mut det = Details::new();
        put(&mut det, "p_elements", n);
        put(&mut det, "classwise_numerator", numerator);
        let mut ok = true;
        if n * n * self.group.degree() as u128 <= self.config.pair_budget {
            let (pairs, m) = commuting_p_pairs(self.group, d.p)?;
            put(&mut det, "pair_count", pairs);
            ok &= pairs == numerator && m == n;
        } else {
            put(&mut det, "pair_count", "over budget");
        }
        if d.core.is_trivial() {
            let bound = Rational::new(d.p as u128 + n - 1, d.p as u128 * n);
            put(&mut det, "trivial_core_bound", &bound);
            ok &= d.pr_p <= bound;
        }
        Ok(Outcome::decide(ok, det, Vec::new()))
    }

    fn permutation_character(&self, d: &PrimeData) -> Result<Outcome> {
        let mut bad = Vec::new();
        for row in &d.table.rows {
            if permutation_character_ratio(self.group, d.p, &row.representative)? != row.ratio {
                bad.push(row.representative.clone());
            }
        }
        let mut det = Details::new();
        put(&mut det, "classes_checked", d.table.rows.len());
        Ok(Outcome::decide(bad.is_empty(), det, bad))
    }

    fn max_ratio_inequality(&self, d: &PrimeData) -> Outcome {
        let Some(max) = d.table.fp_max() else {
            return Outcome::vacuous("no nontrivial p-element");
        };
        let inv = Rational::new(1, d.table.p_elements);
        let bound = &inv + &(&(&Rational::one() - &inv) * &max);
        let mut det = Details::new();
        put(&mut det, "pr_p", &d.pr_p);
        put(&mut det, "fp_max", &max);
        put(&mut det, "bound", &bound);
        Outcome::decide(d.pr_p <= bound, det, Vec::new())
    }

    fn equality_classification(&self, d: &PrimeData) -> Result<Outcome> {
        if d.pr_p != d.f {
            return Ok(Outcome::vacuous("pr_p differs from f(p)"));
        }
        let residual = self.residual(d)?;
        let mut det = Details::new();
        put(&mut det, "pr_p", &d.pr_p);
        put(&mut det, "residual_order", residual.order());
        put(&mut det, "residual_is_whole_group", residual.order() == self.group.order());
        let shape = classify_equality(residual, d.p)?;
        if let Some((tag, reference)) = &shape {
            put(&mut det, "tag", tag);
            if let Some(r) = reference {
                put(&mut det, "reference", r);
            }
        }
        Ok(Outcome::decide(shape.is_some(), det, residual.generators().to_vec()))
    }

    fn equality_solvable(&self, d: &PrimeData) -> Result<Outcome> {
        if d.pr_p != d.f {
            return Ok(Outcome::vacuous("pr_p differs from f(p)"));
        }
        let residual = self.residual(d)?;
        let mut det = Details::new();
        let ok = match d.p {
            2 => {
                let solvable = self.group.is_solvable()?;
                let second = residual.derived_subgroup()?.derived_subgroup()?;
                put(&mut det, "solvable", solvable);
                put(&mut det, "residual_metabelian", second.is_trivial());
                solvable && second.is_trivial()
            }
            3 => {
                let solvable = residual.is_solvable()?;
                put(&mut det, "residual_solvable", solvable);
                solvable
            }
            _ => return Ok(Outcome::vacuous("only p = 2, 3 are constrained")),
        };
        Ok(Outcome::decide(ok, det, residual.generators().to_vec()))
    }

    fn cyclic_sylow_equality(&self, d: &PrimeData) -> Result<Outcome> {
        if d.sylow.order() != d.p as u128 || d.pr_p != d.f {
            return Ok(Outcome::vacuous("needs a Sylow subgroup of order p and pr_p = f(p)"));
        }
        if self.residual(d)?.order() != self.group.order() {
            return Ok(Outcome::vacuous("group is not generated by its p-elements"));
        }
        let p = d.p;
        let mut candidates = vec![GroupSpec::psl2(p), GroupSpec::sl2(p)];
        if (p + 1).is_power_of_two() && p >= 3 {
            candidates.push(GroupSpec::singer_mersenne((p + 1).trailing_zeros() as u64, 1));
        }
        let fp = fingerprint(self.group)?;
        let mut matched = None;
        for spec in candidates {
            if spec.expected_order()? == self.group.order() && fingerprint(&construct(&spec)?)? == fp {
                matched = Some(spec);
                break;
            }
        }
        let squared = d.table.p_elements == (p * p) as u128;
        let mut det = Details::new();
        put(&mut det, "p_elements", d.table.p_elements);
        put(&mut det, "sylow_count", self.group.sylow_count(p)?);
        if let Some(m) = &matched {
            put(&mut det, "matches", m);
        }
        Ok(Outcome::decide(squared && matched.is_some(), det, Vec::new()))
    }

    /// `Pr_p(G/N)` plus `f_p` of the image of each class representative.
    fn quotient_ratios(&self, d: &PrimeData, n: &PermGroup) -> Result<(Rational, Vec<(Permutation, Rational, Rational)>)> {
        let act = quotient_bounded(self.group, n, self.config.quotient_degree_bound)?;
        let image = act.image();
        let pr = pr_p(image, d.p)?;
        let mut rows = Vec::new();
        for row in &d.table.rows {
            let x = act.image_of(&row.representative)?;
            rows.push((row.representative.clone(), row.ratio.clone(), fp_ratio(image, d.p, &x)?));
        }
        Ok((pr, rows))
    }

    fn quotient_monotonicity(&self, d: &PrimeData) -> Result<Outcome> {
        if d.core.is_trivial() {
            return Ok(Outcome::vacuous("trivial p-core"));
        }
        let mut det = Details::new();
        put(&mut det, "pr_p", &d.pr_p);
        put(&mut det, "core_order", d.core.order());
        if d.core.order() == self.group.order() {
            put(&mut det, "quotient_pr_p", 1);
            return Ok(Outcome::decide(d.pr_p <= Rational::one(), det, Vec::new()));
        }
        let (q, rows) = self.quotient_ratios(d, &d.core)?;
        put(&mut det, "quotient_pr_p", &q);
        let bad: Vec<Permutation> = rows.into_iter().filter(|(_, g, gq)| g > gq).map(|(x, _, _)| x).collect();
        Ok(Outcome::decide(d.pr_p <= q && bad.is_empty(), det, bad))
    }

    fn quotient_counterexample(&self, d: &PrimeData) -> Result<Outcome> {
        let n = self.group.subgroup(vec![smallgroup_420_30_normal_c3()])?;
        let act = quotient_bounded(self.group, &n, self.config.quotient_degree_bound)?;
        let q = pr_p(act.image(), d.p)?;
        let mut det = Details::new();
        put(&mut det, "normal_subgroup_order", n.order());
        put(&mut det, "pr_p", &d.pr_p);
        put(&mut det, "quotient_pr_p", &q);
        let violated = d.pr_p > q;
        put(&mut det, "monotonicity_violated", violated);
        Ok(Outcome::decide(violated, det, n.generators().to_vec()))
    }

    fn central_quotient_invariance(&self, d: &PrimeData) -> Result<Outcome> {
        let center = self.group.center()?;
        let p = d.p as u128;
        let elems: Vec<Permutation> =
            center.elements()?.iter().filter(|z| gcd(z.order() as u128, p) == 1).cloned().collect();
        if elems.len() == 1 {
            return Ok(Outcome::vacuous("no central p'-elements"));
        }
        let n = self.group.subgroup_from_elements(elems);
        let (q, rows) = self.quotient_ratios(d, &n)?;
        let mut det = Details::new();
        put(&mut det, "central_subgroup_order", n.order());
        put(&mut det, "pr_p", &d.pr_p);
        put(&mut det, "quotient_pr_p", &q);
        let bad: Vec<Permutation> = rows.into_iter().filter(|(_, g, gq)| g != gq).map(|(x, _, _)| x).collect();
        Ok(Outcome::decide(d.pr_p == q && bad.is_empty(), det, bad))
    }

    fn cofactor_invariance(&self, d: &PrimeData) -> Result<Outcome> {
        let residual = self.residual(d)?;
        let on_residual = pr_p(residual, d.p)?;
        let mut det = Details::new();
        put(&mut det, "pr_p", &d.pr_p);
        put(&mut det, "residual_order", residual.order());
        put(&mut det, "residual_pr_p", &on_residual);
        let mut ok = on_residual == d.pr_p;
        if self.spec.kind == GroupKind::DirectProduct {
            let p = d.p as u128;
            let (kept, dropped): (Vec<GroupSpec>, Vec<GroupSpec>) = self
                .spec
                .factors
                .iter()
                .cloned()
                .partition(|f| construct(f).map(|g| g.order() % p == 0).unwrap_or(true));
            if !dropped.is_empty() && !kept.is_empty() {
                let reduced = if kept.len() == 1 { kept[0].clone() } else { GroupSpec::direct_product(kept) };
                let g = construct(&reduced)?.with_bound(self.group.enumeration_bound());
                let value = pr_p(&g, d.p)?;
                put(&mut det, "without_p_prime_factors", &reduced);
                put(&mut det, "without_p_prime_factors_pr_p", &value);
                ok &= value == d.pr_p;
            }
        }
        Ok(Outcome::decide(ok, det, residual.generators().to_vec()))
    }

    fn class_count_abelian(&self, d: &PrimeData) -> Result<Outcome> {
        let pr = pr_global(self.group)?;
        let abelian = self.group.is_abelian();
        let mut det = Details::new();
        put(&mut det, "pr", &pr);
        put(&mut det, "f_p", &d.f);
        put(&mut det, "abelian", abelian);
        Ok(Outcome::decide(pr <= d.f || abelian, det, Vec::new()))
    }

    fn witness(&self, p: u64) -> Result<Permutation> {
        match self.spec.kind {
            GroupKind::Ex1 if self.spec.param("p")? == p => ex1_witness(p, self.spec.param("r")?),
            GroupKind::Ex2 if p == 2 => ex2_witness(self.spec.param("r")?),
            _ => Err(Error::InvalidSpec(format!("`{}` has no documented {p}-element witness", self.spec))),
        }
    }

    fn evaluate(&self, invariant: Invariant, prime: Option<u64>) -> Result<(Rational, Option<Permutation>)> {
        let g = self.group;
        let p = || prime.ok_or_else(|| Error::InvalidSpec(format!("`{invariant}` needs a prime")));
        Ok(match invariant {
            Invariant::Order => (Rational::from(g.order()), None),
            Invariant::Pr => (pr_global(g)?, None),
            Invariant::PrP => (pr_p(g, p()?)?, None),
            Invariant::CountPElements => (Rational::from(count_p_elements(g, p()?)?), None),
            Invariant::FpMax => (fp_max(g, p()?)?, None),
            Invariant::SylowCount => (Rational::from(g.sylow_count(p()?)?), None),
            Invariant::WitnessCentralizerP => {
                let x = self.witness(p()?)?;
                let count = g.p_elements(p()?)?.iter().filter(|y| y.commutes_with(&x)).count();
                (Rational::from(count as u128), Some(x))
            }
            Invariant::WitnessRatio => {
                let x = self.witness(p()?)?;
                (fp_ratio(g, p()?, &x)?, Some(x))
            }
        })
    }

    pub(super) fn expected_values(&self, expected: &[&Expectation]) -> Outcome {
        let mut det = Details::new();
        let mut witness = Vec::new();
        let (mut failed, mut too_large) = (false, None);
        for e in expected {
            match self.evaluate(e.invariant, e.prime) {
                Ok((actual, x)) => {
                    if actual == e.value {
                        put(&mut det, e.invariant.name(), &actual);
                    } else {
                        failed = true;
                        put(&mut det, e.invariant.name(), format!("expected {} but computed {actual}", e.value));
                        witness.extend(x);
                    }
                }
                Err(err @ (Error::GroupTooLarge { .. } | Error::IndexTooLarge { .. })) => {
                    put(&mut det, e.invariant.name(), "not computed");
                    too_large = Some(err);
                }
                Err(err) => {
                    failed = true;
                    put(&mut det, e.invariant.name(), format!("error: {err}"));
                }
            }
        }
        match (failed, too_large) {
            (false, Some(err)) => {
                put(&mut det, "error", err);
                Outcome { verdict: Verdict::SkippedTooLarge, details: det, witness }
            }
            _ => Outcome::decide(!failed, det, witness),
        }
    }
}
