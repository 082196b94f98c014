//! Corpus verification: structural statements about `Pr_p` and centralizer
//! ratios, checked group by group and prime by prime.

mod checks;
mod classify;
mod corpus;
mod report;

pub use classify::{abelian_p_groups, classify_equality, EqualityTag};
pub use corpus::{Corpus, CorpusEntry, Expectation, Invariant, CORPUS_VERSION, DEFAULT_CORPUS};
pub use report::{CheckId, Summary, VerificationReport, Verdict};

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;

use crate::arith::prime_divisors;
use crate::fpr::DEFAULT_DEGREE_BOUND;
use crate::groups::{construct, GroupSpec};
use crate::perm::DEFAULT_ENUMERATION_BOUND;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Checks to run; `None` runs all of them.
    pub checks: Option<BTreeSet<CheckId>>,
    pub enumeration_bound: usize,
    /// Largest index of a quotient realized as a coset action.
    pub quotient_degree_bound: usize,
    /// The pair-count oracle runs when `|G_p|² · degree` stays below this.
    pub pair_budget: u128,
    /// Record wall times; off gives byte-stable reports.
    pub record_timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            checks: None,
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            quotient_degree_bound: DEFAULT_DEGREE_BOUND,
            pair_budget: 4_000_000_000,
            record_timings: true,
        }
    }
}

impl VerifyConfig {
    pub fn enabled(&self, check: CheckId) -> bool {
        self.checks.as_ref().is_none_or(|set| set.contains(&check))
    }
}

/// Every enabled check over every corpus entry, entries in parallel; reports
/// sorted by (spec, prime, check).
pub fn run_corpus(corpus: &Corpus, config: &VerifyConfig) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> =
        corpus.entries.par_iter().flat_map(|entry| run_entry(entry, config)).collect();
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    reports
}

/// Checks for a single group with default primes and no expectations.
pub fn run_spec(spec: &GroupSpec, config: &VerifyConfig) -> Vec<VerificationReport> {
    let entry = CorpusEntry { spec: spec.clone(), primes: None, expected: Vec::new() };
    let mut reports = run_entry(&entry, config);
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    reports
}

fn run_entry(entry: &CorpusEntry, config: &VerifyConfig) -> Vec<VerificationReport> {
    let spec_text = entry.spec.to_string();
    let group = match construct(&entry.spec) {
        Ok(g) => g.with_bound(config.enumeration_bound),
        Err(e) => {
            let mut details = BTreeMap::new();
            details.insert("error".to_string(), e.to_string());
            return vec![VerificationReport {
                check: CheckId::ExpectedValues,
                spec: spec_text,
                prime: None,
                verdict: Verdict::Fail,
                details,
                witness: Vec::new(),
                wall_time_ms: 0,
            }];
        }
    };
    let primes: Vec<u64> = match &entry.primes {
        Some(ps) => ps.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
        None => prime_divisors(group.order()),
    };
    let ctx = checks::GroupContext::new(&entry.spec, &group, config, &primes);
    let mut jobs: Vec<(Option<u64>, CheckId)> = Vec::new();
    for &p in &primes {
        for check in CheckId::PER_PRIME {
            if config.enabled(check) && ctx.applies(check, p) {
                jobs.push((Some(p), check));
            }
        }
    }
    if config.enabled(CheckId::ClassCountAbelian) {
        if let Some(&p) = prime_divisors(group.order()).first() {
            jobs.push((Some(p), CheckId::ClassCountAbelian));
        }
    }
    if config.enabled(CheckId::ExpectedValues) {
        let keys: BTreeSet<Option<u64>> = entry.expected.iter().map(|e| e.prime).collect();
        jobs.extend(keys.into_iter().map(|p| (p, CheckId::ExpectedValues)));
    }

    jobs.par_iter()
        .map(|&(p, check)| {
            let start = Instant::now();
            let outcome = match check {
                CheckId::ExpectedValues => {
                    let expected: Vec<&Expectation> = entry.expected.iter().filter(|e| e.prime == p).collect();
                    ctx.expected_values(&expected)
                }
                _ => ctx.run(check, p.expect("per-prime check")),
            };
            let wall_time_ms = if config.record_timings { start.elapsed().as_millis() as u64 } else { 0 };
            outcome.into_report(check, spec_text.clone(), p, wall_time_ms, &group)
        })
        .collect()
}

#[cfg(test)]
mod tests;
