use super::*;
use crate::prob::Rational;

fn config() -> VerifyConfig {
    VerifyConfig { record_timings: false, ..VerifyConfig::default() }
}

fn only(checks: &[CheckId]) -> VerifyConfig {
    VerifyConfig { checks: Some(checks.iter().copied().collect()), ..config() }
}

fn report(spec: &str, p: u64, check: CheckId) -> VerificationReport {
    let spec: GroupSpec = spec.parse().unwrap();
    let mut reports = run_spec(&spec, &only(&[check]));
    reports.retain(|r| r.prime == Some(p));
    assert_eq!(reports.len(), 1, "{spec} p={p} {check}: {reports:?}");
    reports.pop().unwrap()
}

fn detail<'a>(r: &'a VerificationReport, key: &str) -> &'a str {
    r.details.get(key).map(String::as_str).unwrap_or_else(|| panic!("no `{key}` in {:?}", r.details))
}

#[test]
fn threshold_biconditional_examples() {
    let r = report("dihedral:n=4", 2, CheckId::ThresholdBiconditional);
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(detail(&r, "pr_p"), "5/8");
    assert_eq!(detail(&r, "above_threshold"), "false");
    assert_eq!(detail(&r, "sylow_normal"), "true");
    assert_eq!(detail(&r, "sylow_abelian"), "false");
    let r = report("cyclic:n=4", 2, CheckId::ThresholdBiconditional);
    assert_eq!((r.verdict, detail(&r, "pr_p"), detail(&r, "above_threshold")), (Verdict::Pass, "1", "true"));
    let r = report("symmetric:n=4", 2, CheckId::ThresholdBiconditional);
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(detail(&r, "pr_p").parse::<Rational>().unwrap() < Rational::new(5, 8));
    assert_eq!(detail(&r, "sylow_normal"), "false");
}

#[test]
fn ratio_bound_examples() {
    let r = report("psl2:p=7", 7, CheckId::NoncoreRatioBound);
    assert_eq!((r.verdict, detail(&r, "max_ratio")), (Verdict::Pass, "1/7"));
    let r = report("dihedral:n=4", 2, CheckId::NoncoreRatioBound);
    assert_eq!((r.verdict, detail(&r, "classes_checked")), (Verdict::Pass, "0"));
    assert_eq!(report("symmetric:n=6", 2, CheckId::NoncoreRatioBound).verdict, Verdict::Pass);
}

#[test]
fn large_ratio_examples() {
    let r = report("ex2:r=3", 2, CheckId::LargeRatioCentral);
    assert_eq!(r.verdict, Verdict::Pass);
    // The central involution has ratio 1; the order-4 witness adds more classes above 1/2.
    assert_eq!(detail(&r, "max_ratio"), "1");
    assert!(detail(&r, "large_ratio_classes").parse::<usize>().unwrap() >= 2);
    assert_eq!(report("cyclic:n=6", 3, CheckId::LargeRatioCentral).verdict, Verdict::Pass);
    // The order-4 rotation of D_24 is central in O_2 yet has ratio 1/4.
    let r = report("dihedral:n=12", 2, CheckId::LargeRatioCentral);
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn cyclic_conjugate_counts() {
    for (spec, p, count) in [("symmetric:n=3", 2, "3"), ("psl2:p=7", 7, "48"), ("alternating:n=4", 3, "8")] {
        let r = report(spec, p, CheckId::CyclicConjugatesBound);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(detail(&r, "min_generating_conjugates"), count, "{spec}");
    }
}

#[test]
fn equality_tags() {
    let tag = |spec: &str, p: u64| {
        let r = report(spec, p, CheckId::EqualityClassification);
        assert_eq!(r.verdict, Verdict::Pass, "{spec}: {:?}", r.details);
        (detail(&r, "tag").to_string(), r.details.get("reference").cloned())
    };
    assert_eq!(tag("dihedral:n=4", 2), ("i".to_string(), None));
    assert_eq!(tag("symmetric:n=3", 2), ("v".to_string(), Some("c3_ext:k=1".to_string())));
    assert_eq!(tag("singer_mersenne:k=1,r=3", 7).0, "iii");
    assert_eq!(tag("psl2:p=5 * cyclic:n=5", 5), ("ii".to_string(), Some("psl2:p=5 * cyclic:n=5".to_string())));
    assert_eq!(tag("sl2:p=3", 3).0, "iv");
    assert_eq!(tag("psl2:p=5 * cyclic:n=3", 5).1, Some("psl2:p=5".to_string()));
    let r = report("symmetric:n=4", 2, CheckId::EqualityClassification);
    assert_eq!(detail(&r, "applies"), "false");
}

#[test]
fn quotient_examples() {
    let r = report("symmetric:n=4", 2, CheckId::QuotientMonotonicity);
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(detail(&r, "core_order"), "4");
    let s3 = crate::prob::pr_p(&construct(&GroupSpec::symmetric(3)).unwrap(), 2).unwrap();
    assert_eq!(detail(&r, "quotient_pr_p"), s3.to_string());
    let r = report("psl2:p=7", 2, CheckId::QuotientMonotonicity);
    assert_eq!(detail(&r, "applies"), "false");
    let r = report("smallgroup_420_30", 2, CheckId::QuotientCounterexample);
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(detail(&r, "pr_p"), "211/1296");
    assert_eq!(detail(&r, "quotient_pr_p"), "11/72");
    let r = report("sl2:p=5 * cyclic:n=3", 5, CheckId::CentralQuotientInvariance);
    assert_eq!((r.verdict, detail(&r, "central_subgroup_order")), (Verdict::Pass, "6"));
}

#[test]
fn cofactor_drops_out() {
    let r = report("psl2:p=7 * cyclic:n=2", 7, CheckId::CofactorInvariance);
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(detail(&r, "without_p_prime_factors"), "psl2:p=7");
    assert_eq!(detail(&r, "without_p_prime_factors_pr_p"), "55/343");
}

#[test]
fn quotient_counterexample_only_for_its_group() {
    let reports = run_spec(&GroupSpec::symmetric(4), &only(&[CheckId::QuotientCounterexample]));
    assert!(reports.is_empty());
}

#[test]
fn oversized_groups_are_skipped() {
    let cfg = VerifyConfig { enumeration_bound: 100, ..only(&[CheckId::ThresholdBiconditional]) };
    let reports = run_spec(&GroupSpec::symmetric(5), &cfg);
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r.verdict == Verdict::SkippedTooLarge && r.witness.is_empty()));
}

#[test]
fn empty_corpus_gives_no_reports() {
    assert!(run_corpus(&Corpus::new(Vec::new()), &config()).is_empty());
}

#[test]
fn wrong_expectation_fails_with_witness() {
    let corpus = Corpus::parse(
        r#"{"version": 1, "entries": [
            {"spec": "dihedral:n=4", "expected": [
                {"invariant": "pr_p", "prime": 2, "value": "5/8"},
                {"invariant": "pr", "value": "1/2"}
            ]}
        ]}"#,
    )
    .unwrap();
    let reports = run_corpus(&corpus, &only(&[CheckId::ExpectedValues]));
    assert_eq!(reports.len(), 2);
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| r.verdict == Verdict::Fail).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].prime, None);
    assert!(!failed[0].witness.is_empty());
    assert_eq!(detail(failed[0], "pr"), "expected 1/2 but computed 5/8");
}

#[test]
fn witness_invariants() {
    let corpus = Corpus::parse(
        r#"{"version": 1, "entries": [{"spec": "ex2:r=3", "primes": [2], "expected": [
            {"invariant": "witness_centralizer_p", "prime": 2, "value": "40"},
            {"invariant": "count_p_elements", "prime": 2, "value": "64"},
            {"invariant": "witness_ratio", "prime": 2, "value": "5/8"}
        ]}]}"#,
    )
    .unwrap();
    let reports = run_corpus(&corpus, &only(&[CheckId::ExpectedValues]));
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].verdict, Verdict::Pass, "{:?}", reports[0].details);
}

#[test]
fn reports_are_sorted_and_deterministic() {
    let corpus = Corpus::parse(
        r#"{"version": 1, "entries": [{"spec": "symmetric:n=4"}, {"spec": "alternating:n=4"}, {"spec": "dihedral:n=6"}]}"#,
    )
    .unwrap();
    let a = run_corpus(&corpus, &config());
    let b = run_corpus(&corpus, &config());
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[0].sort_key() <= w[1].sort_key()));
    assert!(a.iter().all(|r| r.verdict == Verdict::Pass), "{:?}", a.iter().find(|r| r.verdict != Verdict::Pass));
}

#[test]
fn corpus_parse_errors() {
    let err = Corpus::parse("{\"version\": 1, \"entries\": [\n  {\"spec\": \"nonsense:n=3\"}\n]}").unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
    assert!(Corpus::parse(r#"{"version": 7, "entries": []}"#).is_err());
    assert!(Corpus::parse(r#"{"version": 1, "entries": [{"spec": "cyclic:n=4", "primes": [4]}]}"#).is_err());
    let missing_prime = r#"{"version": 1, "entries": [{"spec": "cyclic:n=4",
        "expected": [{"invariant": "pr_p", "value": "1"}]}]}"#;
    assert!(Corpus::parse(missing_prime).unwrap_err().to_string().contains("entry 0"));
    assert!(Corpus::parse(r#"{"version": 1, "entries": [{"spec": "cyclic:n=4",
        "expected": [{"invariant": "pr", "value": 0.5}]}]}"#)
    .is_err());
}

#[test]
fn corpus_round_trips() {
    let corpus = Corpus::default_corpus();
    assert!(corpus.entries.len() > 50);
    let again = Corpus::parse(&corpus.to_json()).unwrap();
    assert_eq!(again, corpus);
    assert_eq!(again.to_json(), corpus.to_json());
}

#[test]
fn check_names_round_trip() {
    for c in CheckId::ALL {
        assert_eq!(c.name().parse::<CheckId>().unwrap(), c);
        assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
    }
    assert_eq!(CheckId::parse_list("classwise_sum, max_ratio_inequality").unwrap().len(), 2);
    assert!(CheckId::parse_list("theorem_z").is_err());
    for i in Invariant::ALL {
        assert_eq!(serde_json::to_string(&i).unwrap(), format!("\"{}\"", i.name()));
    }
}
