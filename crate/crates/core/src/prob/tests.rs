use super::*;
use crate::groups::{construct, ex1_witness, ex2_witness, GroupSpec};

fn group(spec: GroupSpec) -> PermGroup {
    construct(&spec).unwrap()
}

fn q(n: u128, d: u128) -> Rational {
    Rational::new(n, d)
}

fn element_of_order(g: &PermGroup, order: u64) -> Permutation {
    g.elements().unwrap().iter().find(|x| x.order() == order).unwrap().clone()
}

#[test]
fn thresholds() {
    assert_eq!(f_threshold(2).unwrap(), q(5, 8));
    assert_eq!(f_threshold(3).unwrap(), q(11, 27));
    assert_eq!(f_threshold(5).unwrap(), q(29, 125));
    assert_eq!(f_threshold(7).unwrap(), q(55, 343));
    assert!(matches!(f_threshold(4), Err(Error::NotPrime(4))));
}

#[test]
fn p_element_counts() {
    assert_eq!(count_p_elements(&group(GroupSpec::dihedral(4)), 2).unwrap(), 8);
    assert_eq!(count_p_elements(&group(GroupSpec::alternating(4)), 3).unwrap(), 9);
    assert_eq!(count_p_elements(&group(GroupSpec::cyclic(5)), 3).unwrap(), 1);
}

#[test]
fn commuting_probabilities() {
    let d8 = group(GroupSpec::dihedral(4));
    assert_eq!(pr_p(&d8, 2).unwrap(), q(5, 8));
    assert_eq!(pr_global(&d8).unwrap(), q(5, 8));
    assert_eq!(pr_global_pair_count(&d8).unwrap(), q(5, 8));
    let s3 = group(GroupSpec::symmetric(3));
    assert_eq!(pr_global(&s3).unwrap(), q(1, 2));
    assert_eq!(pr_global_pair_count(&s3).unwrap(), q(1, 2));
    let c12 = group(GroupSpec::cyclic(12));
    assert!(pr_p(&c12, 2).unwrap().is_one());
    assert!(pr_p(&c12, 5).unwrap().is_one());
    assert!(pr_global(&c12).unwrap().is_one());
    let a5 = group(GroupSpec::psl2(5));
    assert_eq!(pr_p(&a5, 5).unwrap(), f_threshold(5).unwrap());
    assert_eq!(pr_p_pair_count(&a5, 5).unwrap(), q(29, 125));
}

#[test]
fn rotation_ratio_in_dihedral_groups() {
    for m in 1..=3u64 {
        let n = 4 * (2 * m + 1);
        let g = group(GroupSpec::dihedral(n));
        let rotation = g.generators()[0].pow(n / 4);
        assert_eq!(rotation.order(), 4);
        assert_eq!(fp_ratio(&g, 2, &rotation).unwrap(), q(1, 2 * m as u128 + 2));
    }
}

#[test]
fn ratio_errors() {
    let s3 = group(GroupSpec::symmetric(3));
    let three_cycle = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
    assert!(matches!(fp_ratio(&s3, 2, &three_cycle), Err(Error::NotPElement { p: 2 })));
    let a3 = group(GroupSpec::alternating(3));
    let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
    assert!(matches!(fp_ratio(&a3, 2, &t), Err(Error::NotAMember)));
    assert!(fp_ratio(&s3, 2, &s3.identity()).unwrap().is_one());
    assert!(matches!(fp_max(&group(GroupSpec::cyclic(5)), 2), Err(Error::NoNontrivialPElement { p: 2 })));
}

#[test]
fn max_ratios() {
    assert!(fp_max(&group(GroupSpec::dihedral(4)), 2).unwrap().is_one());
    assert_eq!(fp_max(&group(GroupSpec::alternating(4)), 3).unwrap(), q(1, 3));
    assert_eq!(fp_max(&group(GroupSpec::psl2(7)), 7).unwrap(), q(1, 7));
}

#[test]
fn permutation_character_matches_ratio() {
    let a4 = group(GroupSpec::alternating(4));
    let x = element_of_order(&a4, 3);
    assert_eq!(permutation_character_ratio(&a4, 3, &x).unwrap(), q(1, 3));
    assert!(permutation_character_ratio(&a4, 3, &a4.identity()).unwrap().is_one());
    for spec in [GroupSpec::symmetric(5), GroupSpec::sl2(3), GroupSpec::ex2(3)] {
        let g = group(spec);
        for c in g.conjugacy_classes().unwrap().iter().filter(|c| is_power_of(c.element_order, 2)) {
            let x = &c.representative;
            assert_eq!(permutation_character_ratio(&g, 2, x).unwrap(), fp_ratio(&g, 2, x).unwrap());
        }
    }
}

#[test]
fn ratio_table_reproduces_the_numerator() {
    let g = group(GroupSpec::symmetric(4));
    let table = ratio_table(&g, 2).unwrap();
    assert_eq!(table.rows[0].element_order, 1);
    assert!(table.rows[0].ratio.is_one());
    assert_eq!(table.rows.iter().map(|r| r.class_size).sum::<u128>(), table.p_elements);
    let (pairs, n) = commuting_p_pairs(&g, 2).unwrap();
    assert_eq!(table.numerator(), pairs);
    assert_eq!(table.p_elements, n);
    assert_eq!(table.pr_p(), pr_p_pair_count(&g, 2).unwrap());
}

#[test]
fn pair_count_agrees_with_classwise_sum() {
    let specs = [
        GroupSpec::dihedral(6),
        GroupSpec::symmetric(4),
        GroupSpec::symmetric(5),
        GroupSpec::alternating(6),
        GroupSpec::psl2(7),
        GroupSpec::sl2(5),
        GroupSpec::q8_ext(2),
        GroupSpec::c3_ext(3),
        GroupSpec::singer_mersenne(3, 1),
        GroupSpec::ex2(5),
        GroupSpec::smallgroup_420_30(),
    ];
    for spec in specs {
        let g = group(spec.clone());
        for p in crate::arith::prime_divisors(g.order()) {
            assert_eq!(pr_p(&g, p).unwrap(), pr_p_pair_count(&g, p).unwrap(), "{spec} p={p}");
        }
    }
}

#[test]
fn probability_one_iff_normal_abelian_sylow() {
    for spec in [
        GroupSpec::cyclic(12),
        GroupSpec::dihedral(5),
        GroupSpec::alternating(4),
        GroupSpec::symmetric(4),
        GroupSpec::c3_ext(2),
        GroupSpec::q8_ext(1),
    ] {
        let g = group(spec.clone());
        for p in crate::arith::prime_divisors(g.order()) {
            let s = g.sylow_subgroup(p).unwrap();
            let structural = g.is_normal(&s).unwrap() && s.is_abelian();
            assert_eq!(pr_p(&g, p).unwrap().is_one(), structural, "{spec} p={p}");
        }
    }
}

#[test]
fn ex1_closed_forms() {
    assert_eq!(ex1_counts(3, 7).unwrap(), (6183, 8829));
    let g = group(GroupSpec::ex1(3, 7));
    let x = ex1_witness(3, 7).unwrap();
    let pelems = g.p_elements(3).unwrap();
    assert_eq!(pelems.len(), 8829);
    assert_eq!(pelems.iter().filter(|y| y.commutes_with(&x)).count(), 6183);
    assert_eq!(fp_ratio(&g, 3, &x).unwrap(), q(6183, 8829));
    assert!(ex1_counts(3, 5).is_err());
}

#[test]
fn ex2_closed_forms() {
    assert_eq!(ex2_counts(3).unwrap(), (40, 64));
    let mut previous = Rational::zero();
    for r in [3, 5, 7, 11] {
        let (c, n) = ex2_counts(r).unwrap();
        let g = group(GroupSpec::ex2(r));
        let x = ex2_witness(r).unwrap();
        assert_eq!(count_p_elements(&g, 2).unwrap(), n);
        assert_eq!(fp_ratio(&g, 2, &x).unwrap(), q(c, n));
        let ratio = q(c, n);
        assert!(ratio > previous);
        previous = ratio;
    }
    assert_eq!(fp_ratio(&group(GroupSpec::ex2(3)), 2, &ex2_witness(3).unwrap()).unwrap(), q(5, 8));
}

#[test]
fn alternating_groups_trend_downward() {
    for p in [2, 3, 5] {
        let a5 = pr_p(&group(GroupSpec::alternating(5)), p).unwrap();
        let a9 = pr_p(&group(GroupSpec::alternating(9)), p).unwrap();
        assert!(a9 < a5, "p={p}: {a9} vs {a5}");
    }
}
