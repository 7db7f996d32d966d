mod common;

use common::{partition_of, partitions, space_of};
use infolattice::partitions::{all_partitions, equivalence_witness, rv_to_partition};
use infolattice::{
    common_refinement as cr, conditional_entropy, entropy, finest_common_coarsening as fcc,
    mutual_information, refines, LogBase, Partition, ProbabilitySpace,
};
use proptest::prelude::*;

const E: LogBase = LogBase::Natural;

proptest! {
    #[test]
    fn join_and_meet_form_a_lattice(v in (1usize..=7).prop_flat_map(|n| partitions(n, 3))) {
        let (p, q, r) = (&v[0], &v[1], &v[2]);
        for op in [cr, fcc] {
            prop_assert_eq!(op(p, q).unwrap(), op(q, p).unwrap());
            prop_assert_eq!(op(p, p).unwrap(), p.clone());
            let left = op(&op(p, q).unwrap(), r).unwrap();
            let right = op(p, &op(q, r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
        prop_assert_eq!(fcc(p, &cr(p, q).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(cr(p, &fcc(p, q).unwrap()).unwrap(), p.clone());
    }

    #[test]
    fn refinement_is_a_partial_order(v in (1usize..=6).prop_flat_map(|n| partitions(n, 3))) {
        let (p, q, r) = (&v[0], &v[1], &v[2]);
        prop_assert!(refines(p, p).unwrap());
        if refines(p, q).unwrap() && refines(q, p).unwrap() {
            prop_assert_eq!(p, q);
        }
        if refines(p, q).unwrap() && refines(q, r).unwrap() {
            prop_assert!(refines(p, r).unwrap());
        }
    }

    #[test]
    fn refinement_matches_join_and_conditional_entropy(
        (v, s) in (1usize..=7).prop_flat_map(|n| (partitions(n, 2), space_of(n)))
    ) {
        let (p, q) = (&v[0], &v[1]);
        let r = refines(p, q).unwrap();
        prop_assert_eq!(r, &cr(p, q).unwrap() == p);
        let h = conditional_entropy(q, p, &s, E).unwrap();
        if r {
            prop_assert_eq!(h, 0.0);
        } else {
            prop_assert!(h > 1e-9);
        }
    }

    #[test]
    fn finer_partitions_have_more_entropy(
        (v, s) in (1usize..=7).prop_flat_map(|n| (partitions(n, 2), space_of(n)))
    ) {
        let fine = cr(&v[0], &v[1]).unwrap();
        let coarse = fcc(&v[0], &v[1]).unwrap();
        for x in [&v[0], &v[1]] {
            let h = entropy(x, &s, E).unwrap();
            prop_assert!(entropy(&fine, &s, E).unwrap() >= h - 1e-12);
            prop_assert!(entropy(&coarse, &s, E).unwrap() <= h + 1e-12);
        }
    }

    #[test]
    fn common_information_is_below_mutual_information(
        (v, s) in (1usize..=8).prop_flat_map(|n| (partitions(n, 2), space_of(n)))
    ) {
        let (p, q) = (&v[0], &v[1]);
        let common = entropy(&fcc(p, q).unwrap(), &s, E).unwrap();
        prop_assert!(common <= mutual_information(p, q, &s, E).unwrap() + 1e-12);
    }

    #[test]
    fn relabelled_variables_are_equivalent(
        labels in proptest::collection::vec(0u8..5, 1..10),
        shift in 1u8..50,
    ) {
        let relabelled: Vec<u32> = labels.iter().map(|&x| x as u32 * 7 + shift as u32).collect();
        let w = equivalence_witness(&labels, &relabelled).unwrap().unwrap();
        for (a, b) in labels.iter().zip(&relabelled) {
            prop_assert_eq!(w[a], *b);
        }
    }

    #[test]
    fn equivalence_iff_same_partition(
        (a, b) in (1usize..9).prop_flat_map(|n| (
            proptest::collection::vec(0u8..3, n),
            proptest::collection::vec(0u8..3, n),
        ))
    ) {
        let same = rv_to_partition(&a).unwrap() == rv_to_partition(&b).unwrap();
        prop_assert_eq!(equivalence_witness(&a, &b).unwrap().is_some(), same);
    }

    #[test]
    fn join_is_the_coarsest_common_refinement(v in partitions(5, 2)) {
        let (p, q) = (&v[0], &v[1]);
        let join = cr(p, q).unwrap();
        for r in all_partitions(5) {
            if refines(&r, p).unwrap() && refines(&r, q).unwrap() {
                prop_assert!(refines(&r, &join).unwrap());
            }
        }
    }
}

#[test]
fn meet_is_the_finest_common_coarsening_exhaustively() {
    for n in 1..=5 {
        let all = all_partitions(n);
        for p in &all {
            for q in &all {
                let meet = fcc(p, q).unwrap();
                assert!(refines(p, &meet).unwrap() && refines(q, &meet).unwrap());
                for r in &all {
                    if refines(p, r).unwrap() && refines(q, r).unwrap() {
                        assert!(refines(&meet, r).unwrap(), "{p} {q} {r}");
                    }
                }
            }
        }
    }
}

#[test]
fn entropy_order_does_not_imply_refinement() {
    let p = Partition::parse("1,2|3|4", 4).unwrap();
    let q = Partition::parse("1|2,3,4", 4).unwrap();
    let s = ProbabilitySpace::uniform(4).unwrap();
    assert!(entropy(&p, &s, E).unwrap() > entropy(&q, &s, E).unwrap());
    assert!(!refines(&p, &q).unwrap());
}

proptest! {
    #[test]
    fn entropy_is_invariant_under_canonical_relabelling(p in partition_of(6)) {
        let s = ProbabilitySpace::uniform(6).unwrap();
        let again = Partition::parse(&p.to_string(), 6).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(entropy(&again, &s, E).unwrap(), entropy(&p, &s, E).unwrap());
    }
}
