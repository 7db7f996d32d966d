mod common;

use std::sync::Arc;

use common::{partitions, space_of};
use infolattice::lattice::{semilattice_vectors, SlotKind, DEFAULT_NODE_CAP};
use infolattice::perm_groups::DEFAULT_GROUP_CAP;
use infolattice::{
    dual_isomorphism_check, entropy, partition_lattice, Convention, InfoElement, LogBase,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_tables_satisfy_lattice_axioms(
        v in (2usize..=5).prop_flat_map(|n| (1usize..=3).prop_flat_map(move |k| partitions(n, k)))
    ) {
        for conv in [Convention::Info, Convention::Partition] {
            let l = partition_lattice(&v, conv, DEFAULT_NODE_CAP).unwrap();
            prop_assert!(l.len() <= 60);
            prop_assert_eq!(l.check_axioms(), Ok(()));
        }
    }

    #[test]
    fn entropy_increases_along_hasse_edges(
        (v, s) in (2usize..=6).prop_flat_map(|n| (partitions(n, 3), space_of(n)))
    ) {
        let l = partition_lattice(&v, Convention::Info, DEFAULT_NODE_CAP).unwrap();
        for &(lo, hi) in &l.hasse_edges {
            let (hl, hh) = (
                entropy(&l.nodes[lo], &s, LogBase::Natural).unwrap(),
                entropy(&l.nodes[hi], &s, LogBase::Natural).unwrap(),
            );
            prop_assert!(hh >= hl - 1e-12);
            prop_assert!(l.nodes[hi].refines(&l.nodes[lo]).unwrap());
        }
    }

    #[test]
    fn stabilizer_lattice_is_dual(
        v in (2usize..=6).prop_flat_map(|n| (1usize..=4).prop_flat_map(move |k| partitions(n, k)))
    ) {
        let rep = dual_isomorphism_check(&v, DEFAULT_NODE_CAP, DEFAULT_GROUP_CAP).unwrap();
        prop_assert!(rep.passed, "{:?}", rep.failures);
        prop_assert_eq!(rep.info_nodes, rep.group_nodes);
    }

    #[test]
    fn vector_entries_are_sandwiched(
        (v, s) in (2usize..=6).prop_flat_map(|n| ((2usize..=4).prop_flat_map(move |k| partitions(n, k)), space_of(n)))
    ) {
        let elems: Vec<InfoElement> = v
            .iter()
            .map(|p| InfoElement::new(p.clone(), Arc::clone(&s)).unwrap())
            .collect();
        let vec = semilattice_vectors(&elems).unwrap();
        let h: Vec<f64> = elems.iter().map(|e| e.entropy(LogBase::Natural)).collect();
        let join_entry = |subset: &[usize]| {
            let i = vec
                .slots
                .iter()
                .position(|s| s.kind == SlotKind::Join && s.subset == subset)
                .unwrap();
            vec.entries[i]
        };
        for (slot, &value) in vec.slots.iter().zip(&vec.entries) {
            if slot.kind != SlotKind::Meet {
                continue;
            }
            let joint = join_entry(&slot.subset);
            for &i in &slot.subset {
                prop_assert!(value <= h[i - 1] + 1e-12);
                prop_assert!(h[i - 1] <= joint + 1e-12);
            }
        }
    }
}
