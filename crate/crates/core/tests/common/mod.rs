#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use infolattice::perm_groups::{PermGroup, Permutation, Subgroup, DEFAULT_GROUP_CAP};
use infolattice::{Partition, ProbabilitySpace};

pub fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    (1..=n)
        .prop_flat_map(move |k| proptest::collection::vec(0..k, n))
        .prop_map(|labels| Partition::from_labels(&labels))
}

pub fn partitions(n: usize, count: usize) -> impl Strategy<Value = Vec<Partition>> {
    proptest::collection::vec(partition_of(n), count)
}

/// Space with weights 1..=9 on each point.
pub fn space_of(n: usize) -> impl Strategy<Value = Arc<ProbabilitySpace>> {
    proptest::collection::vec(1u32..10, n).prop_map(|w| {
        let total: u32 = w.iter().sum();
        let probs = w
            .iter()
            .map(|&x| BigRational::new(x.into(), total.into()))
            .collect();
        Arc::new(ProbabilitySpace::new(probs).unwrap())
    })
}

pub fn permutation_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

pub fn group_of(n: usize) -> impl Strategy<Value = PermGroup> {
    proptest::collection::vec(permutation_of(n), 1..=2)
        .prop_map(move |gens| PermGroup::new(n, gens).unwrap())
}

/// Every subgroup of `S_n`, found as the groups generated by at most two
/// elements (enough for n ≤ 4), deduplicated by element set.
#[allow(clippy::mutable_key_type)]
pub fn all_subgroups(n: usize) -> Vec<Subgroup> {
    let sym = PermGroup::symmetric(n);
    let elements = sym.enumerate(DEFAULT_GROUP_CAP).unwrap().clone();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i..] {
            let g = PermGroup::new(n, vec![a.clone(), b.clone()]).unwrap();
            let s = Subgroup::new(g, DEFAULT_GROUP_CAP).unwrap();
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
    }
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
