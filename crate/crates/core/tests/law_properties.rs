mod common;

use std::sync::Arc;

use common::{all_subgroups, factorial, partitions};
use infolattice::approximation::{dilate, stirling_error_bound};
use infolattice::laws::{
    builtin_law, eval_on_dilated, eval_on_partitions, eval_on_subgroups, falsify, instance_rng,
    random_partition_instance, replay, FalsifyConfig, Side,
};
use infolattice::perm_groups::DEFAULT_GROUP_CAP as CAP;
use infolattice::{
    common_refinement, coset_partition, entropy, finest_common_coarsening, partition_stabilizer,
    InfoElement, LogBase, Partition, PermGroup, ProbabilitySpace,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const THEOREMS: [&str; 6] = [
    "nonneg",
    "joint-monotone",
    "joint-submodular",
    "zhang-yeung",
    "gk-bound",
    "common-monotone",
];

fn uniform(ps: &[Partition]) -> Vec<InfoElement> {
    let s = Arc::new(ProbabilitySpace::uniform(ps[0].ground_size()).unwrap());
    ps.iter()
        .map(|p| InfoElement::new(p.clone(), s.clone()).unwrap())
        .collect()
}

#[test]
fn coset_entropies_are_log_indices() {
    for n in [3, 4] {
        let subs = all_subgroups(n);
        let sym = PermGroup::symmetric(n);
        let amb = sym.enumerate(CAP).unwrap();
        let g = amb.len() as f64;
        let space = ProbabilitySpace::uniform(amb.len()).unwrap();
        let cosets: Vec<_> = subs
            .iter()
            .map(|s| coset_partition(amb, s.group(), CAP).unwrap())
            .collect();
        for (i, a) in subs.iter().enumerate() {
            for (j, b) in subs.iter().enumerate() {
                let joint = common_refinement(&cosets[i], &cosets[j]).unwrap();
                let common = finest_common_coarsening(&cosets[i], &cosets[j]).unwrap();
                let inter = a.intersection(b, CAP).unwrap().order() as f64;
                let join = a.join(b, CAP).unwrap().order() as f64;
                let hj = entropy(&joint, &space, LogBase::Natural).unwrap();
                let hc = entropy(&common, &space, LogBase::Natural).unwrap();
                assert!((hj - (g / inter).ln()).abs() < 1e-12);
                assert!((hc - (g / join).ln()).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn theorems_hold_on_seeded_random_instances() {
    let cfg = FalsifyConfig::default();
    for name in THEOREMS {
        let law = builtin_law(name).unwrap();
        for i in 0..300 {
            let inst = random_partition_instance(&mut instance_rng(99, i), law.n_vars, &cfg);
            let r = eval_on_partitions(&law, &inst.info_elements()).unwrap();
            assert!(
                r.satisfied,
                "{name} fails on instance {i}: margin {}",
                r.margin
            );
        }
    }
}

#[test]
fn stabilizer_log_indices_equal_dilated_log_indices() {
    // the stabilizers of uniform partitions realize the K = 1 dilation exactly
    let law = builtin_law("common-submodular").unwrap();
    let cfg = FalsifyConfig {
        min_ground: 3,
        max_ground: 6,
        ..FalsifyConfig::default()
    };
    for i in 0..40 {
        let inst = random_partition_instance(&mut instance_rng(5, i), law.n_vars, &cfg);
        let n = inst.space.size();
        let stabs: Vec<PermGroup> = inst.elements.iter().map(partition_stabilizer).collect();
        let g = eval_on_subgroups(&law, &stabs, factorial(n), n, CAP).unwrap();
        let d = eval_on_dilated(&law, &inst.info_elements(), 1).unwrap();
        assert!((g.lhs_value - d.lhs_value).abs() < 1e-12, "instance {i}");
    }
}

#[test]
fn invalid_conjectures_keep_their_sign_after_dilation() {
    let cfg = FalsifyConfig {
        max_ground: 5,
        ..FalsifyConfig::default()
    };
    for name in ["common-submodular", "common-supermodular"] {
        let law = builtin_law(name).unwrap();
        let mut checked = 0;
        for i in 0..2000 {
            let inst = random_partition_instance(&mut instance_rng(17, i), law.n_vars, &cfg);
            let elems = inst.info_elements();
            let h = eval_on_partitions(&law, &elems).unwrap();
            if h.satisfied || h.margin < 0.05 {
                continue;
            }
            let k = 400;
            let (_, dilated) = dilate(&inst.space, &inst.elements, k).unwrap();
            let slack: f64 = law
                .terms
                .iter()
                .map(|t| {
                    let c = t.coef.to_f64().unwrap().abs();
                    let p = infolattice::lattice::evaluate_term(
                        &t.term,
                        &dilated,
                        &mut |a, b| common_refinement(a, b),
                        &mut |a, b| finest_common_coarsening(a, b),
                    )
                    .unwrap();
                    c * stirling_error_bound(&p)
                })
                .sum();
            if slack >= h.margin {
                continue;
            }
            let l = eval_on_dilated(&law, &elems, k).unwrap();
            assert!(!l.satisfied, "{name} instance {i} changes sign");
            assert!((l.lhs_value - h.lhs_value).abs() <= slack);
            checked += 1;
            if checked == 10 {
                break;
            }
        }
        assert!(checked > 0, "no well-separated violation of {name} found");
    }
}

#[test]
fn counterexamples_replay_exactly() {
    let cfg = FalsifyConfig::default();
    for (name, side) in [
        ("common-supermodular", Side::Subgroups),
        ("common-submodular", Side::Subgroups),
        ("common-submodular", Side::Partitions),
        ("common-supermodular", Side::Partitions),
    ] {
        let law = builtin_law(name).unwrap();
        for seed in 0..3 {
            let cx = falsify(&law, side, 10_000, seed, &cfg).unwrap();
            let cx = cx.unwrap_or_else(|| panic!("{name} on {side} has no counterexample"));
            let r = replay(&cx, CAP).unwrap();
            assert!(!r.satisfied);
            assert!((r.margin - cx.margin).abs() <= 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn theorems_hold_on_arbitrary_partitions(v in (1usize..=7).prop_flat_map(|n| partitions(n, 4))) {
        let elems = uniform(&v);
        for name in THEOREMS {
            let law = builtin_law(name).unwrap();
            let r = eval_on_partitions(&law, &elems[..law.n_vars]).unwrap();
            prop_assert!(r.satisfied, "{} margin {}", name, r.margin);
        }
    }
}
