mod common;

use std::sync::Arc;

use common::{partitions, space_of};
use infolattice::approximation::{
    convergence_scan, dilate, log_index_of_partition, stirling_error_bound,
};
use infolattice::{
    common_refinement, entropy, finest_common_coarsening, InfoElement, LogBase, ProbabilitySpace,
};
use proptest::prelude::*;

const E: LogBase = LogBase::Natural;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dilation_preserves_entropy_and_commutes(
        (v, s, k) in (1usize..=5).prop_flat_map(|n| (partitions(n, 2), space_of(n), 1usize..=3))
    ) {
        let (plan, d) = dilate(&s, &v, k).unwrap();
        let u = ProbabilitySpace::uniform(plan.dilated_size).unwrap();
        for (p, dp) in v.iter().zip(&d) {
            let h = entropy(p, &s, E).unwrap();
            prop_assert!((entropy(dp, &u, E).unwrap() - h).abs() < 1e-12);
        }
        let cr = plan.apply(&common_refinement(&v[0], &v[1]).unwrap()).unwrap();
        prop_assert_eq!(cr, common_refinement(&d[0], &d[1]).unwrap());
        let fcc = plan.apply(&finest_common_coarsening(&v[0], &v[1]).unwrap()).unwrap();
        prop_assert_eq!(fcc, finest_common_coarsening(&d[0], &d[1]).unwrap());
    }

    #[test]
    fn log_index_is_within_the_stirling_certificate(
        (v, s, k) in (1usize..=5).prop_flat_map(|n| (partitions(n, 2), space_of(n), 1usize..=4))
    ) {
        let (plan, d) = dilate(&s, &v, k).unwrap();
        let u = ProbabilitySpace::uniform(plan.dilated_size).unwrap();
        for dp in d.iter().chain([&common_refinement(&d[0], &d[1]).unwrap()]) {
            let gap = (entropy(dp, &u, E).unwrap() - log_index_of_partition(dp)).abs();
            prop_assert!(gap <= stirling_error_bound(dp), "{gap} > {}", stirling_error_bound(dp));
        }
    }

    #[test]
    fn log_index_is_antitone(v in (1usize..=40).prop_flat_map(|n| partitions(n, 2))) {
        let fine = common_refinement(&v[0], &v[1]).unwrap();
        let coarse = finest_common_coarsening(&v[0], &v[1]).unwrap();
        for p in &v {
            prop_assert!(log_index_of_partition(&fine) >= log_index_of_partition(p) - 1e-12);
            prop_assert!(log_index_of_partition(p) >= log_index_of_partition(&coarse) - 1e-12);
        }
    }

    #[test]
    fn scan_error_stays_below_a_shrinking_bound(
        (v, s) in (2usize..=4).prop_flat_map(|n| (partitions(n, 2), space_of(n)))
    ) {
        let elems: Vec<InfoElement> = v
            .iter()
            .map(|p| InfoElement::new(p.clone(), Arc::clone(&s)).unwrap())
            .collect();
        let rows = convergence_scan(&elems, &[1, 4, 16]).unwrap();
        let last = rows.last().unwrap();
        prop_assert!(last.max_error <= last.bound);
        for w in rows.windows(2) {
            prop_assert!(w[1].bound < w[0].bound);
        }
    }
}
