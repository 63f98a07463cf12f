mod common;

use std::sync::OnceLock;

use origami::resync::{make_rk, pair_in_resync, verify_witness, ResyncWitness, Resynchronizer};
use origami::transducer::OriginGraph;
use origami::traversal::{greedy_label, greedy_label_recompute, traversal_report, traverses};
use origami::Alphabet;
use proptest::prelude::*;

fn rk(k: usize) -> &'static Resynchronizer {
    static CACHE: OnceLock<Vec<Resynchronizer>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        let base = Alphabet::new(["a", "b"]);
        (0..=3).map(|k| make_rk(&base, k)).collect()
    })[k]
}

fn pair(max_in: usize, max_out: usize) -> impl Strategy<Value = (OriginGraph, OriginGraph)> {
    (1..=max_in, 0..=max_out).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(0..2usize, n),
            prop::collection::vec(0..2usize, m),
            prop::collection::vec(1..=n, m),
            prop::collection::vec(1..=n, m),
        )
            .prop_map(|(u, v, o1, o2)| {
                (
                    OriginGraph::new(u.clone(), v.clone(), o1).unwrap(),
                    OriginGraph::new(u, v, o2).unwrap(),
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn report_matches_definition((old, new) in pair(8, 8)) {
        let r = traversal_report(&old, &new).unwrap();
        prop_assert_eq!(r.max_count, common::naive_max_traversal(&old, &new));
        for x in 1..=old.input.len() {
            for z in 1..=old.input.len() {
                let listed = r.left_to_right[z - 1].contains(&x) || r.right_to_left[z - 1].contains(&x);
                prop_assert_eq!(listed, traverses(&old, &new, x, z).unwrap());
            }
        }
    }

    #[test]
    fn greedy_witness_is_accepted((old, new) in pair(8, 8)) {
        let kappa = traversal_report(&old, &new).unwrap().max_count;
        prop_assume!(kappa <= 3);
        let labels = greedy_label(&old, &new, kappa).unwrap();
        prop_assert!(labels.is_exclusive());
        prop_assert_eq!(&labels, &greedy_label_recompute(&old, &new, kappa).unwrap());
        let w = ResyncWitness { params: labels.to_params(old.input.len()), out_params: Vec::new() };
        prop_assert!(verify_witness(rk(kappa), &old, &new, &w).unwrap());
        if kappa > 0 {
            prop_assert!(greedy_label(&old, &new, kappa - 1).is_err());
        }
    }

    #[test]
    fn rk_membership_is_k_traversal((old, new) in pair(6, 5)) {
        let kappa = traversal_report(&old, &new).unwrap().max_count;
        for k in 0..=3 {
            let inside = pair_in_resync(rk(k), &old, &new).unwrap().is_some();
            prop_assert_eq!(inside, kappa <= k, "k = {}, κ = {}", k, kappa);
        }
    }

    #[test]
    fn mirroring_preserves_traversal((old, new) in pair(8, 8)) {
        prop_assert_eq!(
            traversal_report(&old, &new).unwrap().max_count,
            traversal_report(&old.mirror(), &new.mirror()).unwrap().max_count
        );
    }
}
