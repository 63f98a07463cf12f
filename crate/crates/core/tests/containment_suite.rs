mod common;

use origami::containment::{
    contains_upto, contains_upto_with_evidence, resync_search, traversal_profile, SearchOutcome,
};
use origami::corpus::{t_fast, t_first, t_id, t_last, t_one_two, t_rev, t_slow, t_two_one};
use origami::resync::{
    compose, make_1st_to_last, make_first, make_identity, make_rk, pair_in_resync, verify_witness,
};
use origami::transducer::{run_origin_graphs, RunCaps, Transducer};
use origami::traversal::traversal_report;

fn caps() -> RunCaps {
    RunCaps::new(10, 50).unwrap()
}

fn pairs() -> Vec<(&'static str, Transducer, Transducer)> {
    vec![
        ("slow/fast", t_slow(), t_fast()),
        ("fast/slow", t_fast(), t_slow()),
        ("id/rev", t_id(), t_rev()),
        ("rev/id", t_rev(), t_id()),
        ("one-two/two-one", t_one_two(), t_two_one()),
        ("two-one/one-two", t_two_one(), t_one_two()),
        ("id/id", t_id(), t_id()),
    ]
}

#[test]
fn evidence_is_revalidated() {
    for (name, t1, t2) in pairs() {
        let r = make_rk(t1.input_alphabet(), 2);
        let (v, evidence) = contains_upto_with_evidence(&t1, &t2, &r, 4, caps()).unwrap();
        for e in &evidence {
            assert!(
                verify_witness(&r, &e.source, &e.target, &e.witness).unwrap(),
                "{name}"
            );
            assert!(
                pair_in_resync(&r, &e.source, &e.target).unwrap().is_some(),
                "{name}"
            );
        }
        if let Some(c) = v.counterexample {
            // No graph of T2 on the same words is related to the target.
            let all =
                run_origin_graphs(&t2, &c.target.input, RunCaps::new(12, 80).unwrap()).unwrap();
            let partners: Vec<_> = all
                .graphs
                .iter()
                .filter(|g| g.output == c.target.output)
                .collect();
            assert_eq!(partners.len(), c.num_partners, "{name}");
            for p in partners {
                assert!(
                    pair_in_resync(&r, p, &c.target).unwrap().is_none(),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn search_agrees_with_profile() {
    for (name, t1, t2) in pairs() {
        let profile = traversal_profile(&t1, &t2, 4, caps()).unwrap();
        for k in 0..=3 {
            let holds = contains_upto(&t1, &t2, &make_rk(t1.input_alphabet(), k), 4, caps())
                .unwrap()
                .holds();
            let bounded = profile.max().is_some_and(|m| m <= k);
            assert_eq!(holds, bounded, "{name}, k = {k}");
        }
        match resync_search(&t1, &t2, 3, 4, caps()).unwrap() {
            SearchOutcome::Found { k, .. } => assert_eq!(Some(k), profile.max(), "{name}"),
            SearchOutcome::NotFound { .. } => {
                assert!(profile.max().is_none_or(|m| m > 3), "{name}")
            }
        }
    }
}

#[test]
fn profile_values_match_brute_force() {
    // Both sides have few graphs per input here, so the min-max can be
    // recomputed from the full graph sets.
    for (name, t1, t2) in pairs() {
        let profile = traversal_profile(&t1, &t2, 4, caps()).unwrap();
        for n in 1..=4 {
            let u = vec![0; n];
            let targets = run_origin_graphs(&t1, &u, caps()).unwrap().graphs;
            let sources = run_origin_graphs(&t2, &u, RunCaps::new(12, 80).unwrap())
                .unwrap()
                .graphs;
            let mut worst = Some(0);
            for tgt in &targets {
                let best = sources
                    .iter()
                    .filter(|s| s.output == tgt.output)
                    .map(|s| common::naive_max_traversal(s, tgt))
                    .min();
                worst = match (worst, best) {
                    (Some(w), Some(b)) => Some(w.max(b)),
                    _ => None,
                };
            }
            assert_eq!(profile.value(n), worst, "{name}, n = {n}");
        }
    }
}

#[test]
fn reflexive_for_every_corpus_transducer() {
    for (name, t) in origami::corpus::transducers() {
        let id = make_identity(t.input_alphabet());
        assert!(
            contains_upto(&t, &t, &id, 3, RunCaps::new(6, 30).unwrap())
                .unwrap()
                .holds(),
            "{name}"
        );
    }
}

#[test]
fn transitivity_chains() {
    let (slow, fast) = (t_slow(), t_fast());
    let base = slow.input_alphabet();
    let (first, id) = (make_first(base), make_identity(base));
    assert!(contains_upto(&slow, &fast, &first, 4, caps())
        .unwrap()
        .holds());
    assert!(contains_upto(&fast, &fast, &id, 4, caps()).unwrap().holds());
    assert!(contains_upto(&slow, &slow, &id, 4, caps()).unwrap().holds());
    // (σ2, σ1) ∈ r1 and (σ3, σ2) ∈ r2 give (σ3, σ1) ∈ compose(r1, r2).
    for r in [compose(&first, &id).unwrap(), compose(&id, &first).unwrap()] {
        assert!(contains_upto(&slow, &fast, &r, 4, caps()).unwrap().holds());
    }

    let (first_t, last_t) = (t_first(), t_last());
    let small = RunCaps::new(4, 20).unwrap();
    let r = make_1st_to_last(first_t.input_alphabet());
    let id = make_identity(first_t.input_alphabet());
    assert!(contains_upto(&last_t, &first_t, &r, 3, small)
        .unwrap()
        .holds());
    assert!(
        contains_upto(&last_t, &first_t, &compose(&r, &id).unwrap(), 3, small)
            .unwrap()
            .holds()
    );
}

#[test]
fn id_rev_profile_is_half_length() {
    let p = traversal_profile(&t_id(), &t_rev(), 14, RunCaps::new(20, 80).unwrap()).unwrap();
    for n in 1..=14 {
        assert_eq!(p.value(n), Some(n / 2));
        let u = vec![0; n];
        let a = run_origin_graphs(&t_id(), &u, RunCaps::new(20, 80).unwrap())
            .unwrap()
            .graphs;
        let b = run_origin_graphs(&t_rev(), &u, RunCaps::new(20, 80).unwrap())
            .unwrap()
            .graphs;
        assert_eq!((a.len(), b.len()), (1, 1));
        assert_eq!(traversal_report(&b[0], &a[0]).unwrap().max_count, n / 2);
    }
}
