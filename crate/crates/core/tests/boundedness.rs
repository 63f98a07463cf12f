#![allow(clippy::needless_range_loop)]

mod common;

use origami::resync::{bounded_by, is_bounded, BoundCheck, Resynchronizer};
use origami::Alphabet;

/// Largest number of sources of one target over all words up to
/// `max_len` and all parameter values, by enumeration.
fn max_sources(r: &Resynchronizer, max_len: usize) -> usize {
    let base = Alphabet::new(["a", "b"]);
    let m = r.m();
    let mut best = 0;
    for n in 1..=max_len {
        for u in base.words_of_len(n) {
            for mask in 0u32..1 << (m * n) {
                let params: Vec<Vec<bool>> = (0..m)
                    .map(|j| (0..n).map(|p| mask >> (j * n + p) & 1 == 1).collect())
                    .collect();
                let table = r.table(&u, &params);
                for y in 1..=n {
                    best = best.max((1..=n).filter(|&x| table[x][y]).count());
                }
            }
        }
    }
    best
}

#[test]
fn decision_matches_sweeps() {
    for (name, r, bound) in common::bound_table() {
        let verdict = is_bounded(&r);
        assert_eq!(verdict.is_bounded(), bound.is_some(), "{name}");
        match bound {
            Some(k) => {
                assert!(bounded_by(&r, k, 6).unwrap().holds(), "{name}");
                assert!(!bounded_by(&r, k - 1, 6).unwrap().holds(), "{name}");
            }
            None => assert!(!bounded_by(&r, 3, 6).unwrap().holds(), "{name}"),
        }
    }
}

#[test]
fn sweep_counts_match_enumeration() {
    for (name, r, bound) in common::bound_table() {
        if r.m() > 1 {
            continue;
        }
        let seen = max_sources(&r, 5);
        match bound {
            Some(k) => assert_eq!(seen, k, "{name}"),
            None => assert_eq!(seen, 5, "{name}"),
        }
    }
}

#[test]
fn violations_are_genuine() {
    for (name, r, bound) in common::bound_table() {
        let k = bound.map_or(3, |k| k - 1);
        if let BoundCheck::Violated {
            input,
            params,
            y,
            sources,
        } = bounded_by(&r, k, 6).unwrap()
        {
            assert_eq!(sources.len(), k + 1, "{name}");
            for x in sources {
                assert!(r.holds(&input, &params, x, y), "{name}");
            }
        } else {
            panic!("{name}: expected a violation");
        }
    }
}
