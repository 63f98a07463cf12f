mod common;

use origami::corpus::halt2;
use origami::rational::{
    contains_upto_rational, deinterleave, interleave, make_rational_block, make_rational_identity,
    make_rational_shift, rational_pair_accepts, InterleavedWord,
};
use origami::reduction::{build_tdown, build_tiles, build_tup};
use origami::resync::{make_block, make_shift, pair_in_resync};
use origami::transducer::{OriginGraph, RunCaps};
use origami::Alphabet;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ab_cd() -> (Alphabet, Alphabet) {
    (Alphabet::new(["a", "b"]), Alphabet::new(["c", "d"]))
}

#[test]
fn round_trip_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..200 {
        let g = common::random_monotone(&mut rng, 2, 2, 8, 10);
        let w = interleave(&g).unwrap();
        assert_eq!(deinterleave(&w).unwrap(), g);
        assert_eq!(w.len(), g.input.len() + g.output.len());
    }
}

#[test]
fn canonical_pair_renders_as_interleaved() {
    let (s, g) = ab_cd();
    let (src, tgt) = common::canonical_block_pair();
    assert_eq!(interleave(&src).unwrap().render(&s, &g), "acaabdacabd");
    assert_eq!(interleave(&tgt).unwrap().render(&s, &g), "aaacbdaacbd");
    let r = make_rational_block().unwrap();
    assert!(rational_pair_accepts(&r, &src, &tgt).unwrap());
}

#[test]
fn block_mutations_are_rejected_like_the_oracle() {
    let r = make_rational_block().unwrap();
    let regular = make_block(&Alphabet::new(["a", "b"])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for (s, t) in common::block_mutations(&mut rng, 20) {
        let oracle =
            common::is_block_pair(&s, &t) && pair_in_resync(&regular, &s, &t).unwrap().is_some();
        let got = rational_pair_accepts(&r, &s, &t).unwrap();
        assert_eq!(got, oracle, "{s:?} {t:?}");
        assert!(!got);
    }
}

#[test]
fn block_shapes_accepted_on_all_short_inputs() {
    let r = make_rational_block().unwrap();
    let regular = make_block(&Alphabet::new(["a", "b"])).unwrap();
    for n in 1..=7 {
        for u in Alphabet::new(["a", "b"]).words_of_len(n) {
            let (Some(s), Some(t)) = (
                common::block_graph(&u, false),
                common::block_graph(&u, true),
            ) else {
                continue;
            };
            assert!(rational_pair_accepts(&r, &s, &t).unwrap());
            assert!(pair_in_resync(&regular, &s, &t).unwrap().is_some());
            // The reverse move is not a block resynchronization unless nothing moves.
            assert_eq!(rational_pair_accepts(&r, &t, &s).unwrap(), s == t);
        }
    }
}

/// A target obtained by moving origins left by at most `k`, kept monotone.
fn shifted(rng: &mut impl Rng, g: &OriginGraph, k: usize) -> OriginGraph {
    let mut orig: Vec<usize> = g
        .orig
        .iter()
        .map(|&x| x - rng.gen_range(0..=k.min(x - 1)))
        .collect();
    orig.sort_unstable();
    OriginGraph::new(g.input.clone(), g.output.clone(), orig).unwrap()
}

#[test]
fn rational_shift_implies_regular_shift() {
    let (s, g) = ab_cd();
    let rat = make_rational_shift(&s, &g, 2).unwrap();
    let reg = make_shift(&s, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut accepted = 0;
    for _ in 0..200 {
        let src = common::random_monotone(&mut rng, 2, 2, 6, 6);
        let tgt = shifted(&mut rng, &src, 3);
        if rational_pair_accepts(&rat, &src, &tgt).unwrap() {
            accepted += 1;
            assert!(pair_in_resync(&reg, &src, &tgt).unwrap().is_some());
            for (x, y) in src.orig.iter().zip(&tgt.orig) {
                assert!(y <= x && x - y <= 2);
            }
        }
    }
    assert!(accepted > 20, "only {accepted} accepted pairs");
}

#[test]
fn halt2_reduction_with_rational_shift() {
    let tiles = build_tiles(&halt2());
    let (down, up) = (build_tdown(&tiles).unwrap(), build_tup(&tiles).unwrap());
    let caps = RunCaps::new(40, 200).unwrap();
    let shift = make_rational_shift(tiles.sigma(), tiles.gamma(), 5).unwrap();
    assert!(contains_upto_rational(&down, &up, &shift, 3, caps)
        .unwrap()
        .holds());
    let id = make_rational_identity(tiles.sigma(), tiles.gamma()).unwrap();
    let v = contains_upto_rational(&down, &up, &id, 3, caps).unwrap();
    assert!(!v.holds());
    assert!(v.counterexample.is_some());
}

proptest! {
    #[test]
    fn deinterleave_then_interleave(items in prop::collection::vec((any::<bool>(), 0..2usize), 0..14), first in 0..2usize) {
        let (s, g) = ab_cd();
        let mut text = s.name(first).to_string();
        for (is_in, x) in items {
            text += if is_in { s.name(x) } else { g.name(x) };
        }
        let w = InterleavedWord::parse(&text, &s, &g).unwrap();
        let graph = deinterleave(&w).unwrap();
        prop_assert_eq!(interleave(&graph).unwrap(), w);
    }

    #[test]
    fn identity_accepts_exactly_equal(seed in any::<u64>()) {
        let (s, g) = ab_cd();
        let id = make_rational_identity(&s, &g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let src = common::random_monotone(&mut rng, 2, 2, 5, 5);
        let tgt = shifted(&mut rng, &src, 1);
        prop_assert_eq!(rational_pair_accepts(&id, &src, &tgt).unwrap(), src == tgt);
    }
}
