use origami::corpus::{grow, halt2};
use origami::reduction::{
    build_tdown, build_tiles, build_tup, check_domino_lemma, domino_sweep, history, DominoCheck,
    HistoryStatus, TileKind,
};
use origami::transducer::{run_origin_graphs, PartnerSearch, RunCaps};

#[test]
fn tiles_follow_the_transitions() {
    let m = halt2();
    let tiles = build_tiles(&m);
    let g = tiles.gamma();
    let render = |w: &[usize]| w.iter().map(|&s| g.name(s)).collect::<Vec<_>>().join(" ");
    let mut copies = 0;
    for t in tiles.tiles() {
        match t.kind {
            TileKind::Copy => {
                copies += 1;
                assert_eq!(t.top, t.bottom);
            }
            TileKind::RightExpansion => assert!(render(&t.bottom).ends_with("B #")),
            TileKind::LeftExpansion => assert!(render(&t.top).starts_with('#')),
            TileKind::Right | TileKind::Left => assert_eq!(t.top.len(), t.bottom.len()),
        }
    }
    // One copy tile per tape letter and the separator.
    assert_eq!(copies, m.tape_alphabet().len() + 1);
}

#[test]
fn grow_satisfies_the_domino_property() {
    let tiles = build_tiles(&grow());
    let s = domino_sweep(&tiles, 8).unwrap();
    assert!(s.violation.is_none());
    assert!(s.non_vacuous > 0);
}

#[test]
fn halt2_domino_property_breaks_at_six_tiles() {
    let tiles = build_tiles(&halt2());
    assert!(domino_sweep(&tiles, 5).unwrap().violation.is_none());
    let l = domino_sweep(&tiles, 6)
        .unwrap()
        .violation
        .expect("left moves admit a dead-end copy");
    assert_eq!(l.len(), 6);
    assert!(matches!(
        check_domino_lemma(&tiles, &l).unwrap(),
        DominoCheck::Violated { .. }
    ));
}

#[test]
fn transducers_output_the_tile_words() {
    let tiles = build_tiles(&halt2());
    let (up, down) = (build_tup(&tiles).unwrap(), build_tdown(&tiles).unwrap());
    let caps = RunCaps::new(30, 120).unwrap();
    for n in 1..=3 {
        for l in tiles.sigma().words_of_len(n) {
            let d = run_origin_graphs(&down, &l, caps).unwrap().graphs;
            assert_eq!(d.len(), 1);
            assert_eq!(d[0].output, tiles.bottom_word(&l));
            let u = tiles.top_word(&l);
            // T_up has unboundedly many graphs; ask the partner search instead.
            assert!(PartnerSearch::new(&up, &l, &u).exists());
        }
    }
}

#[test]
fn histories() {
    let h = history(&halt2(), 50, 50).unwrap();
    assert_eq!(h.status, HistoryStatus::Halted);
    let g = history(&grow(), 6, 50).unwrap();
    assert_eq!(g.status, HistoryStatus::StillRunning);
    assert!(g.word.len() > h.word.len());
}
