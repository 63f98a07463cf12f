//! Boundedness: how many sources may a single target receive?
//!
//! Forgetting the `x` track of the deterministic `γ` gives an automaton over
//! `(u, Ī, y)` whose accepting runs are in bijection with the sources `x`
//! accepted for that target. The resynchronizer is bounded exactly when this
//! automaton is finitely ambiguous.

use rustc_hash::FxHashMap as HashMap;

use serde::Serialize;

use super::solve::live_states;
use super::Resynchronizer;
use crate::alphabet::Symbol;
use crate::automata::{ambiguity_class, Ambiguity, AmbiguityWitness, Letter, StructuredNfa};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Boundedness {
    /// The source-guessing automaton is finitely ambiguous.
    Bounded { states: usize },
    /// Pumping `witness` yields targets with ever more sources.
    Unbounded {
        class: Ambiguity,
        witness: Option<AmbiguityWitness>,
    },
}

impl Boundedness {
    pub fn is_bounded(&self) -> bool {
        matches!(self, Boundedness::Bounded { .. })
    }
}

/// The automaton over `Σ × B^(m+1)` (tracks `Ī, y`) guessing the source.
pub fn source_guessing_nfa(r: &Resynchronizer) -> StructuredNfa {
    r.gamma()
        .to_nfa()
        .project_track(super::X)
        .expect("γ has an x track")
        .trim()
}

pub fn is_bounded(r: &Resynchronizer) -> Boundedness {
    let n = source_guessing_nfa(r);
    let report = ambiguity_class(&n);
    if report.class.is_finite() {
        Boundedness::Bounded {
            states: n.num_states(),
        }
    } else {
        Boundedness::Unbounded {
            class: report.class,
            witness: report.witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum BoundCheck {
    HoldsOnSweep {
        max_len: usize,
    },
    /// `k + 1` distinct sources for the target `y`.
    Violated {
        input: Vec<Symbol>,
        params: Vec<Vec<bool>>,
        y: usize,
        sources: Vec<usize>,
    },
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        matches!(self, BoundCheck::HoldsOnSweep { .. })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    /// States of the copies that already placed their source, in order.
    placed: Vec<u32>,
    /// Common state of the copies still waiting.
    waiting: u32,
}

/// Searches all words up to `max_len` for `k + 1` distinct sources sharing
/// the input, parameters and target. The copies place their sources in
/// increasing order, so each set of sources is explored once.
pub fn bounded_by(r: &Resynchronizer, k: usize, max_len: usize) -> Result<BoundCheck> {
    let g = r.gamma();
    let sa = g.alphabet();
    let m = r.m();
    let live = live_states(g);
    let copies = k + 1;
    let xbit: Letter = 1 << m;
    let start = Node {
        placed: Vec::new(),
        waiting: g.initial() as u32,
    };
    // node -> (parent, letter without x, placed here)
    let mut seen: HashMap<Node, (usize, Letter, bool)> = HashMap::default();
    let mut nodes = vec![start.clone()];
    seen.insert(start, (usize::MAX, 0, false));
    let mut layer = vec![0usize];
    let mut letters = Vec::new();
    for a in 0..sa.base().len() {
        for col in 0..1u32 << m {
            for ybit in [0, 1u32] {
                letters.push(sa.letter(a, col | ybit << (m + 1)));
            }
        }
    }
    for _depth in 0..max_len {
        let mut next_layer = Vec::new();
        for &id in &layer {
            let node = nodes[id].clone();
            for &l in &letters {
                let placed: Option<Vec<u32>> = node
                    .placed
                    .iter()
                    .map(|&s| {
                        let t = g.next(s as usize, l);
                        live[t].then_some(t as u32)
                    })
                    .collect();
                let Some(placed) = placed else { continue };
                let waiting = g.next(node.waiting as usize, l);
                let mut options = Vec::new();
                if node.placed.len() < copies && live[waiting] {
                    options.push((placed.clone(), waiting as u32, false));
                } else if node.placed.len() == copies {
                    options.push((placed.clone(), node.waiting, false));
                }
                if node.placed.len() < copies {
                    let t = g.next(node.waiting as usize, l | xbit);
                    let last = node.placed.len() + 1 == copies;
                    // Once every copy has placed its source the waiting state is irrelevant.
                    let w2 = if last { 0 } else { waiting };
                    if live[t] && (last || live[w2]) {
                        let mut p2 = placed.clone();
                        p2.push(t as u32);
                        options.push((p2, w2 as u32, true));
                    }
                }
                for (placed, waiting, here) in options {
                    let child = Node { placed, waiting };
                    if seen.contains_key(&child) {
                        continue;
                    }
                    seen.insert(child.clone(), (id, l, here));
                    nodes.push(child.clone());
                    let cid = nodes.len() - 1;
                    if child.placed.len() == copies
                        && child.placed.iter().all(|&s| g.is_final(s as usize))
                    {
                        return Ok(reconstruct(r, &nodes, &seen, cid));
                    }
                    next_layer.push(cid);
                }
            }
        }
        layer = next_layer;
    }
    Ok(BoundCheck::HoldsOnSweep { max_len })
}

fn reconstruct(
    r: &Resynchronizer,
    nodes: &[Node],
    seen: &HashMap<Node, (usize, Letter, bool)>,
    mut id: usize,
) -> BoundCheck {
    let sa = r.gamma().alphabet();
    let m = r.m();
    let mut steps = Vec::new();
    loop {
        let (parent, l, here) = seen[&nodes[id]];
        if parent == usize::MAX {
            break;
        }
        steps.push((l, here));
        id = parent;
    }
    steps.reverse();
    let n = steps.len();
    let mut input = Vec::new();
    let mut params = vec![vec![false; n]; m];
    let mut y = 0;
    let mut sources = Vec::new();
    for (p, &(l, here)) in steps.iter().enumerate() {
        input.push(sa.base_of(l));
        for (j, col) in params.iter_mut().enumerate() {
            col[p] = sa.bit(l, j);
        }
        if sa.bit(l, m + 1) {
            y = p + 1;
        }
        if here {
            sources.push(p + 1);
        }
    }
    BoundCheck::Violated {
        input,
        params,
        y,
        sources,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::resync::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"])
    }

    #[test]
    fn classic_examples() {
        assert!(!is_bounded(&make_universal(&ab())).is_bounded());
        assert!(is_bounded(&make_pm1(&ab())).is_bounded());
        assert!(is_bounded(&make_identity(&ab())).is_bounded());
        assert!(is_bounded(&make_shift(&ab(), 3)).is_bounded());
        assert!(is_bounded(&make_first(&ab())).is_bounded());
    }

    #[test]
    fn pm1_sweeps() {
        let r = make_pm1(&ab());
        assert!(bounded_by(&r, 2, 6).unwrap().holds());
        match bounded_by(&r, 1, 6).unwrap() {
            BoundCheck::Violated {
                input,
                y,
                sources,
                params,
            } => {
                assert!(input.len() >= 3);
                assert_eq!(sources, vec![y - 1, y + 1]);
                for &x in &sources {
                    assert!(r.holds(&input, &params, x, y));
                }
            }
            other => panic!("{other:?}"),
        }
        assert!(bounded_by(&make_identity(&ab()), 1, 6).unwrap().holds());
    }

    #[test]
    fn shift3_bound_is_4() {
        let r = make_shift(&ab(), 3);
        assert!(bounded_by(&r, 4, 6).unwrap().holds());
        assert!(!bounded_by(&r, 3, 6).unwrap().holds());
    }
}
