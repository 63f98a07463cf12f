use std::collections::BTreeSet;

use rustc_hash::FxHashMap as HashMap;
use serde::{Deserialize, Serialize};

use super::{Input, Kind, OriginGraph, Transducer};
use crate::alphabet::Symbol;
use crate::error::{Error, Result};

/// Bounds making run enumeration finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunCaps {
    pub max_output_len: usize,
    /// Transitions taken, ε-steps and head moves included.
    pub max_steps: usize,
}

impl RunCaps {
    pub fn new(max_output_len: usize, max_steps: usize) -> Result<Self> {
        if max_output_len == 0 || max_steps == 0 {
            return Err(Error::CapsInsufficient("caps must be positive".into()));
        }
        Ok(RunCaps {
            max_output_len,
            max_steps,
        })
    }
}

/// Origin graphs of the accepting runs within the caps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphSet {
    /// Sorted, without duplicates.
    pub graphs: Vec<OriginGraph>,
    /// Some run was cut by the caps, so the set may be incomplete.
    pub pruned: bool,
}

type Key = (usize, usize, Vec<Symbol>, Vec<usize>);

/// Enumerates the origin graphs of `t` on `u`.
pub fn run_origin_graphs(t: &Transducer, u: &[Symbol], caps: RunCaps) -> Result<GraphSet> {
    if u.is_empty() {
        return Err(Error::EmptyInput);
    }
    if u.iter().any(|&a| a >= t.input_alphabet().len()) {
        return Err(Error::UnknownSymbol(format!("{u:?}")));
    }
    let n = u.len();
    let one_way = t.kind() == Kind::OneWay;
    let start = if one_way { 0 } else { 1 };
    let mut best: HashMap<Key, usize> = HashMap::default();
    let mut found = BTreeSet::new();
    let mut pruned = false;
    let mut stack: Vec<(Key, usize)> = t
        .initial()
        .iter()
        .map(|&q| ((q, start, Vec::new(), Vec::new()), 0))
        .collect();
    while let Some((key, steps)) = stack.pop() {
        match best.get(&key) {
            Some(&s) if s <= steps => continue,
            _ => {
                best.insert(key.clone(), steps);
            }
        }
        let (q, pos, out, orig) = key;
        let accepting = t.is_final(q) && (!one_way || pos == n);
        if accepting {
            found.insert(OriginGraph {
                input: u.to_vec(),
                output: out.clone(),
                orig: orig.clone(),
            });
        }
        for tr in t.transitions_from(q) {
            let (next, origin) = if one_way {
                match tr.input {
                    Input::Eps => (pos, (pos + 1).min(n)),
                    Input::Letter(a) if pos < n && u[pos] == a => (pos + 1, pos + 1),
                    _ => continue,
                }
            } else {
                let here = match pos {
                    0 => Input::Begin,
                    p if p == n + 1 => Input::End,
                    p => Input::Letter(u[p - 1]),
                };
                if tr.input != here {
                    continue;
                }
                let next = match tr.dir {
                    Some(super::Move::Left) if pos > 0 => pos - 1,
                    Some(super::Move::Right) if pos <= n => pos + 1,
                    _ => continue,
                };
                (next, pos)
            };
            if steps + 1 > caps.max_steps || out.len() + tr.output.len() > caps.max_output_len {
                pruned = true;
                continue;
            }
            let mut o = out.clone();
            o.extend_from_slice(&tr.output);
            let mut g = orig.clone();
            g.extend(std::iter::repeat_n(origin, tr.output.len()));
            stack.push(((tr.to, next, o, g), steps + 1));
        }
    }
    Ok(GraphSet {
        graphs: found.into_iter().collect(),
        pruned,
    })
}

pub type WordPairs = BTreeSet<(Vec<Symbol>, Vec<Symbol>)>;

/// Input/output pairs of all graphs on non-empty inputs up to `max_input_len`.
pub fn classical_pairs(
    t: &Transducer,
    max_input_len: usize,
    caps: RunCaps,
) -> Result<(WordPairs, bool)> {
    let mut pairs = BTreeSet::new();
    let mut pruned = false;
    for len in 1..=max_input_len {
        for u in t.input_alphabet().words_of_len(len) {
            let gs = run_origin_graphs(t, &u, caps)?;
            pruned |= gs.pruned;
            pairs.extend(gs.graphs.into_iter().map(|g| (g.input, g.output)));
        }
    }
    Ok((pairs, pruned))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Equivalence {
    Equal {
        pruned: bool,
    },
    /// `graph` is produced by the transducer on `side` only.
    Counterexample {
        graph: OriginGraph,
        side: Side,
    },
}

/// Compares capped origin semantics input by input (by length, then
/// lexicographically); the counterexample has minimal input length.
pub fn origin_equivalent_upto(
    t1: &Transducer,
    t2: &Transducer,
    max_input_len: usize,
    caps: RunCaps,
) -> Result<Equivalence> {
    t1.check_alphabets(t2)?;
    let mut pruned = false;
    for len in 1..=max_input_len {
        for u in t1.input_alphabet().words_of_len(len) {
            let a = run_origin_graphs(t1, &u, caps)?;
            let b = run_origin_graphs(t2, &u, caps)?;
            pruned |= a.pruned || b.pruned;
            let only_a = a.graphs.iter().find(|g| b.graphs.binary_search(g).is_err());
            let only_b = b.graphs.iter().find(|g| a.graphs.binary_search(g).is_err());
            let pick = match (only_a, only_b) {
                (Some(x), Some(y)) if y < x => Some((y, Side::Right)),
                (Some(x), _) => Some((x, Side::Left)),
                (None, Some(y)) => Some((y, Side::Right)),
                (None, None) => None,
            };
            if let Some((g, side)) = pick {
                return Ok(Equivalence::Counterexample {
                    graph: g.clone(),
                    side,
                });
            }
        }
    }
    Ok(Equivalence::Equal { pruned })
}
