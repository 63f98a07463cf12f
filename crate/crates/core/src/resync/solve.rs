//! Search for a parameter valuation satisfying a family of constraints.
//!
//! Each constraint is an automaton over `Σ × B^m` (possibly with two more
//! tracks carrying fixed positions). The parameter columns are chosen
//! position by position; the search keeps one automaton state per
//! constraint, prunes states that cannot reach acceptance and memoizes the
//! tuples known to fail.

use rustc_hash::FxHashSet as HashSet;

use crate::alphabet::Symbol;
use crate::automata::{Dfa, Letter};

pub(crate) struct Constraint<'a> {
    pub dfa: &'a Dfa,
    /// Position (1-based) marked on track `m`, if the automaton has it.
    pub x: Option<usize>,
    /// Position marked on track `m + 1`.
    pub y: Option<usize>,
}

/// States of `d` from which some final state is reachable.
pub(crate) fn live_states(d: &Dfa) -> Vec<bool> {
    let ns = d.num_states();
    let nl = d.alphabet().num_letters() as Letter;
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); ns];
    for s in 0..ns {
        for l in 0..nl {
            rev[d.next(s, l)].push(s);
        }
    }
    let mut live = vec![false; ns];
    let mut stack: Vec<usize> = (0..ns).filter(|&s| d.is_final(s)).collect();
    for &s in &stack {
        live[s] = true;
    }
    while let Some(s) = stack.pop() {
        for &p in &rev[s] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    live
}

struct Search<'a> {
    n: usize,
    columns: u32,
    dfas: Vec<&'a Dfa>,
    live: Vec<Vec<bool>>,
    /// `base[c][p]`: letter of constraint `c` at position `p` with an empty
    /// parameter column; the column is added to it.
    base: Vec<Vec<Letter>>,
    failed: HashSet<(usize, Vec<u32>)>,
    path: Vec<u32>,
}

impl Search<'_> {
    fn dfs(&mut self, p: usize, tuple: &[u32]) -> bool {
        if p == self.n {
            return tuple
                .iter()
                .zip(&self.dfas)
                .all(|(&s, d)| d.is_final(s as usize));
        }
        let mut next = vec![0u32; tuple.len()];
        'cols: for col in 0..self.columns {
            for (c, &s) in tuple.iter().enumerate() {
                let t = self.dfas[c].next(s as usize, self.base[c][p] + col);
                if !self.live[c][t] {
                    continue 'cols;
                }
                next[c] = t as u32;
            }
            if self.failed.contains(&(p + 1, next.clone())) {
                continue;
            }
            self.path.push(col);
            if self.dfs(p + 1, &next) {
                return true;
            }
            self.path.pop();
            self.failed.insert((p + 1, next.clone()));
        }
        false
    }
}

/// The lexicographically least sequence of parameter columns (bit `j` of a
/// column is parameter `j`) satisfying every constraint, if any.
pub(crate) fn solve(u: &[Symbol], m: usize, cons: &[Constraint]) -> Option<Vec<u32>> {
    let mut dfas = Vec::new();
    let mut base = Vec::new();
    for c in cons {
        let sa = c.dfa.alphabet();
        dfas.push(c.dfa);
        base.push(
            (0..u.len())
                .map(|p| {
                    let mut extra = 0;
                    if c.x == Some(p + 1) {
                        extra |= 1 << m;
                    }
                    if c.y == Some(p + 1) {
                        extra |= 1 << (m + 1);
                    }
                    sa.letter(u[p], extra)
                })
                .collect(),
        );
    }
    let mut live_cache: Vec<(*const Dfa, Vec<bool>)> = Vec::new();
    let mut live = Vec::new();
    for d in &dfas {
        let key = *d as *const Dfa;
        let l = match live_cache.iter().find(|(k, _)| *k == key) {
            Some((_, l)) => l.clone(),
            None => {
                let l = live_states(d);
                live_cache.push((key, l.clone()));
                l
            }
        };
        live.push(l);
    }
    let start: Vec<u32> = dfas.iter().map(|d| d.initial() as u32).collect();
    if start.iter().zip(&live).any(|(&s, l)| !l[s as usize]) {
        return None;
    }
    let mut search = Search {
        n: u.len(),
        columns: 1 << m,
        dfas,
        live,
        base,
        failed: HashSet::default(),
        path: Vec::new(),
    };
    search.dfs(0, &start).then_some(search.path)
}
