//! Runs of a transducer constrained to produce a fixed output word.
//!
//! Configurations are `(state, position, emitted)`: for one-way machines the
//! position counts consumed letters, for two-way machines it is the head
//! position (0 is ⊢, n+1 is ⊣). The configuration graph is finite, so the
//! searches here are exact and need no caps.

use rustc_hash::FxHashSet as HashSet;

use super::{Input, Kind, Move, Transducer};
use crate::alphabet::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: usize,
    pub pos: usize,
    pub emitted: usize,
}

/// Runs of `t` on input `u` whose output is exactly `v`.
pub struct PartnerSearch<'a> {
    t: &'a Transducer,
    u: &'a [Symbol],
    v: &'a [Symbol],
}

impl<'a> PartnerSearch<'a> {
    pub fn new(t: &'a Transducer, u: &'a [Symbol], v: &'a [Symbol]) -> Self {
        PartnerSearch { t, u, v }
    }

    pub fn transducer(&self) -> &Transducer {
        self.t
    }

    fn width(&self) -> usize {
        self.u.len() + 2
    }

    pub fn num_configs(&self) -> usize {
        self.t.num_states() * self.width() * (self.v.len() + 1)
    }

    pub fn id(&self, c: Config) -> usize {
        (c.state * self.width() + c.pos) * (self.v.len() + 1) + c.emitted
    }

    pub fn config(&self, id: usize) -> Config {
        let m = self.v.len() + 1;
        Config {
            state: id / m / self.width(),
            pos: id / m % self.width(),
            emitted: id % m,
        }
    }

    pub fn starts(&self) -> impl Iterator<Item = Config> + '_ {
        let pos = if self.t.kind() == Kind::OneWay { 0 } else { 1 };
        self.t.initial().iter().map(move |&state| Config {
            state,
            pos,
            emitted: 0,
        })
    }

    pub fn accepting(&self, c: Config) -> bool {
        c.emitted == self.v.len()
            && self.t.is_final(c.state)
            && (self.t.kind() == Kind::TwoWay || c.pos == self.u.len())
    }

    /// Calls `f(next, origin, len)` for every move; the `len` letters
    /// `v[c.emitted..c.emitted + len]` are emitted with origin `origin`.
    pub fn moves(&self, c: Config, mut f: impl FnMut(Config, usize, usize)) {
        let n = self.u.len();
        let rest = &self.v[c.emitted..];
        match self.t.kind() {
            Kind::OneWay => {
                for tr in self.t.matching(c.state, Input::Eps, rest) {
                    let next = Config {
                        state: tr.to,
                        pos: c.pos,
                        emitted: c.emitted + tr.output.len(),
                    };
                    f(next, (c.pos + 1).min(n), tr.output.len());
                }
                if c.pos < n {
                    for tr in self.t.matching(c.state, Input::Letter(self.u[c.pos]), rest) {
                        let next = Config {
                            state: tr.to,
                            pos: c.pos + 1,
                            emitted: c.emitted + tr.output.len(),
                        };
                        f(next, c.pos + 1, tr.output.len());
                    }
                }
            }
            Kind::TwoWay => {
                let here = match c.pos {
                    0 => Input::Begin,
                    p if p == n + 1 => Input::End,
                    p => Input::Letter(self.u[p - 1]),
                };
                for tr in self.t.matching(c.state, here, rest) {
                    let pos = match tr.dir {
                        Some(Move::Left) if c.pos > 0 => c.pos - 1,
                        Some(Move::Right) if c.pos <= n => c.pos + 1,
                        _ => continue,
                    };
                    let next = Config {
                        state: tr.to,
                        pos,
                        emitted: c.emitted + tr.output.len(),
                    };
                    f(next, c.pos, tr.output.len());
                }
            }
        }
    }

    /// Some run producing `v` whose every emission satisfies
    /// `allowed(origin, output_index)` (0-based index); returns its origins.
    pub fn find(&self, allowed: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
        let total = self.num_configs();
        let mut parent: Vec<u32> = vec![u32::MAX; total];
        let mut origin_of: Vec<u32> = vec![0; total];
        const ROOT: u32 = u32::MAX - 1;
        let mut stack = Vec::new();
        for c in self.starts() {
            let id = self.id(c);
            if parent[id] == u32::MAX {
                parent[id] = ROOT;
                stack.push(c);
            }
        }
        while let Some(c) = stack.pop() {
            if self.accepting(c) {
                let mut origins = vec![0usize; self.v.len()];
                let mut id = self.id(c);
                while parent[id] != ROOT {
                    let p = parent[id] as usize;
                    let (from, to) = (self.config(p).emitted, self.config(id).emitted);
                    for o in &mut origins[from..to] {
                        *o = origin_of[id] as usize;
                    }
                    id = p;
                }
                return Some(origins);
            }
            let cid = self.id(c);
            self.moves(c, |next, origin, len| {
                if (c.emitted..c.emitted + len).all(|j| allowed(origin, j)) {
                    let nid = self.id(next);
                    if parent[nid] == u32::MAX {
                        parent[nid] = cid as u32;
                        origin_of[nid] = origin as u32;
                        stack.push(next);
                    }
                }
            });
        }
        None
    }

    /// Whether some run produces `v` at all.
    pub fn exists(&self) -> bool {
        self.find(|_, _| true).is_some()
    }

    /// Configurations from which an accepting configuration is reachable.
    fn alive(&self) -> Vec<bool> {
        let total = self.num_configs();
        let mut reached = vec![false; total];
        let mut order = Vec::new();
        let mut stack: Vec<Config> = self.starts().collect();
        for c in &stack {
            reached[self.id(*c)] = true;
        }
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); total];
        while let Some(c) = stack.pop() {
            order.push(c);
            let cid = self.id(c);
            self.moves(c, |next, _, _| {
                let nid = self.id(next);
                rev[nid].push(cid as u32);
                if !reached[nid] {
                    reached[nid] = true;
                    stack.push(next);
                }
            });
        }
        let mut alive = vec![false; total];
        let mut work: Vec<usize> = order
            .iter()
            .filter(|&&c| self.accepting(c))
            .map(|&c| self.id(c))
            .collect();
        for &w in &work {
            alive[w] = true;
        }
        while let Some(w) = work.pop() {
            for &p in &rev[w] {
                if !alive[p as usize] {
                    alive[p as usize] = true;
                    work.push(p as usize);
                }
            }
        }
        alive
    }

    /// Distinct origin maps of runs producing `v`, in lexicographic order,
    /// at most `limit` of them; the flag tells whether the list is complete.
    pub fn enumerate(&self, limit: usize) -> (Vec<Vec<usize>>, bool) {
        let alive = self.alive();
        let mut found: std::collections::BTreeSet<Vec<usize>> = Default::default();
        let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::default();
        let mut complete = true;
        let mut stack: Vec<(Config, Vec<usize>)> = self
            .starts()
            .filter(|&c| alive[self.id(c)])
            .map(|c| (c, Vec::new()))
            .collect();
        while let Some((c, prefix)) = stack.pop() {
            if !seen.insert((self.id(c), prefix.clone())) {
                continue;
            }
            if self.accepting(c) {
                found.insert(prefix.clone());
                if found.len() >= limit {
                    complete = false;
                    break;
                }
            }
            self.moves(c, |next, origin, len| {
                if alive[self.id(next)] {
                    let mut p = prefix.clone();
                    p.extend(std::iter::repeat_n(origin, len));
                    stack.push((next, p));
                }
            });
        }
        (found.into_iter().collect(), complete)
    }
}
