//! Degree of ambiguity via the EDA/IDA patterns on the self-products.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{Letter, StructuredNfa};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambiguity {
    Finite,
    InfinitePolynomial,
    InfiniteExponential,
}

impl Ambiguity {
    pub fn is_finite(self) -> bool {
        self == Ambiguity::Finite
    }
}

/// A pumpable family `prefix · pump^j · suffix` whose run count grows with `j`.
///
/// For the exponential pattern `p == q` and `pump` labels two distinct
/// cycles on `p`; for the polynomial one the pump labels `p→p`, `p→q`
/// and `q→q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbiguityWitness {
    pub p: usize,
    pub q: usize,
    pub prefix: Vec<Letter>,
    pub pump: Vec<Letter>,
    pub suffix: Vec<Letter>,
}

impl AmbiguityWitness {
    pub fn word(&self, repetitions: usize) -> Vec<Letter> {
        let mut w = self.prefix.clone();
        for _ in 0..repetitions {
            w.extend_from_slice(&self.pump);
        }
        w.extend_from_slice(&self.suffix);
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbiguityReport {
    pub class: Ambiguity,
    pub witness: Option<AmbiguityWitness>,
}

/// Classifies the degree of ambiguity of `nfa`. The automaton is trimmed
/// first; states in the witness refer to the trimmed automaton.
pub fn ambiguity_class(nfa: &StructuredNfa) -> AmbiguityReport {
    let n = nfa.trim();
    let ns = n.num_states();
    if ns == 0 {
        return AmbiguityReport {
            class: Ambiguity::Finite,
            witness: None,
        };
    }
    let pairs = PairGraph::new(&n);
    let comp = tarjan(ns * ns, |v| pairs.adj[v].iter().map(|&(_, w)| w as usize));
    let ncomp = comp.iter().max().map_or(0, |&c| c + 1);
    let mut size = vec![0usize; ncomp];
    for &c in &comp {
        size[c] += 1;
    }
    let cyclic = |v: usize| size[comp[v]] > 1 || pairs.adj[v].iter().any(|&(_, w)| w as usize == v);

    // exponential: a diagonal vertex sharing a component with an off-diagonal one
    let mut has_diag = vec![None; ncomp];
    let mut has_off = vec![None; ncomp];
    for p in 0..ns {
        for q in 0..ns {
            let v = p * ns + q;
            let slot = if p == q { &mut has_diag } else { &mut has_off };
            slot[comp[v]].get_or_insert(v);
        }
    }
    for c in 0..ncomp {
        if let (Some(d), Some(o)) = (has_diag[c], has_off[c]) {
            let inside = |v: usize| comp[v] == c;
            let there = pairs.path(d, o, inside).expect("same component");
            let back = pairs.path(o, d, inside).expect("same component");
            let p = d / ns;
            let mut pump = there;
            pump.extend(back);
            return AmbiguityReport {
                class: Ambiguity::InfiniteExponential,
                witness: Some(AmbiguityWitness {
                    p,
                    q: p,
                    prefix: prefix_to(&n, p),
                    pump,
                    suffix: suffix_from(&n, p),
                }),
            };
        }
    }

    // polynomial: a path (p,p,q) -> (p,q,q) in the triple product with p != q
    for p in 0..ns {
        let from_diag = pairs.reachable(p * ns + p);
        for q in 0..ns {
            let pq = p * ns + q;
            if p == q || !from_diag[pq] || !cyclic(pq) {
                continue;
            }
            let c = comp[pq];
            if let Some(pump) =
                triple_path(&n, (p, p, q), (p, q, q), |a, cc| comp[a * ns + cc] == c)
            {
                return AmbiguityReport {
                    class: Ambiguity::InfinitePolynomial,
                    witness: Some(AmbiguityWitness {
                        p,
                        q,
                        prefix: prefix_to(&n, p),
                        pump,
                        suffix: suffix_from(&n, q),
                    }),
                };
            }
        }
    }
    AmbiguityReport {
        class: Ambiguity::Finite,
        witness: None,
    }
}

struct PairGraph {
    ns: usize,
    adj: Vec<Vec<(Letter, u32)>>,
}

impl PairGraph {
    fn new(n: &StructuredNfa) -> Self {
        let ns = n.num_states();
        let mut adj = vec![Vec::new(); ns * ns];
        for p in 0..ns {
            for q in 0..ns {
                let edges = &mut adj[p * ns + q];
                merge_rows(n.transitions(p), n.transitions(q), |l, a, b| {
                    edges.push((l, (a * ns + b) as u32));
                });
            }
        }
        PairGraph { ns, adj }
    }

    fn reachable(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.ns * self.ns];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &(_, w) in &self.adj[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w as usize);
                }
            }
        }
        seen
    }

    /// Shortest non-empty word leading from `from` to `to` inside `allowed`.
    fn path(&self, from: usize, to: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<Letter>> {
        let mut parent: HashMap<usize, (usize, Letter)> = HashMap::new();
        let mut queue = VecDeque::new();
        for &(l, w) in &self.adj[from] {
            let w = w as usize;
            if allowed(w) && !parent.contains_key(&w) {
                parent.insert(w, (usize::MAX, l));
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut word = Vec::new();
                let mut cur = v;
                loop {
                    let (p, l) = parent[&cur];
                    word.push(l);
                    if p == usize::MAX {
                        break;
                    }
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for &(l, w) in &self.adj[v] {
                let w = w as usize;
                if allowed(w) && !parent.contains_key(&w) {
                    parent.insert(w, (v, l));
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Calls `f(letter, a, b)` for every pair of transitions on a common letter.
fn merge_rows(
    ra: &[(Letter, usize)],
    rb: &[(Letter, usize)],
    mut f: impl FnMut(Letter, usize, usize),
) {
    let (mut x, mut y) = (0, 0);
    while x < ra.len() && y < rb.len() {
        let (la, lb) = (ra[x].0, rb[y].0);
        if la < lb {
            x += 1;
        } else if lb < la {
            y += 1;
        } else {
            let xe = x + ra[x..].iter().take_while(|e| e.0 == la).count();
            let ye = y + rb[y..].iter().take_while(|e| e.0 == la).count();
            for ea in &ra[x..xe] {
                for eb in &rb[y..ye] {
                    f(la, ea.1, eb.1);
                }
            }
            x = xe;
            y = ye;
        }
    }
}

fn triple_path(
    n: &StructuredNfa,
    from: (usize, usize, usize),
    to: (usize, usize, usize),
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<Vec<Letter>> {
    type V = (usize, usize, usize);
    let mut parent: HashMap<V, (Option<V>, Letter)> = HashMap::new();
    let mut queue: VecDeque<V> = VecDeque::new();
    let expand = |v: V, out: &mut Vec<(Letter, V)>| {
        out.clear();
        let (a, b, c) = v;
        let mut ab = Vec::new();
        merge_rows(n.transitions(a), n.transitions(b), |l, x, y| {
            ab.push((l, x, y))
        });
        for (l, x, y) in ab {
            for z in n.successors(c, l) {
                if allowed(x, z) {
                    out.push((l, (x, y, z)));
                }
            }
        }
    };
    let mut buf = Vec::new();
    expand(from, &mut buf);
    for &(l, w) in &buf {
        if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(w) {
            e.insert((None, l));
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut word = Vec::new();
            let mut cur = v;
            loop {
                let (p, l) = parent[&cur];
                word.push(l);
                match p {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            word.reverse();
            return Some(word);
        }
        expand(v, &mut buf);
        for &(l, w) in &buf {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert((Some(v), l));
                queue.push_back(w);
            }
        }
    }
    None
}

fn prefix_to(n: &StructuredNfa, target: usize) -> Vec<Letter> {
    let mut m = n.clone();
    for s in 0..m.num_states() {
        m.set_final(s, s == target);
    }
    m.find_witness().expect("trimmed automaton")
}

fn suffix_from(n: &StructuredNfa, source: usize) -> Vec<Letter> {
    let mut m = StructuredNfa::new(n.alphabet().clone(), n.num_states());
    m.set_initial(source);
    for s in 0..n.num_states() {
        m.set_final(s, n.is_final(s));
        m.set_transitions(s, n.transitions(s).to_vec());
    }
    m.find_witness().expect("trimmed automaton")
}

/// Iterative Tarjan; returns the component index of every vertex.
pub(crate) fn tarjan<I: Iterator<Item = usize>>(
    nv: usize,
    succ: impl Fn(usize) -> I,
) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; nv];
    let mut low = vec![0usize; nv];
    let mut on_stack = vec![false; nv];
    let mut comp = vec![UNSEEN; nv];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    for root in 0..nv {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, succ(root).collect(), 0));
        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w).collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::StructuredAlphabet;
    use crate::Alphabet;

    fn unary(states: usize) -> StructuredNfa {
        StructuredNfa::new(StructuredAlphabet::plain(Alphabet::new(["a"])), states)
    }

    #[test]
    fn deterministic_is_finite() {
        let mut n = unary(2);
        n.set_initial(0);
        n.set_final(1, true);
        n.add_transition(0, 0, 1);
        n.add_transition(1, 0, 0);
        assert_eq!(ambiguity_class(&n).class, Ambiguity::Finite);
    }

    #[test]
    fn polynomial_pattern() {
        let mut n = unary(2);
        n.set_initial(0);
        n.set_final(1, true);
        n.add_transition(0, 0, 0);
        n.add_transition(0, 0, 1);
        n.add_transition(1, 0, 1);
        let r = ambiguity_class(&n);
        assert_eq!(r.class, Ambiguity::InfinitePolynomial);
        let w = r.witness.unwrap();
        assert!(n.count_accepting_runs(&w.word(5)) > n.count_accepting_runs(&w.word(1)));
    }

    #[test]
    fn exponential_pattern() {
        let mut n = unary(2);
        n.set_initial(0);
        n.set_final(0, true);
        // two distinct loops on a through different routes
        n.add_transition(0, 0, 0);
        n.add_transition(0, 0, 1);
        n.add_transition(1, 0, 0);
        let r = ambiguity_class(&n);
        assert_eq!(r.class, Ambiguity::InfiniteExponential);
    }

    #[test]
    fn empty_is_finite() {
        assert_eq!(ambiguity_class(&unary(0)).class, Ambiguity::Finite);
    }

    #[test]
    fn tarjan_components() {
        let adj = [vec![1], vec![0, 2], vec![]];
        let comp = tarjan(3, |v| adj[v].iter().copied());
        assert_eq!(comp[0], comp[1]);
        assert_ne!(comp[0], comp[2]);
    }
}
