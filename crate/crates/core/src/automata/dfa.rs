use std::collections::VecDeque;

use rustc_hash::FxHashMap as HashMap;

use super::{Letter, StructuredAlphabet, StructuredNfa};
use crate::error::Result;

/// Complete deterministic automaton with a dense transition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: StructuredAlphabet,
    initial: usize,
    finals: Vec<bool>,
    table: Vec<u32>,
}

impl Dfa {
    pub(crate) fn from_parts(
        alphabet: StructuredAlphabet,
        initial: usize,
        finals: Vec<bool>,
        table: Vec<u32>,
    ) -> Self {
        debug_assert_eq!(table.len(), finals.len() * alphabet.num_letters());
        Dfa {
            alphabet,
            initial,
            finals,
            table,
        }
    }

    /// Builds a DFA from a transition function on `num_states` states.
    pub fn from_fn(
        alphabet: StructuredAlphabet,
        num_states: usize,
        initial: usize,
        finals: &[usize],
        mut next: impl FnMut(usize, Letter) -> usize,
    ) -> Self {
        let nl = alphabet.num_letters();
        let mut table = Vec::with_capacity(num_states * nl);
        for s in 0..num_states {
            for l in 0..nl as Letter {
                let t = next(s, l);
                assert!(t < num_states);
                table.push(t as u32);
            }
        }
        let mut fin = vec![false; num_states];
        for &f in finals {
            fin[f] = true;
        }
        Dfa::from_parts(alphabet, initial, fin, table)
    }

    /// Accepts every word (including the empty one).
    pub fn universal(alphabet: StructuredAlphabet) -> Self {
        Dfa::from_fn(alphabet, 1, 0, &[0], |_, _| 0)
    }

    pub fn alphabet(&self) -> &StructuredAlphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    #[inline]
    pub fn next(&self, s: usize, l: Letter) -> usize {
        self.table[s * self.alphabet.num_letters() + l as usize] as usize
    }

    pub fn run(&self, word: &[Letter]) -> usize {
        word.iter().fold(self.initial, |s, &l| self.next(s, l))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.finals[self.run(word)]
    }

    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for f in &mut out.finals {
            *f = !*f;
        }
        out
    }

    fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.alphabet.check_same(&other.alphabet)?;
        let nl = self.alphabet.num_letters();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::default();
        let mut pairs = vec![(self.initial, other.initial)];
        ids.insert(pairs[0], 0);
        let mut table = Vec::new();
        let mut finals = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            finals.push(op(self.finals[a], other.finals[b]));
            for l in 0..nl as Letter {
                let p = (self.next(a, l), other.next(b, l));
                let id = *ids.entry(p).or_insert_with(|| {
                    pairs.push(p);
                    pairs.len() - 1
                });
                table.push(id as u32);
            }
            i += 1;
        }
        Ok(Dfa::from_parts(self.alphabet.clone(), 0, finals, table))
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    /// Symmetric difference, handy for language equality checks.
    pub fn xor(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a != b)
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.xor(other)?.is_empty())
    }

    fn reachable(&self) -> Vec<bool> {
        let nl = self.alphabet.num_letters();
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(s) = stack.pop() {
            for &t in &self.table[s * nl..(s + 1) * nl] {
                let t = t as usize;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        let r = self.reachable();
        !(0..self.num_states()).any(|s| r[s] && self.finals[s])
    }

    /// Shortest accepted word, least in the letter order among the shortest.
    pub fn find_witness(&self) -> Option<Vec<Letter>> {
        let nl = self.alphabet.num_letters();
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            if self.finals[s] {
                let mut word = Vec::new();
                let mut cur = s;
                while let Some((p, l)) = parent[cur] {
                    word.push(l);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for l in 0..nl as Letter {
                let t = self.table[s * nl + l as usize] as usize;
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, l));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Moore-style partition refinement on the reachable part.
    pub fn minimize(&self) -> Dfa {
        let nl = self.alphabet.num_letters();
        let reach = self.reachable();
        let states: Vec<usize> = (0..self.num_states()).filter(|&s| reach[s]).collect();
        let mut class = vec![0usize; self.num_states()];
        for &s in &states {
            class[s] = self.finals[s] as usize;
        }
        let mut count = {
            let mut c: Vec<usize> = states.iter().map(|&s| class[s]).collect();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let mut sigs: HashMap<Vec<u32>, usize> = HashMap::default();
            let mut next = vec![0usize; self.num_states()];
            let mut sig = Vec::with_capacity(nl + 1);
            for &s in &states {
                sig.clear();
                sig.push(class[s] as u32);
                sig.extend(
                    self.table[s * nl..(s + 1) * nl]
                        .iter()
                        .map(|&t| class[t as usize] as u32),
                );
                let len = sigs.len();
                next[s] = *sigs.entry(sig.clone()).or_insert(len);
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber so that the initial state is 0 and order follows BFS
        let mut id = vec![usize::MAX; count];
        let mut order = Vec::with_capacity(count);
        let mut queue = VecDeque::from([self.initial]);
        id[class[self.initial]] = 0;
        order.push(self.initial);
        while let Some(s) = queue.pop_front() {
            for &t in &self.table[s * nl..(s + 1) * nl] {
                let c = class[t as usize];
                if id[c] == usize::MAX {
                    id[c] = order.len();
                    order.push(t as usize);
                    queue.push_back(t as usize);
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * nl);
        let mut finals = Vec::with_capacity(order.len());
        for &s in &order {
            finals.push(self.finals[s]);
            table.extend(
                self.table[s * nl..(s + 1) * nl]
                    .iter()
                    .map(|&t| id[class[t as usize]] as u32),
            );
        }
        Dfa::from_parts(self.alphabet.clone(), 0, finals, table)
    }

    /// The same automaton viewed as an NFA, with dead states removed.
    pub fn to_nfa(&self) -> StructuredNfa {
        let nl = self.alphabet.num_letters();
        let mut n = StructuredNfa::new(self.alphabet.clone(), self.num_states());
        n.set_initial(self.initial);
        for s in 0..self.num_states() {
            n.set_final(s, self.finals[s]);
            let row = &self.table[s * nl..(s + 1) * nl];
            n.set_transitions(
                s,
                row.iter()
                    .enumerate()
                    .map(|(l, &t)| (l as Letter, t as usize))
                    .collect(),
            );
        }
        n.trim()
    }

    /// Existentially forgets a track and re-determinizes.
    pub fn project_index(&self, track: usize) -> Dfa {
        self.to_nfa().project_index(track).determinize().minimize()
    }

    pub fn project_track(&self, track: &str) -> Result<Dfa> {
        let t = self.alphabet.track_index(track)?;
        Ok(self.project_index(t))
    }

    /// Re-expresses the automaton over a superset of its tracks.
    pub fn cylindrify(&self, target: &StructuredAlphabet) -> Result<Dfa> {
        let positions: Vec<usize> = self
            .alphabet
            .tracks()
            .iter()
            .map(|t| target.track_index(t))
            .collect::<Result<_>>()?;
        if target.base() != self.alphabet.base() {
            return Err(crate::Error::AlphabetMismatch(
                "base alphabets differ".into(),
            ));
        }
        let src = &self.alphabet;
        let map: Vec<Letter> = (0..target.num_letters() as Letter)
            .map(|l| {
                let mut bits = 0;
                for (i, &p) in positions.iter().enumerate() {
                    if target.bit(l, p) {
                        bits |= 1 << i;
                    }
                }
                src.letter(target.base_of(l), bits)
            })
            .collect();
        let fin: Vec<usize> = (0..self.num_states()).filter(|&s| self.finals[s]).collect();
        Ok(Dfa::from_fn(
            target.clone(),
            self.num_states(),
            self.initial,
            &fin,
            |s, l| self.next(s, map[l as usize]),
        ))
    }
}

impl Dfa {
    /// Relabels the alphabet (same base, same number of tracks).
    pub(crate) fn with_alphabet(mut self, alphabet: StructuredAlphabet) -> Dfa {
        assert_eq!(alphabet.num_letters(), self.alphabet.num_letters());
        self.alphabet = alphabet;
        self
    }

    /// Builds the reachable part of a deterministic system given by a step
    /// function on hashable states.
    pub fn explore<S: Clone + Eq + std::hash::Hash>(
        alphabet: StructuredAlphabet,
        init: S,
        step: impl Fn(&S, Letter) -> S,
        accept: impl Fn(&S) -> bool,
    ) -> Dfa {
        let nl = alphabet.num_letters();
        let mut ids: HashMap<S, usize> = HashMap::default();
        let mut states = vec![init.clone()];
        ids.insert(init, 0);
        let mut table = Vec::new();
        let mut finals = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let s = states[i].clone();
            finals.push(accept(&s));
            for l in 0..nl as Letter {
                let t = step(&s, l);
                let id = match ids.get(&t) {
                    Some(&id) => id,
                    None => {
                        ids.insert(t.clone(), states.len());
                        states.push(t);
                        states.len() - 1
                    }
                };
                table.push(id as u32);
            }
            i += 1;
        }
        Dfa::from_parts(alphabet, 0, finals, table)
    }
}
