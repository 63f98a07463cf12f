use std::collections::VecDeque;

use rustc_hash::FxHashMap as HashMap;

use super::{Dfa, Letter, StructuredAlphabet};
use crate::error::{Error, Result};

/// Non-deterministic automaton over a [`StructuredAlphabet`].
///
/// States are `0..num_states`. Transitions of each state are kept sorted
/// by (letter, target) without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredNfa {
    alphabet: StructuredAlphabet,
    initial: Vec<usize>,
    finals: Vec<bool>,
    delta: Vec<Vec<(Letter, usize)>>,
}

impl StructuredNfa {
    pub fn new(alphabet: StructuredAlphabet, num_states: usize) -> Self {
        StructuredNfa {
            alphabet,
            initial: Vec::new(),
            finals: vec![false; num_states],
            delta: vec![Vec::new(); num_states],
        }
    }

    /// The automaton with no states.
    pub fn empty(alphabet: StructuredAlphabet) -> Self {
        StructuredNfa::new(alphabet, 0)
    }

    pub fn add_state(&mut self) -> usize {
        self.finals.push(false);
        self.delta.push(Vec::new());
        self.finals.len() - 1
    }

    pub fn set_initial(&mut self, state: usize) {
        if let Err(pos) = self.initial.binary_search(&state) {
            self.initial.insert(pos, state);
        }
    }

    pub fn set_final(&mut self, state: usize, value: bool) {
        self.finals[state] = value;
    }

    pub fn add_transition(&mut self, from: usize, letter: Letter, to: usize) {
        debug_assert!((letter as usize) < self.alphabet.num_letters());
        let row = &mut self.delta[from];
        if let Err(pos) = row.binary_search(&(letter, to)) {
            row.insert(pos, (letter, to));
        }
    }

    /// Adds `from --l--> to` for every letter `l` with `pred(l)`.
    pub fn add_transitions_where(
        &mut self,
        from: usize,
        to: usize,
        mut pred: impl FnMut(Letter) -> bool,
    ) {
        for l in 0..self.alphabet.num_letters() as Letter {
            if pred(l) {
                self.delta[from].push((l, to));
            }
        }
        self.delta[from].sort_unstable();
        self.delta[from].dedup();
    }

    /// Replaces the transitions of `state`; `row` need not be sorted.
    pub fn set_transitions(&mut self, state: usize, mut row: Vec<(Letter, usize)>) {
        row.sort_unstable();
        row.dedup();
        self.delta[state] = row;
    }

    pub fn alphabet(&self) -> &StructuredAlphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&s| self.finals[s])
    }

    pub fn transitions(&self, state: usize) -> &[(Letter, usize)] {
        &self.delta[state]
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    /// Targets of `state` on `letter`.
    pub fn successors(&self, state: usize, letter: Letter) -> impl Iterator<Item = usize> + '_ {
        let row = &self.delta[state];
        let start = row.partition_point(|&(l, _)| l < letter);
        row[start..]
            .iter()
            .take_while(move |&&(l, _)| l == letter)
            .map(|&(_, t)| t)
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1
            && self
                .delta
                .iter()
                .all(|row| row.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// One step of the subset simulation.
    pub fn step(&self, current: &[bool], letter: Letter) -> Vec<bool> {
        let mut next = vec![false; self.num_states()];
        for (s, _) in current.iter().enumerate().filter(|(_, &on)| on) {
            for t in self.successors(s, letter) {
                next[t] = true;
            }
        }
        next
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut current = vec![false; self.num_states()];
        for &s in &self.initial {
            current[s] = true;
        }
        for &l in word {
            current = self.step(&current, l);
            if !current.contains(&true) {
                return false;
            }
        }
        current.iter().zip(&self.finals).any(|(&c, &f)| c && f)
    }

    /// Number of accepting runs on `word`, saturating at `u128::MAX`.
    pub fn count_accepting_runs(&self, word: &[Letter]) -> u128 {
        let mut counts = vec![0u128; self.num_states()];
        for &s in &self.initial {
            counts[s] = 1;
        }
        for &l in word {
            let mut next = vec![0u128; self.num_states()];
            for (s, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
                for t in self.successors(s, l) {
                    next[t] = next[t].saturating_add(c);
                }
            }
            counts = next;
        }
        counts
            .iter()
            .zip(&self.finals)
            .filter(|(_, &f)| f)
            .fold(0u128, |acc, (&c, _)| acc.saturating_add(c))
    }

    /// States reachable from the initial states.
    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = self.initial.clone();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &(_, t) in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which a final state is reachable.
    pub fn coaccessible(&self) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.num_states()];
        for (s, row) in self.delta.iter().enumerate() {
            for &(_, t) in row {
                rev[t].push(s);
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<usize> = self.finals().collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Restricts to states that are both accessible and co-accessible.
    pub fn trim(&self) -> StructuredNfa {
        let acc = self.accessible();
        let coacc = self.coaccessible();
        let keep: Vec<bool> = acc.iter().zip(&coacc).map(|(&a, &c)| a && c).collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[bool]) -> StructuredNfa {
        let mut index = vec![usize::MAX; self.num_states()];
        let mut n = 0;
        for s in 0..self.num_states() {
            if keep[s] {
                index[s] = n;
                n += 1;
            }
        }
        let mut out = StructuredNfa::new(self.alphabet.clone(), n);
        for s in (0..self.num_states()).filter(|&s| keep[s]) {
            out.finals[index[s]] = self.finals[s];
            out.delta[index[s]] = self.delta[s]
                .iter()
                .filter(|&&(_, t)| keep[t])
                .map(|&(l, t)| (l, index[t]))
                .collect();
        }
        out.initial = self
            .initial
            .iter()
            .filter(|&&s| keep[s])
            .map(|&s| index[s])
            .collect();
        out
    }

    pub fn is_empty(&self) -> bool {
        let acc = self.accessible();
        !(0..self.num_states()).any(|s| acc[s] && self.finals[s])
    }

    /// Shortest accepted word, least in the letter order among the shortest.
    pub fn find_witness(&self) -> Option<Vec<Letter>> {
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in &self.initial {
            seen[s] = true;
            queue.push_back(s);
        }
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
            for &(l, t) in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, l));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Subset construction; the result is complete.
    pub fn determinize(&self) -> Dfa {
        let nl = self.alphabet.num_letters();
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::default();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut table: Vec<u32> = Vec::new();
        let mut finals = Vec::new();
        let start = self.initial.clone();
        ids.insert(start.clone(), 0);
        sets.push(start);
        // state 1 is reserved for the empty set once it is needed
        let mut i = 0;
        let mut buckets: HashMap<Letter, Vec<usize>> = HashMap::default();
        while i < sets.len() {
            let set = sets[i].clone();
            finals.push(set.iter().any(|&s| self.finals[s]));
            buckets.clear();
            for &s in &set {
                for &(l, t) in &self.delta[s] {
                    buckets.entry(l).or_default().push(t);
                }
            }
            let sink = {
                let empty: Vec<usize> = Vec::new();
                match ids.get(&empty) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        ids.insert(empty.clone(), id);
                        sets.push(empty);
                        id
                    }
                }
            };
            let mut row = vec![sink as u32; nl];
            let mut letters: Vec<Letter> = buckets.keys().copied().collect();
            letters.sort_unstable();
            for l in letters {
                let mut targets = buckets.remove(&l).unwrap();
                targets.sort_unstable();
                targets.dedup();
                let id = match ids.get(&targets) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        ids.insert(targets.clone(), id);
                        sets.push(targets);
                        id
                    }
                };
                row[l as usize] = id as u32;
            }
            table.extend_from_slice(&row);
            i += 1;
        }
        Dfa::from_parts(self.alphabet.clone(), 0, finals, table)
    }

    pub fn complement(&self) -> Dfa {
        self.determinize().complement()
    }

    /// Synchronous product accepting the intersection.
    pub fn intersect(&self, other: &StructuredNfa) -> Result<StructuredNfa> {
        self.alphabet.check_same(&other.alphabet)?;
        let mut ids: HashMap<(usize, usize), usize> = HashMap::default();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut out = StructuredNfa::empty(self.alphabet.clone());
        let mut intern =
            |p: (usize, usize), out: &mut StructuredNfa, pairs: &mut Vec<(usize, usize)>| {
                *ids.entry(p).or_insert_with(|| {
                    pairs.push(p);
                    out.add_state()
                })
            };
        for &a in &self.initial {
            for &b in &other.initial {
                let id = intern((a, b), &mut out, &mut pairs);
                out.set_initial(id);
            }
        }
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            out.finals[i] = self.finals[a] && other.finals[b];
            let (ra, rb) = (&self.delta[a], &other.delta[b]);
            let (mut x, mut y) = (0, 0);
            let mut edges = Vec::new();
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
                            edges.push((la, (ea.1, eb.1)));
                        }
                    }
                    x = xe;
                    y = ye;
                }
            }
            for (l, p) in edges {
                let t = intern(p, &mut out, &mut pairs);
                out.delta[i].push((l, t));
            }
            out.delta[i].sort_unstable();
            out.delta[i].dedup();
            i += 1;
        }
        Ok(out)
    }

    /// Disjoint union.
    pub fn union(&self, other: &StructuredNfa) -> Result<StructuredNfa> {
        self.alphabet.check_same(&other.alphabet)?;
        let off = self.num_states();
        let mut out = self.clone();
        for s in 0..other.num_states() {
            out.finals.push(other.finals[s]);
            out.delta
                .push(other.delta[s].iter().map(|&(l, t)| (l, t + off)).collect());
        }
        for &s in &other.initial {
            out.set_initial(s + off);
        }
        Ok(out)
    }

    /// Existentially forgets one track.
    pub fn project_track(&self, track: &str) -> Result<StructuredNfa> {
        let t = self.alphabet.track_index(track)?;
        Ok(self.project_index(t))
    }

    pub(crate) fn project_index(&self, t: usize) -> StructuredNfa {
        let src = &self.alphabet;
        let alphabet = src.without_track(t);
        let low = (1u32 << t) - 1;
        let map = |l: Letter| -> Letter {
            let base = src.base_of(l);
            let bits = src.bits_of(l);
            alphabet.letter(base, (bits & low) | ((bits >> (t + 1)) << t))
        };
        let mut out = StructuredNfa::new(alphabet.clone(), self.num_states());
        out.initial = self.initial.clone();
        out.finals = self.finals.clone();
        for (s, row) in self.delta.iter().enumerate() {
            let mut r: Vec<(Letter, usize)> = row.iter().map(|&(l, q)| (map(l), q)).collect();
            r.sort_unstable();
            r.dedup();
            out.delta[s] = r;
        }
        out
    }

    /// Re-expresses the automaton over `target`, whose tracks are a superset
    /// of ours (by name, any order); extra tracks are unconstrained.
    pub fn cylindrify(&self, target: &StructuredAlphabet) -> Result<StructuredNfa> {
        if target.base() != self.alphabet.base() {
            return Err(Error::AlphabetMismatch(format!(
                "base {} vs {}",
                self.alphabet.base(),
                target.base()
            )));
        }
        let positions: Vec<usize> = self
            .alphabet
            .tracks()
            .iter()
            .map(|t| target.track_index(t))
            .collect::<Result<_>>()?;
        let src = &self.alphabet;
        // group target letters by the source letter they restrict to
        let mut by_source: Vec<Vec<Letter>> = vec![Vec::new(); src.num_letters()];
        for l in 0..target.num_letters() as Letter {
            let mut bits = 0;
            for (i, &p) in positions.iter().enumerate() {
                if target.bit(l, p) {
                    bits |= 1 << i;
                }
            }
            by_source[src.letter(target.base_of(l), bits) as usize].push(l);
        }
        let mut out = StructuredNfa::new(target.clone(), self.num_states());
        out.initial = self.initial.clone();
        out.finals = self.finals.clone();
        for (s, row) in self.delta.iter().enumerate() {
            let mut r = Vec::new();
            for &(l, q) in row {
                r.extend(by_source[l as usize].iter().map(|&m| (m, q)));
            }
            r.sort_unstable();
            r.dedup();
            out.delta[s] = r;
        }
        Ok(out)
    }

    /// Renames tracks; `names` lists the new name of each current track.
    pub fn rename_tracks<S: AsRef<str>>(&self, names: &[S]) -> Result<StructuredNfa> {
        let alphabet = StructuredAlphabet::new(
            self.alphabet.base().clone(),
            names.iter().map(|s| s.as_ref().to_string()),
        )?;
        if alphabet.num_tracks() != self.alphabet.num_tracks() {
            return Err(Error::AlphabetMismatch("track count changed".into()));
        }
        let mut out = self.clone();
        out.alphabet = alphabet;
        Ok(out)
    }

    /// Keeps only the transitions whose letter satisfies `keep`.
    pub fn restrict_letters(&self, keep: impl Fn(Letter) -> bool) -> StructuredNfa {
        let mut out = self.clone();
        for row in &mut out.delta {
            row.retain(|&(l, _)| keep(l));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab() -> StructuredAlphabet {
        StructuredAlphabet::plain(Alphabet::new(["a", "b"]))
    }

    // words over {a,b} containing "ab"
    fn contains_ab() -> StructuredNfa {
        let mut n = StructuredNfa::new(ab(), 3);
        n.set_initial(0);
        n.set_final(2, true);
        for l in 0..2 {
            n.add_transition(0, l, 0);
            n.add_transition(2, l, 2);
        }
        n.add_transition(0, 0, 1);
        n.add_transition(1, 1, 2);
        n
    }

    #[test]
    fn accepts_and_witness() {
        let n = contains_ab();
        assert!(n.accepts(&[1, 0, 1]));
        assert!(!n.accepts(&[1, 1, 0]));
        assert_eq!(n.find_witness(), Some(vec![0, 1]));
        assert!(!n.is_deterministic());
    }

    #[test]
    fn determinize_preserves_language() {
        let n = contains_ab();
        let d = n.determinize();
        for len in 0..7 {
            for w in ab().base().words_of_len(len) {
                let w: Vec<Letter> = w.iter().map(|&s| s as Letter).collect();
                assert_eq!(n.accepts(&w), d.accepts(&w));
            }
        }
    }

    #[test]
    fn intersect_with_complement_is_empty() {
        let n = contains_ab();
        let c = n.complement().to_nfa();
        assert!(n.intersect(&c).unwrap().is_empty());
        assert!(!n.union(&c).unwrap().is_empty());
    }

    #[test]
    fn run_counting() {
        let mut n = StructuredNfa::new(StructuredAlphabet::plain(Alphabet::new(["a"])), 1);
        n.set_initial(0);
        n.set_final(0, true);
        n.add_transition(0, 0, 0);
        assert_eq!(n.count_accepting_runs(&[0, 0, 0]), 1);
    }
}
