//! One-way and two-way non-deterministic transducers and their origin graphs.

mod format;
mod graph;
mod runs;
mod search;

pub(crate) use format::label;
pub use format::{parse_transducer, write_transducer};
pub use graph::{parse_graph, OriginGraph};
pub use runs::{
    classical_pairs, origin_equivalent_upto, run_origin_graphs, Equivalence, GraphSet, RunCaps,
    Side,
};
pub use search::{Config, PartnerSearch};

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[serde(rename = "1nt")]
    OneWay,
    #[serde(rename = "2nt")]
    TwoWay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    Left,
    Right,
}

/// What a transition reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Input {
    Letter(Symbol),
    /// Only for one-way transducers.
    Eps,
    /// Left endmarker, two-way only.
    Begin,
    /// Right endmarker, two-way only.
    End,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Transition {
    pub from: usize,
    pub input: Input,
    pub output: Vec<Symbol>,
    /// `None` for one-way transducers.
    pub dir: Option<Move>,
    pub to: usize,
}

/// Per (state, input) transitions, sorted by packed output word so that
/// the transitions emitting a given factor of the output can be found by
/// binary search.
#[derive(Clone, Debug, Default)]
struct Index {
    slots: Vec<Vec<Indexed>>,
    max_len: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
struct Indexed {
    key: u64,
    len: usize,
    tr: usize,
}

/// Packs a short word into an integer; `None` when too long to pack.
fn pack(word: &[Symbol]) -> Option<u64> {
    if word.len() > 7 || word.iter().any(|&s| s >= 255) {
        return None;
    }
    Some(word.iter().fold(0u64, |acc, &s| acc << 8 | (s as u64 + 1)))
}

#[derive(Clone, Debug)]
pub struct Transducer {
    kind: Kind,
    input: Alphabet,
    output: Alphabet,
    states: Vec<String>,
    initial: Vec<usize>,
    finals: Vec<bool>,
    transitions: Vec<Transition>,
    by_state: Vec<Vec<usize>>,
    index: Index,
    /// Transitions whose output is too long to pack.
    long: Vec<usize>,
}

impl Transducer {
    pub fn new(kind: Kind, input: Alphabet, output: Alphabet) -> Self {
        Transducer {
            kind,
            input,
            output,
            states: Vec::new(),
            initial: Vec::new(),
            finals: Vec::new(),
            transitions: Vec::new(),
            by_state: Vec::new(),
            index: Index::default(),
            long: Vec::new(),
        }
    }

    /// Returns the state called `name`, creating it if needed.
    pub fn state(&mut self, name: &str) -> usize {
        if let Some(i) = self.states.iter().position(|s| s == name) {
            return i;
        }
        self.states.push(name.to_string());
        self.finals.push(false);
        self.by_state.push(Vec::new());
        self.states.len() - 1
    }

    pub fn set_initial(&mut self, name: &str) {
        let s = self.state(name);
        if !self.initial.contains(&s) {
            self.initial.push(s);
            self.initial.sort_unstable();
        }
    }

    pub fn set_final(&mut self, name: &str) {
        let s = self.state(name);
        self.finals[s] = true;
    }

    /// Adds a transition; output letters are given as symbols of the output
    /// alphabet.
    pub fn add(
        &mut self,
        from: &str,
        input: Input,
        output: &[Symbol],
        dir: Option<Move>,
        to: &str,
    ) -> Result<()> {
        let from = self.state(from);
        let to = self.state(to);
        self.push(Transition {
            from,
            input,
            output: output.to_vec(),
            dir,
            to,
        })
    }

    /// Adds a transition, naming letters: `input` is `None` for ε, output
    /// letters are separated by whitespace (or written compactly when all
    /// output letters are single characters).
    pub fn add_named(
        &mut self,
        from: &str,
        input: Option<&str>,
        output: &str,
        dir: Option<Move>,
        to: &str,
    ) -> Result<()> {
        let input = match input {
            None => Input::Eps,
            Some(a) => Input::Letter(self.input.symbol(a)?),
        };
        let out = if output.contains(char::is_whitespace) || output.is_empty() {
            self.output.parse_word(output)?
        } else if self.output.contains(output) {
            vec![self.output.symbol(output)?]
        } else {
            self.output.parse_compact(output)?
        };
        self.add(from, input, &out, dir, to)
    }

    pub(crate) fn push(&mut self, t: Transition) -> Result<()> {
        self.check(&t)?;
        if self.transitions.contains(&t) {
            return Ok(());
        }
        let id = self.transitions.len();
        self.by_state[t.from].push(id);
        let slot = self.slot(t.from, t.input);
        if self.index.slots.len() <= slot {
            let width = self.input.len() + 3;
            let needed = self.states.len().max(t.from + 1) * width;
            self.index.slots.resize(needed.max(slot + 1), Vec::new());
            self.index.max_len.resize(needed.max(slot + 1), 0);
        }
        match pack(&t.output) {
            Some(key) => {
                let e = Indexed {
                    key,
                    len: t.output.len(),
                    tr: id,
                };
                let v = &mut self.index.slots[slot];
                let pos = v.partition_point(|x| (x.key, x.tr) < (key, id));
                v.insert(pos, e);
                self.index.max_len[slot] = self.index.max_len[slot].max(t.output.len());
            }
            None => self.long.push(id),
        }
        self.transitions.push(t);
        Ok(())
    }

    fn slot(&self, state: usize, input: Input) -> usize {
        let width = self.input.len() + 3;
        state * width + self.input_key(input)
    }

    fn input_key(&self, input: Input) -> usize {
        let n = self.input.len();
        match input {
            Input::Letter(a) => a,
            Input::Eps => n,
            Input::Begin => n + 1,
            Input::End => n + 2,
        }
    }

    fn check(&self, t: &Transition) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidTransducer(m.to_string()));
        if t.output.iter().any(|&s| s >= self.output.len()) {
            return bad("output letter outside the output alphabet");
        }
        if let Input::Letter(a) = t.input {
            if a >= self.input.len() {
                return bad("input letter outside the input alphabet");
            }
        }
        match self.kind {
            Kind::OneWay => {
                if t.dir.is_some() {
                    return bad("one-way transitions carry no direction");
                }
                if matches!(t.input, Input::Begin | Input::End) {
                    return bad("endmarkers are only read by two-way transducers");
                }
            }
            Kind::TwoWay => match (t.input, t.dir) {
                (_, None) => return bad("two-way transitions need a direction"),
                (Input::Eps, _) => return bad("two-way transducers have no ε-transitions"),
                (Input::Begin, Some(Move::Left)) => return bad("transitions on ⊢ must move right"),
                (Input::End, Some(Move::Right)) => return bad("transitions on ⊣ must move left"),
                (Input::Begin | Input::End, _) if !t.output.is_empty() => {
                    return bad("transitions on endmarkers cannot output")
                }
                _ => {}
            },
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_one_way(&self) -> bool {
        self.kind == Kind::OneWay
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transitions_from(&self, s: usize) -> impl Iterator<Item = &Transition> {
        self.by_state[s].iter().map(move |&i| &self.transitions[i])
    }

    /// Transitions of `state` reading `input` whose output equals a prefix
    /// of `rest` (including the empty prefix).
    pub fn matching<'a>(
        &'a self,
        state: usize,
        input: Input,
        rest: &'a [Symbol],
    ) -> impl Iterator<Item = &'a Transition> + 'a {
        let slot = self.slot(state, input);
        let (entries, max_len): (&[Indexed], usize) = match self.index.slots.get(slot) {
            Some(v) => (v, self.index.max_len[slot]),
            None => (&[], 0),
        };
        let upto = max_len.min(rest.len());
        let packed = (0..=upto).flat_map(move |len| {
            let key = pack(&rest[..len]);
            let range: &[Indexed] = match key {
                Some(key) => {
                    let lo = entries.partition_point(|e| e.key < key);
                    let hi = lo + entries[lo..].iter().take_while(|e| e.key == key).count();
                    &entries[lo..hi]
                }
                None => &[],
            };
            range
                .iter()
                .filter(move |e| e.len == len)
                .map(move |e| &self.transitions[e.tr])
        });
        let long = self
            .long
            .iter()
            .map(move |&i| &self.transitions[i])
            .filter(move |t| t.from == state && t.input == input && rest.starts_with(&t.output));
        packed.chain(long)
    }

    /// No state offers two transitions on the same input; for one-way
    /// machines an ε-transition conflicts with any other transition.
    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() > 1 {
            return false;
        }
        for s in 0..self.num_states() {
            let mut seen = std::collections::HashSet::new();
            for t in self.transitions_from(s) {
                if !seen.insert(t.input) {
                    return false;
                }
                if t.input == Input::Eps && self.transitions_from(s).count() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Disjoint union; states of `other` are suffixed with `'`.
    pub fn disjoint_union(&self, other: &Transducer) -> Result<Transducer> {
        if self.kind != other.kind || self.input != other.input || self.output != other.output {
            return Err(Error::AlphabetMismatch(
                "union needs identical kinds and alphabets".into(),
            ));
        }
        let mut out = Transducer::new(self.kind, self.input.clone(), self.output.clone());
        let rename = |tag: &str, name: &str| format!("{tag}{name}");
        for (tag, t) in [("l.", self), ("r.", other)] {
            for s in 0..t.num_states() {
                out.state(&rename(tag, &t.states[s]));
            }
            for &s in &t.initial {
                out.set_initial(&rename(tag, &t.states[s]));
            }
            for s in 0..t.num_states() {
                if t.finals[s] {
                    out.set_final(&rename(tag, &t.states[s]));
                }
            }
            for tr in &t.transitions {
                let from = rename(tag, &t.states[tr.from]);
                let to = rename(tag, &t.states[tr.to]);
                out.add(&from, tr.input, &tr.output, tr.dir, &to)?;
            }
        }
        Ok(out)
    }

    pub(crate) fn check_alphabets(&self, other: &Transducer) -> Result<()> {
        if self.input != other.input || self.output != other.output {
            return Err(Error::AlphabetMismatch(format!(
                "{} / {} vs {} / {}",
                self.input, self.output, other.input, other.output
            )));
        }
        Ok(())
    }
}
