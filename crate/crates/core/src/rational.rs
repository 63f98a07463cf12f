//! Rational resynchronizers for one-way transducers.
//!
//! A graph of a 1NT is encoded as an interleaved word over `Σ ∪ Γ`: each
//! input letter is followed by the outputs whose origin it is. A rational
//! resynchronizer is a language of pairs of interleaved words of the same
//! length read in lock step, the top word encoding the source graph and the
//! bottom word the target graph.
//!
//! Acceptors are either Glushkov automata of regular expressions over pair
//! letters `a/b`, or the built-in shift acceptor whose states are bounded
//! queues of pending letters.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::text::strip_comment;
use crate::containment::{Status, Verdict};
use crate::error::{Error, Result};
use crate::transducer::{run_origin_graphs, Input, Kind, OriginGraph, RunCaps, Transducer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Item {
    In(Symbol),
    Out(Symbol),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InterleavedWord {
    pub items: Vec<Item>,
}

impl InterleavedWord {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn render(&self, sigma: &Alphabet, gamma: &Alphabet) -> String {
        let names: Vec<&str> = self
            .items
            .iter()
            .map(|&it| match it {
                Item::In(a) => sigma.name(a),
                Item::Out(b) => gamma.name(b),
            })
            .collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(" ")
        }
    }

    /// Parses a rendering of [`InterleavedWord::render`].
    pub fn parse(text: &str, sigma: &Alphabet, gamma: &Alphabet) -> Result<Self> {
        let tokens: Vec<String> = if text.contains(char::is_whitespace) {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        let items = tokens
            .iter()
            .map(|t| {
                if sigma.contains(t) {
                    sigma.symbol(t).map(Item::In)
                } else {
                    gamma.symbol(t).map(Item::Out)
                }
            })
            .collect::<Result<_>>()?;
        Ok(InterleavedWord { items })
    }
}

/// Each input letter followed by the outputs it is the origin of. Origins
/// must not decrease along the output, as in every run of a 1NT.
pub fn interleave(g: &OriginGraph) -> Result<InterleavedWord> {
    g.validate()?;
    if let Some(t) = g.orig.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::NotInterleavable(format!(
            "output {} has origin {} after origin {}",
            t + 2,
            g.orig[t + 1],
            g.orig[t]
        )));
    }
    let mut items = Vec::with_capacity(g.input.len() + g.output.len());
    let mut t = 0;
    for (p, &a) in g.input.iter().enumerate() {
        items.push(Item::In(a));
        while t < g.orig.len() && g.orig[t] == p + 1 {
            items.push(Item::Out(g.output[t]));
            t += 1;
        }
    }
    Ok(InterleavedWord { items })
}

pub fn deinterleave(w: &InterleavedWord) -> Result<OriginGraph> {
    let mut g = OriginGraph {
        input: Vec::new(),
        output: Vec::new(),
        orig: Vec::new(),
    };
    for &it in &w.items {
        match it {
            Item::In(a) => g.input.push(a),
            Item::Out(_) if g.input.is_empty() => {
                return Err(Error::NotInterleavable(
                    "output letter before any input letter".into(),
                ))
            }
            Item::Out(b) => {
                g.output.push(b);
                g.orig.push(g.input.len());
            }
        }
    }
    g.validate()?;
    Ok(g)
}

/// Letters `(top, bottom)` over `Σ ∪ Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Pairs {
    sigma: Alphabet,
    gamma: Alphabet,
}

impl Pairs {
    fn size(&self) -> usize {
        self.sigma.len() + self.gamma.len()
    }

    fn index(&self, it: Item) -> usize {
        match it {
            Item::In(a) => a,
            Item::Out(b) => self.sigma.len() + b,
        }
    }

    fn item(&self, i: usize) -> Item {
        if i < self.sigma.len() {
            Item::In(i)
        } else {
            Item::Out(i - self.sigma.len())
        }
    }

    fn letter(&self, top: Item, bottom: Item) -> u32 {
        (self.index(top) * self.size() + self.index(bottom)) as u32
    }

    fn parse_item(&self, name: &str) -> Result<Item> {
        if self.sigma.contains(name) {
            Ok(Item::In(self.sigma.symbol(name)?))
        } else {
            Ok(Item::Out(self.gamma.symbol(name)?))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Regex {
    Empty,
    Pair(Item, Item),
    Cat(Box<Regex>, Box<Regex>),
    Alt(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

struct RegexParser<'a> {
    pairs: &'a Pairs,
    tokens: Vec<(usize, String)>,
    pos: usize,
}

impl RegexParser<'_> {
    fn tokenize(text: &str) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        let mut cur = String::new();
        let mut start = 0;
        for (i, c) in text.char_indices() {
            if c.is_whitespace() || "()+*".contains(c) {
                if !cur.is_empty() {
                    out.push((start, std::mem::take(&mut cur)));
                }
                if !c.is_whitespace() {
                    out.push((i, c.to_string()));
                }
            } else {
                if cur.is_empty() {
                    start = i;
                }
                cur.push(c);
            }
        }
        if !cur.is_empty() {
            out.push((start, cur));
        }
        out
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let column = self.tokens.get(self.pos).map_or(0, |t| t.0) + 1;
        Error::parse(1, column, message)
    }

    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(|t| t.1.as_str())
    }

    fn alt(&mut self) -> Result<Regex> {
        let mut r = self.cat()?;
        while self.peek() == Some("+") {
            self.pos += 1;
            r = Regex::Alt(Box::new(r), Box::new(self.cat()?));
        }
        Ok(r)
    }

    fn cat(&mut self) -> Result<Regex> {
        let mut r = self.star()?;
        while matches!(self.peek(), Some(t) if t != "+" && t != ")") {
            r = Regex::Cat(Box::new(r), Box::new(self.star()?));
        }
        Ok(r)
    }

    fn star(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some("*") {
            self.pos += 1;
            r = Regex::Star(Box::new(r));
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            Some("(") => {
                self.pos += 1;
                let r = if self.peek() == Some(")") {
                    Regex::Empty
                } else {
                    self.alt()?
                };
                if self.peek() != Some(")") {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some("ε") => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            Some(tok) if tok.contains('/') => {
                let (a, b) = tok.split_once('/').expect("checked");
                let top = self
                    .pairs
                    .parse_item(a)
                    .map_err(|e| self.err(e.to_string()))?;
                let bottom = self
                    .pairs
                    .parse_item(b)
                    .map_err(|e| self.err(e.to_string()))?;
                self.pos += 1;
                Ok(Regex::Pair(top, bottom))
            }
            Some(tok) => Err(self.err(format!("expected a pair `top/bottom`, found `{tok}`"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Glushkov automaton: state 0 is initial, state `p` is the p-th letter
/// occurrence of the expression.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Glushkov {
    finals: Vec<bool>,
    /// `next[s]`: `(letter, target)`, sorted.
    next: Vec<Vec<(u32, usize)>>,
}

struct Positions {
    nullable: bool,
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
}

impl Glushkov {
    fn new(r: &Regex, pairs: &Pairs) -> Self {
        let mut letters = vec![u32::MAX];
        let mut follow: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        let top = Self::walk(r, pairs, &mut letters, &mut follow);
        let n = letters.len();
        let mut finals = vec![false; n];
        finals[0] = top.nullable;
        for &p in &top.last {
            finals[p] = true;
        }
        let mut next = vec![Vec::new(); n];
        next[0] = top.first.iter().map(|&p| (letters[p], p)).collect();
        for p in 1..n {
            next[p] = follow[p].iter().map(|&q| (letters[q], q)).collect();
        }
        for row in &mut next {
            row.sort_unstable();
        }
        Glushkov { finals, next }
    }

    fn walk(
        r: &Regex,
        pairs: &Pairs,
        letters: &mut Vec<u32>,
        follow: &mut Vec<BTreeSet<usize>>,
    ) -> Positions {
        match r {
            Regex::Empty => Positions {
                nullable: true,
                first: BTreeSet::new(),
                last: BTreeSet::new(),
            },
            Regex::Pair(a, b) => {
                let p = letters.len();
                letters.push(pairs.letter(*a, *b));
                follow.push(BTreeSet::new());
                Positions {
                    nullable: false,
                    first: [p].into(),
                    last: [p].into(),
                }
            }
            Regex::Cat(x, y) => {
                let x = Self::walk(x, pairs, letters, follow);
                let y = Self::walk(y, pairs, letters, follow);
                for &p in &x.last {
                    follow[p].extend(&y.first);
                }
                Positions {
                    nullable: x.nullable && y.nullable,
                    first: if x.nullable {
                        &x.first | &y.first
                    } else {
                        x.first
                    },
                    last: if y.nullable {
                        &x.last | &y.last
                    } else {
                        y.last
                    },
                }
            }
            Regex::Alt(x, y) => {
                let x = Self::walk(x, pairs, letters, follow);
                let y = Self::walk(y, pairs, letters, follow);
                Positions {
                    nullable: x.nullable || y.nullable,
                    first: &x.first | &y.first,
                    last: &x.last | &y.last,
                }
            }
            Regex::Star(x) => {
                let x = Self::walk(x, pairs, letters, follow);
                for &p in &x.last {
                    follow[p].extend(&x.first);
                }
                Positions {
                    nullable: true,
                    first: x.first,
                    last: x.last,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Acceptor {
    Glushkov(Glushkov),
    Shift(usize),
}

/// State of an acceptor after some prefix of pair letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AcceptorState {
    /// Reachable Glushkov states, sorted.
    Set(Vec<usize>),
    /// Shift acceptor: input letters read by the top word but not yet by
    /// the bottom one, and outputs emitted by the bottom word but not yet by
    /// the top one, each with the number of input letters the top word
    /// has read since the bottom one emitted it.
    Queues(VecDeque<Symbol>, VecDeque<(Symbol, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalResync {
    pairs: Pairs,
    acceptor: Acceptor,
    source: String,
}

fn check_disjoint(sigma: &Alphabet, gamma: &Alphabet) -> Result<()> {
    if !sigma.disjoint(gamma) {
        let shared: Vec<&str> = sigma
            .names()
            .iter()
            .filter(|n| gamma.contains(n))
            .map(String::as_str)
            .collect();
        return Err(Error::AlphabetMismatch(format!(
            "input and output alphabets share {}; rename the output letters (e.g. `{}'`)",
            shared.join(", "),
            shared[0]
        )));
    }
    Ok(())
}

impl RationalResync {
    pub fn from_regex(sigma: &Alphabet, gamma: &Alphabet, text: &str) -> Result<Self> {
        check_disjoint(sigma, gamma)?;
        let pairs = Pairs {
            sigma: sigma.clone(),
            gamma: gamma.clone(),
        };
        let mut p = RegexParser {
            pairs: &pairs,
            tokens: RegexParser::tokenize(text),
            pos: 0,
        };
        let r = p.alt()?;
        if p.pos < p.tokens.len() {
            return Err(p.err("unexpected token"));
        }
        let acceptor = Acceptor::Glushkov(Glushkov::new(&r, &pairs));
        Ok(RationalResync {
            pairs,
            acceptor,
            source: format!("regex: {}", text.trim()),
        })
    }

    pub fn sigma(&self) -> &Alphabet {
        &self.pairs.sigma
    }

    pub fn gamma(&self) -> &Alphabet {
        &self.pairs.gamma
    }

    pub fn start(&self) -> AcceptorState {
        match self.acceptor {
            Acceptor::Glushkov(_) => AcceptorState::Set(vec![0]),
            Acceptor::Shift(_) => AcceptorState::Queues(VecDeque::new(), VecDeque::new()),
        }
    }

    /// Reads the pair letter `top/bottom`; `None` once no run survives.
    pub fn step(&self, s: &AcceptorState, top: Item, bottom: Item) -> Option<AcceptorState> {
        match (&self.acceptor, s) {
            (Acceptor::Glushkov(g), AcceptorState::Set(set)) => {
                let l = self.pairs.letter(top, bottom);
                let mut next: Vec<usize> = set
                    .iter()
                    .flat_map(|&q| g.next[q].iter().filter(|e| e.0 == l).map(|e| e.1))
                    .collect();
                next.sort_unstable();
                next.dedup();
                (!next.is_empty()).then_some(AcceptorState::Set(next))
            }
            (&Acceptor::Shift(k), AcceptorState::Queues(ins, outs)) => {
                shift_step(k, ins, outs, top, bottom)
            }
            _ => None,
        }
    }

    pub fn accepting(&self, s: &AcceptorState) -> bool {
        match (&self.acceptor, s) {
            (Acceptor::Glushkov(g), AcceptorState::Set(set)) => set.iter().any(|&q| g.finals[q]),
            (Acceptor::Shift(_), AcceptorState::Queues(ins, outs)) => {
                ins.is_empty() && outs.is_empty()
            }
            _ => false,
        }
    }

    pub fn accepts(&self, top: &InterleavedWord, bottom: &InterleavedWord) -> bool {
        if top.len() != bottom.len() {
            return false;
        }
        let mut s = self.start();
        for (&a, &b) in top.items.iter().zip(&bottom.items) {
            match self.step(&s, a, b) {
                Some(n) => s = n,
                None => return false,
            }
        }
        self.accepting(&s)
    }

    pub fn to_text(&self) -> String {
        format!(
            "sigma: {}\ngamma: {}\n{}\n",
            self.pairs.sigma.names().join(" "),
            self.pairs.gamma.names().join(" "),
            self.source
        )
    }

    /// Reads the format of [`RationalResync::to_text`]: keys `sigma`,
    /// `gamma`, then `regex` or `shift`.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut sigma, mut gamma, mut body) = (None, None, None);
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(i + 1, 1, "expected `key: value`"))?;
            let value = value.trim();
            match key.trim() {
                "sigma" => sigma = Some(Alphabet::new(value.split_whitespace())),
                "gamma" => gamma = Some(Alphabet::new(value.split_whitespace())),
                "regex" | "shift" => {
                    body = Some((i + 1, key.trim().to_string(), value.to_string()))
                }
                other => return Err(Error::parse(i + 1, 1, format!("unknown key `{other}`"))),
            }
        }
        let sigma = sigma.ok_or_else(|| Error::parse(1, 1, "missing `sigma`"))?;
        let gamma = gamma.ok_or_else(|| Error::parse(1, 1, "missing `gamma`"))?;
        let (line, key, value) =
            body.ok_or_else(|| Error::parse(1, 1, "missing `regex` or `shift`"))?;
        if key == "shift" {
            let k = value
                .parse()
                .map_err(|_| Error::parse(line, 1, format!("bad shift `{value}`")))?;
            return make_rational_shift(&sigma, &gamma, k);
        }
        RationalResync::from_regex(&sigma, &gamma, &value).map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            other => other,
        })
    }
}

fn shift_step(
    k: usize,
    ins: &VecDeque<Symbol>,
    outs: &VecDeque<(Symbol, usize)>,
    top: Item,
    bottom: Item,
) -> Option<AcceptorState> {
    let (mut ins, mut outs) = (ins.clone(), outs.clone());
    // Both letters of a pair are simultaneous: pushes happen before pops.
    if let Item::In(a) = top {
        for o in &mut outs {
            o.1 += 1;
        }
        ins.push_back(a);
    }
    let mut fresh = None;
    if let Item::Out(b) = bottom {
        outs.push_back((b, 0));
        fresh = Some(outs.len() - 1);
    }
    // The top word may only emit what the bottom one already has.
    if let Item::Out(b) = top {
        match outs.pop_front() {
            Some((c, _)) if c == b => fresh = fresh.and_then(|i| i.checked_sub(1)),
            _ => return None,
        }
    }
    if let Item::In(a) = bottom {
        match ins.pop_front() {
            Some(c) if c == a => {}
            _ => return None,
        }
    }
    // Delay of a new bottom output: input letters the top word is ahead.
    if let Some(i) = fresh {
        outs[i].1 = ins.len();
    }
    if ins.len() > k || outs.iter().any(|o| o.1 > k) {
        return None;
    }
    Some(AcceptorState::Queues(ins, outs))
}

/// Pairs whose graphs share their words and where every output of the
/// bottom (target) graph has its origin at most `k` positions before the
/// one of the top (source) graph, as `y ≤ x ≤ y + k`.
pub fn make_rational_shift(sigma: &Alphabet, gamma: &Alphabet, k: usize) -> Result<RationalResync> {
    check_disjoint(sigma, gamma)?;
    Ok(RationalResync {
        pairs: Pairs {
            sigma: sigma.clone(),
            gamma: gamma.clone(),
        },
        acceptor: Acceptor::Shift(k),
        source: format!("shift: {k}"),
    })
}

/// Only diagonal letters.
pub fn make_rational_identity(sigma: &Alphabet, gamma: &Alphabet) -> Result<RationalResync> {
    let diag: Vec<String> = sigma
        .names()
        .iter()
        .chain(gamma.names())
        .map(|n| format!("{n}/{n}"))
        .collect();
    RationalResync::from_regex(sigma, gamma, &format!("({})*", diag.join(" + ")))
}

pub const BLOCK_REGEX: &str = "(b/b d/d)* ((a/a)(c/c + c/a (a/a)* a/c) (b/b d/d)(b/b d/d)*)* \
                               (a/a)(c/c + c/a (a/a)* a/c) (b/b d/d)*";

/// The block resynchronizer over `Σ = {a, b}`, `Γ = {c, d}`.
pub fn make_rational_block() -> Result<RationalResync> {
    RationalResync::from_regex(
        &Alphabet::new(["a", "b"]),
        &Alphabet::new(["c", "d"]),
        BLOCK_REGEX,
    )
}

pub fn rational_pair_accepts(
    r: &RationalResync,
    source: &OriginGraph,
    target: &OriginGraph,
) -> Result<bool> {
    if !source.same_words(target) {
        return Err(Error::WordMismatch);
    }
    let (top, bottom) = (interleave(source)?, interleave(target)?);
    assert_eq!(
        top.len(),
        bottom.len(),
        "same words give interleavings of equal length"
    );
    Ok(r.accepts(&top, &bottom))
}

/// A pair accepted by `r` within `max_len` letters whose words differ in
/// their input or output projections, if any.
pub fn well_formedness_violation(
    r: &RationalResync,
    max_len: usize,
) -> Option<(InterleavedWord, InterleavedWord)> {
    // Pending projection letters: positive side is the top word.
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct Node {
        s: AcceptorState,
        ins: (bool, VecDeque<Symbol>),
        outs: (bool, VecDeque<Symbol>),
        bad: bool,
    }
    fn push(q: &mut (bool, VecDeque<Symbol>), from_top: bool, x: Symbol) -> bool {
        if q.1.is_empty() || q.0 == from_top {
            q.0 = from_top;
            q.1.push_back(x);
            true
        } else {
            q.1.pop_front() == Some(x)
        }
    }
    let size = r.pairs.size();
    let mut layer: Vec<(Node, Vec<(Item, Item)>)> = vec![(
        Node {
            s: r.start(),
            ins: (true, VecDeque::new()),
            outs: (true, VecDeque::new()),
            bad: false,
        },
        Vec::new(),
    )];
    let mut seen: FxHashSet<Node> = FxHashSet::default();
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for (node, word) in &layer {
            if r.accepting(&node.s)
                && (node.bad || !node.ins.1.is_empty() || !node.outs.1.is_empty())
            {
                let (top, bottom) = word.iter().copied().unzip();
                return Some((
                    InterleavedWord { items: top },
                    InterleavedWord { items: bottom },
                ));
            }
            for a in 0..size {
                for b in 0..size {
                    let (top, bottom) = (r.pairs.item(a), r.pairs.item(b));
                    let Some(s) = r.step(&node.s, top, bottom) else {
                        continue;
                    };
                    let mut n = Node { s, ..node.clone() };
                    for (it, from_top) in [(top, true), (bottom, false)] {
                        let ok = match it {
                            Item::In(x) => push(&mut n.ins, from_top, x),
                            Item::Out(x) => push(&mut n.outs, from_top, x),
                        };
                        n.bad |= !ok;
                    }
                    if seen.insert(n.clone()) {
                        let mut w = word.clone();
                        w.push((top, bottom));
                        next.push((n, w));
                    }
                }
            }
        }
        layer = next;
    }
    None
}

struct PartnerDfs<'a> {
    t: &'a Transducer,
    r: &'a RationalResync,
    u: &'a [Symbol],
    v: &'a [Symbol],
    bottom: &'a [Item],
    seen: FxHashSet<(usize, usize, usize, AcceptorState)>,
    path: Vec<usize>,
}

impl PartnerDfs<'_> {
    /// Feeds `items` to the acceptor against the bottom word from `at`.
    fn feed(
        &self,
        s: &AcceptorState,
        items: impl Iterator<Item = Item>,
        at: usize,
    ) -> Option<AcceptorState> {
        let mut s = s.clone();
        for (i, it) in items.enumerate() {
            s = self.r.step(&s, it, *self.bottom.get(at + i)?)?;
        }
        Some(s)
    }

    fn dfs(&mut self, q: usize, pos: usize, j: usize, s: AcceptorState) -> bool {
        let n = self.u.len();
        if pos == n && j == self.v.len() && self.t.is_final(q) && self.r.accepting(&s) {
            return true;
        }
        if !self.seen.insert((q, pos, j, s.clone())) {
            return false;
        }
        let (t, u, v) = (self.t, self.u, self.v);
        // Letters `u_1..u_{pos+1}` are already written: ε-outputs here have
        // origin `pos + 1` and must come after that letter.
        let at = (pos + 1).min(n) + j;
        let x = (pos + 1).min(n);
        for tr in t.matching(q, Input::Eps, &v[j..]) {
            let len = tr.output.len();
            if let Some(s2) = self.feed(&s, tr.output.iter().map(|&b| Item::Out(b)), at) {
                self.path.extend(std::iter::repeat_n(x, len));
                if self.dfs(tr.to, pos, j + len, s2) {
                    return true;
                }
                self.path.truncate(j);
            }
        }
        if pos < n {
            for tr in t.matching(q, Input::Letter(u[pos]), &v[j..]) {
                let len = tr.output.len();
                let next = (pos + 1 < n).then(|| Item::In(u[pos + 1]));
                let items = tr.output.iter().map(|&b| Item::Out(b)).chain(next);
                if let Some(s2) = self.feed(&s, items, at) {
                    self.path.extend(std::iter::repeat_n(pos + 1, len));
                    if self.dfs(tr.to, pos + 1, j + len, s2) {
                        return true;
                    }
                    self.path.truncate(j);
                }
            }
        }
        false
    }
}

/// A graph of the one-way `t2` over the words of `target` that `r` relates
/// to `target`. The run is read together with the acceptor, which is fed
/// the interleaving as the run produces it.
pub fn rational_partner(
    t2: &Transducer,
    r: &RationalResync,
    target: &OriginGraph,
) -> Result<Option<OriginGraph>> {
    if t2.kind() != Kind::OneWay {
        return Err(Error::Unsupported(
            "rational resynchronizers need one-way transducers".into(),
        ));
    }
    let bottom = interleave(target)?;
    let mut d = PartnerDfs {
        t: t2,
        r,
        u: &target.input,
        v: &target.output,
        bottom: &bottom.items,
        seen: FxHashSet::default(),
        path: Vec::new(),
    };
    let Some(s0) = r.step(&r.start(), Item::In(target.input[0]), bottom.items[0]) else {
        return Ok(None);
    };
    for &q in t2.initial() {
        if d.dfs(q, 0, 0, s0.clone()) {
            return Ok(Some(OriginGraph {
                input: target.input.clone(),
                output: target.output.clone(),
                orig: d.path,
            }));
        }
    }
    Ok(None)
}

/// [`crate::containment::contains_upto`] with a rational resynchronizer.
pub fn contains_upto_rational(
    t1: &Transducer,
    t2: &Transducer,
    r: &RationalResync,
    max_input_len: usize,
    caps: RunCaps,
) -> Result<Verdict> {
    t1.check_alphabets(t2)?;
    for t in [t1, t2] {
        if t.kind() != Kind::OneWay {
            return Err(Error::Unsupported(
                "rational resynchronizers need one-way transducers".into(),
            ));
        }
    }
    if r.sigma() != t1.input_alphabet() || r.gamma() != t1.output_alphabet() {
        return Err(Error::AlphabetMismatch(
            "resynchronizer and transducers differ".into(),
        ));
    }
    let mut pruned = false;
    for len in 1..=max_input_len {
        let words: Vec<Vec<Symbol>> = t1.input_alphabet().words_of_len(len).collect();
        let outcomes = words
            .par_iter()
            .map(|u| -> Result<(bool, Option<OriginGraph>)> {
                let set = run_origin_graphs(t1, u, caps)?;
                for target in set.graphs {
                    if rational_partner(t2, r, &target)?.is_none() {
                        return Ok((set.pruned, Some(target)));
                    }
                }
                Ok((set.pruned, None))
            })
            .collect::<Result<Vec<_>>>()?;
        for (p, failed) in outcomes {
            pruned |= p;
            if let Some(target) = failed {
                let (partners, _) =
                    crate::transducer::PartnerSearch::new(t2, &target.input, &target.output)
                        .enumerate(crate::containment::PARTNER_LIMIT);
                return Ok(Verdict {
                    status: Status::Fails,
                    counterexample: Some(crate::containment::counterexample(target, partners)),
                    max_input_len,
                    caps,
                    pruned,
                });
            }
        }
    }
    Ok(Verdict {
        status: Status::HoldsOnSweep,
        counterexample: None,
        max_input_len,
        caps,
        pruned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> (Alphabet, Alphabet) {
        (Alphabet::new(["a", "b"]), Alphabet::new(["c", "d"]))
    }

    fn example() -> (OriginGraph, OriginGraph) {
        let (s, g) = ab();
        let top = InterleavedWord::parse("acaabdacabd", &s, &g).unwrap();
        let bottom = InterleavedWord::parse("aaacbdaacbd", &s, &g).unwrap();
        (deinterleave(&top).unwrap(), deinterleave(&bottom).unwrap())
    }

    #[test]
    fn block_example() {
        let (s, g) = ab();
        let (src, tgt) = example();
        assert_eq!(interleave(&src).unwrap().render(&s, &g), "acaabdacabd");
        assert_eq!(src.orig, vec![1, 4, 5, 7]);
        assert_eq!(tgt.orig, vec![3, 4, 6, 7]);
        let r = make_rational_block().unwrap();
        assert!(rational_pair_accepts(&r, &src, &tgt).unwrap());
        let mut moved = tgt.clone();
        moved.orig[1] = 5;
        assert!(!rational_pair_accepts(&r, &src, &moved).unwrap());
    }

    #[test]
    fn identity_and_shift_zero() {
        let (s, g) = ab();
        let (src, tgt) = example();
        for r in [
            make_rational_identity(&s, &g).unwrap(),
            make_rational_shift(&s, &g, 0).unwrap(),
        ] {
            assert!(rational_pair_accepts(&r, &src, &src).unwrap());
            assert!(!rational_pair_accepts(&r, &src, &tgt).unwrap());
        }
    }

    #[test]
    fn shift_direction() {
        let (s, g) = ab();
        let (src, tgt) = example();
        // Target origins are later than the source ones here.
        assert!(
            !rational_pair_accepts(&make_rational_shift(&s, &g, 3).unwrap(), &src, &tgt).unwrap()
        );
        assert!(
            rational_pair_accepts(&make_rational_shift(&s, &g, 2).unwrap(), &tgt, &src).unwrap()
        );
        assert!(
            !rational_pair_accepts(&make_rational_shift(&s, &g, 1).unwrap(), &tgt, &src).unwrap()
        );
    }

    #[test]
    fn empty_output_and_errors() {
        let g = OriginGraph::new(vec![0, 1], vec![], vec![]).unwrap();
        assert_eq!(
            interleave(&g).unwrap().items,
            vec![Item::In(0), Item::In(1)]
        );
        let bad = OriginGraph::new(vec![0, 1], vec![0, 0], vec![2, 1]).unwrap();
        assert!(matches!(interleave(&bad), Err(Error::NotInterleavable(_))));
        let early = InterleavedWord {
            items: vec![Item::Out(0), Item::In(0)],
        };
        assert!(deinterleave(&early).is_err());
        let (s, _) = ab();
        assert!(make_rational_shift(&s, &s, 1).is_err());
    }

    #[test]
    fn well_formed() {
        let (s, g) = ab();
        assert!(well_formedness_violation(&make_rational_block().unwrap(), 10).is_none());
        assert!(well_formedness_violation(&make_rational_identity(&s, &g).unwrap(), 6).is_none());
        assert!(well_formedness_violation(&make_rational_shift(&s, &g, 2).unwrap(), 6).is_none());
        let broken = RationalResync::from_regex(&s, &g, "a/a c/d").unwrap();
        assert!(well_formedness_violation(&broken, 4).is_some());
    }

    #[test]
    fn parse_round_trip() {
        let r = make_rational_block().unwrap();
        assert_eq!(RationalResync::parse(&r.to_text()).unwrap(), r);
        let e = RationalResync::parse("sigma: a b\ngamma: c d\nregex: (a/a c/c\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let sh = RationalResync::parse("sigma: a\ngamma: c\nshift: 2\n").unwrap();
        assert_eq!(
            sh,
            make_rational_shift(&Alphabet::new(["a"]), &Alphabet::new(["c"]), 2).unwrap()
        );
    }
}
