//! Turing machines, domino tiles and the transducers built from them.
//!
//! A configuration with tape `w`, head on cell `h` and state `q` is encoded as
//! `w[..h] q w[h..] #`. The head may sit on the `#`; the machine then reads a
//! blank, and the tape is first extended by an intermediate configuration
//! `w q B #` (right expansion). A left move from the first cell prepends a
//! blank in the same way (left expansion).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::text::strip_comment;
use crate::error::{Error, Result};
use crate::transducer::{Input, Kind, Move, Transducer};

/// Separator between configurations in the history word.
pub const SEP: &str = "#";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    /// Tape alphabet, blank first.
    tape: Vec<String>,
    initial: usize,
    finals: Vec<usize>,
    delta: BTreeMap<(usize, usize), (usize, usize, Move)>,
}

impl TuringMachine {
    /// Parses the textual format:
    ///
    /// ```text
    /// states: q0 q1 q2
    /// alphabet: B a b      // blank first
    /// initial: q0
    /// final: q2
    /// q0,B -> q1,a,R
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut states: Option<Vec<String>> = None;
        let mut tape: Option<Vec<String>> = None;
        let mut initial = None;
        let mut finals = Vec::new();
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some((lhs, rhs)) = line.split_once("->") {
                rules.push((lineno, lhs.trim().to_string(), rhs.trim().to_string()));
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| {
                Error::parse(lineno, 1, "expected `key: value` or a rule `p,a -> q,b,D`")
            })?;
            let words: Vec<String> = value.split_whitespace().map(String::from).collect();
            match key.trim() {
                "states" => states = Some(words),
                "alphabet" => tape = Some(words),
                "initial" => initial = Some((lineno, value.trim().to_string())),
                "final" => finals.extend(words.into_iter().map(|w| (lineno, w))),
                other => return Err(Error::parse(lineno, 1, format!("unknown key `{other}`"))),
            }
        }
        let states = states.ok_or_else(|| Error::parse(1, 1, "missing `states:`"))?;
        let tape = tape.ok_or_else(|| Error::parse(1, 1, "missing `alphabet:`"))?;
        if tape.is_empty() {
            return Err(Error::parse(1, 1, "the tape alphabet needs a blank"));
        }
        let state_of = |line: usize, name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::parse(line, 1, format!("unknown state `{name}`")))
        };
        let letter_of = |line: usize, name: &str| {
            tape.iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::parse(line, 1, format!("unknown tape letter `{name}`")))
        };
        let (line, name) = initial.ok_or_else(|| Error::parse(1, 1, "missing `initial:`"))?;
        let initial = state_of(line, &name)?;
        let finals = finals
            .iter()
            .map(|(line, f)| state_of(*line, f))
            .collect::<Result<Vec<_>>>()?;
        let mut delta = BTreeMap::new();
        for (line, lhs, rhs) in rules {
            let l: Vec<&str> = lhs.split(',').map(str::trim).collect();
            let r: Vec<&str> = rhs.split(',').map(str::trim).collect();
            if l.len() != 2 || r.len() != 3 {
                return Err(Error::parse(
                    line,
                    1,
                    "rules read `p,a -> q,b,L` or `p,a -> q,b,R`",
                ));
            }
            let dir = match r[2] {
                "L" => Move::Left,
                "R" => Move::Right,
                d => {
                    return Err(Error::parse(
                        line,
                        1,
                        format!("direction `{d}` is neither L nor R"),
                    ))
                }
            };
            let key = (state_of(line, l[0])?, letter_of(line, l[1])?);
            let val = (state_of(line, r[0])?, letter_of(line, r[1])?, dir);
            if delta.insert(key, val).is_some() {
                return Err(Error::parse(
                    line,
                    1,
                    format!("second rule for ({}, {})", l[0], l[1]),
                ));
            }
        }
        TuringMachine::new(states, tape, initial, finals, delta)
    }

    pub fn new(
        states: Vec<String>,
        tape: Vec<String>,
        initial: usize,
        finals: Vec<usize>,
        delta: BTreeMap<(usize, usize), (usize, usize, Move)>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidTransducer(m));
        let mut names: Vec<&String> = states.iter().chain(&tape).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return bad(format!(
                "`{}` is used twice among states and tape letters",
                w[0]
            ));
        }
        if names.iter().any(|n| n.as_str() == SEP) {
            return bad(format!("`{SEP}` is reserved"));
        }
        if tape.is_empty() || initial >= states.len() || finals.iter().any(|&f| f >= states.len()) {
            return bad("malformed machine".into());
        }
        for (&(p, a), &(q, b, _)) in &delta {
            if p >= states.len() || q >= states.len() || a >= tape.len() || b >= tape.len() {
                return bad("transition outside the machine".into());
            }
        }
        Ok(TuringMachine {
            states,
            tape,
            initial,
            finals,
            delta,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn tape_alphabet(&self) -> &[String] {
        &self.tape
    }

    pub fn blank(&self) -> &str {
        &self.tape[0]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn delta(&self, state: usize, letter: usize) -> Option<(usize, usize, Move)> {
        self.delta.get(&(state, letter)).copied()
    }

    /// Γ = A ∪ Q ∪ {#}.
    pub fn gamma(&self) -> Alphabet {
        Alphabet::new(
            self.tape
                .iter()
                .chain(&self.states)
                .cloned()
                .chain([SEP.to_string()]),
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "states: {}", self.states.join(" "));
        let _ = writeln!(s, "alphabet: {}", self.tape.join(" "));
        let _ = writeln!(s, "initial: {}", self.states[self.initial]);
        let finals: Vec<&str> = self
            .finals
            .iter()
            .map(|&f| self.states[f].as_str())
            .collect();
        let _ = writeln!(s, "final: {}", finals.join(" "));
        for (&(p, a), &(q, b, d)) in &self.delta {
            let d = if d == Move::Left { "L" } else { "R" };
            let _ = writeln!(
                s,
                "{},{} -> {},{},{d}",
                self.states[p], self.tape[a], self.states[q], self.tape[b]
            );
        }
        s
    }
}

/// A configuration: tape contents, head cell (may equal the tape length,
/// meaning the head reads the `#`) and state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub tape: Vec<usize>,
    pub head: usize,
    pub state: usize,
}

enum Step {
    Expanded,
    Moved,
    Stuck,
}

impl Configuration {
    fn start(m: &TuringMachine) -> Self {
        Configuration {
            tape: Vec::new(),
            head: 0,
            state: m.initial,
        }
    }

    /// Cells of the encoding, state included, `#` excluded.
    pub fn len(&self) -> usize {
        self.tape.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn encode(&self, m: &TuringMachine, gamma: &Alphabet, out: &mut Vec<Symbol>) {
        let sym = |n: &str| gamma.symbol(n).expect("Γ covers the machine");
        for (i, &a) in self.tape.iter().enumerate() {
            if i == self.head {
                out.push(sym(&m.states[self.state]));
            }
            out.push(sym(&m.tape[a]));
        }
        if self.head == self.tape.len() {
            out.push(sym(&m.states[self.state]));
        }
        out.push(sym(SEP));
    }

    /// One step of the tile semantics: either an expansion (the head reads
    /// `#`, or moves left off the first cell) or a machine move.
    fn step(&mut self, m: &TuringMachine) -> Step {
        if self.head == self.tape.len() {
            if m.delta(self.state, 0).is_none() {
                return Step::Stuck;
            }
            self.tape.push(0);
            return Step::Expanded;
        }
        let Some((q, b, d)) = m.delta(self.state, self.tape[self.head]) else {
            return Step::Stuck;
        };
        if d == Move::Left && self.head == 0 {
            // #pa -> #qBb
            self.tape.insert(0, 0);
            self.tape[1] = b;
            self.state = q;
            return Step::Moved;
        }
        self.tape[self.head] = b;
        self.state = q;
        match d {
            Move::Right => self.head += 1,
            Move::Left => self.head -= 1,
        }
        Step::Moved
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HistoryStatus {
    Halted,
    StillRunning,
    CellCapHit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct History {
    /// Over [`TuringMachine::gamma`].
    pub word: Vec<Symbol>,
    pub configs: usize,
    pub status: HistoryStatus,
}

/// Prefix of the computation history, at most `max_configs` encoded
/// configurations of at most `max_cells` cells each.
pub fn history(m: &TuringMachine, max_configs: usize, max_cells: usize) -> Result<History> {
    if max_configs == 0 || max_cells == 0 {
        return Err(Error::CapsInsufficient("caps must be positive".into()));
    }
    let gamma = m.gamma();
    let mut c = Configuration::start(m);
    let mut word = Vec::new();
    let mut configs = 0;
    loop {
        if c.len() > max_cells {
            return Ok(History {
                word,
                configs,
                status: HistoryStatus::CellCapHit,
            });
        }
        c.encode(m, &gamma, &mut word);
        configs += 1;
        let mut next = c.clone();
        if let Step::Stuck = next.step(m) {
            return Ok(History {
                word,
                configs,
                status: HistoryStatus::Halted,
            });
        }
        if configs == max_configs {
            return Ok(History {
                word,
                configs,
                status: HistoryStatus::StillRunning,
            });
        }
        c = next;
    }
}

/// Largest configuration (in cells, state included) seen within
/// `max_steps` machine moves. Expansions are not moves.
pub fn tape_probe(m: &TuringMachine, max_steps: usize) -> usize {
    let mut c = Configuration::start(m);
    let mut best = c.len();
    let mut steps = 0;
    while steps < max_steps {
        match c.step(m) {
            Step::Stuck => break,
            Step::Expanded => {
                // The blank is only worth counting if a move follows.
                let mut probe = c.clone();
                if let Step::Stuck = probe.step(m) {
                    break;
                }
            }
            Step::Moved => steps += 1,
        }
        best = best.max(c.len());
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TileKind {
    Copy,
    Right,
    RightExpansion,
    Left,
    LeftExpansion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tile {
    /// `i1`, `i2`, ...
    pub name: String,
    pub top: Vec<Symbol>,
    pub bottom: Vec<Symbol>,
    pub kind: TileKind,
}

#[derive(Clone, Debug)]
pub struct TileSet {
    machine: TuringMachine,
    sigma: Alphabet,
    gamma: Alphabet,
    tiles: Vec<Tile>,
    /// Σ symbol to tile index.
    by_symbol: Vec<usize>,
}

/// The domino tiles of `m`, without a start tile.
pub fn build_tiles(m: &TuringMachine) -> TileSet {
    let gamma = m.gamma();
    let g = |n: &str| gamma.symbol(n).expect("Γ covers the machine");
    let st = |q: usize| g(&m.states[q]);
    let tp = |a: usize| g(&m.tape[a]);
    let blank = tp(0);
    let sep = g(SEP);
    let mut raw: Vec<(Vec<Symbol>, Vec<Symbol>, TileKind)> = Vec::new();
    for a in 0..m.tape.len() {
        raw.push((vec![tp(a)], vec![tp(a)], TileKind::Copy));
    }
    raw.push((vec![sep], vec![sep], TileKind::Copy));
    for (&(p, a), &(q, b, d)) in &m.delta {
        if d == Move::Right {
            raw.push((vec![st(p), tp(a)], vec![tp(b), st(q)], TileKind::Right));
        }
    }
    for q in 0..m.states.len() {
        raw.push((
            vec![st(q), sep],
            vec![st(q), blank, sep],
            TileKind::RightExpansion,
        ));
    }
    for (&(p, a), &(q, b, d)) in &m.delta {
        if d == Move::Left {
            for c in 0..m.tape.len() {
                raw.push((
                    vec![tp(c), st(p), tp(a)],
                    vec![st(q), tp(c), tp(b)],
                    TileKind::Left,
                ));
            }
        }
    }
    for (&(p, a), &(q, b, d)) in &m.delta {
        if d == Move::Left {
            raw.push((
                vec![sep, st(p), tp(a)],
                vec![sep, st(q), blank, tp(b)],
                TileKind::LeftExpansion,
            ));
        }
    }
    let tiles: Vec<Tile> = raw
        .into_iter()
        .enumerate()
        .map(|(i, (top, bottom, kind))| Tile {
            name: format!("i{}", i + 1),
            top,
            bottom,
            kind,
        })
        .collect();
    let sigma = Alphabet::new(tiles.iter().map(|t| t.name.clone()));
    let mut by_symbol = vec![0; tiles.len()];
    for (i, t) in tiles.iter().enumerate() {
        by_symbol[sigma.symbol(&t.name).expect("tile names are letters")] = i;
    }
    TileSet {
        machine: m.clone(),
        sigma,
        gamma,
        tiles,
        by_symbol,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DominoCheck {
    /// `u_λ ⊑ v_λ` fails, nothing to check.
    Vacuous,
    Holds,
    Violated {
        u: Vec<Symbol>,
        v: Vec<Symbol>,
        history: Vec<Symbol>,
    },
}

impl DominoCheck {
    pub fn is_ok(&self) -> bool {
        !matches!(self, DominoCheck::Violated { .. })
    }
}

impl TileSet {
    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    /// Input alphabet of the constructed transducers: the tile names.
    pub fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    pub fn gamma(&self) -> &Alphabet {
        &self.gamma
    }

    /// In construction order (`i1` first).
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile(&self, sym: Symbol) -> &Tile {
        &self.tiles[self.by_symbol[sym]]
    }

    /// Σ symbol of the tile called `name`.
    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.sigma.symbol(name)
    }

    /// The tile with this top and bottom, written compactly over Γ names
    /// separated by spaces.
    pub fn find(&self, top: &str, bottom: &str) -> Option<Symbol> {
        let top = self.gamma.parse_word(top).ok()?;
        let bottom = self.gamma.parse_word(bottom).ok()?;
        let t = self
            .tiles
            .iter()
            .find(|t| t.top == top && t.bottom == bottom)?;
        self.sigma.symbol(&t.name).ok()
    }

    pub fn start(&self) -> Vec<Symbol> {
        let g = |n: &str| self.gamma.symbol(n).expect("Γ covers the machine");
        vec![g(&self.machine.states[self.machine.initial]), g(SEP)]
    }

    /// `u_λ`.
    pub fn top_word(&self, lambda: &[Symbol]) -> Vec<Symbol> {
        lambda
            .iter()
            .flat_map(|&i| self.tile(i).top.iter().copied())
            .collect()
    }

    /// `v_λ = q0# v_{i1} ... v_{ik}`.
    pub fn bottom_word(&self, lambda: &[Symbol]) -> Vec<Symbol> {
        let mut v = self.start();
        v.extend(
            lambda
                .iter()
                .flat_map(|&i| self.tile(i).bottom.iter().copied()),
        );
        v
    }

    /// Two-row table, one column per tile.
    pub fn table(&self) -> String {
        let render = |w: &[Symbol]| w.iter().map(|&s| self.gamma.name(s)).collect::<String>();
        let cols: Vec<[String; 3]> = self
            .tiles
            .iter()
            .map(|t| [t.name.clone(), render(&t.top), render(&t.bottom)])
            .collect();
        let mut rows = [
            String::from("     "),
            String::from("top  "),
            String::from("bot  "),
        ];
        for col in &cols {
            let w = col.iter().map(|s| s.chars().count()).max().unwrap_or(0);
            for (row, cell) in rows.iter_mut().zip(col) {
                let _ = write!(row, "| {cell:<w$} ");
            }
        }
        rows.iter()
            .map(|r| r.trim_end().to_string() + "\n")
            .collect()
    }
}

/// Tests the domino property on `λ`: if `u_λ ⊑ v_λ` then `v_λ ⊑ Hist_M`.
pub fn check_domino_lemma(tiles: &TileSet, lambda: &[Symbol]) -> Result<DominoCheck> {
    if let Some(&bad) = lambda.iter().find(|&&i| i >= tiles.sigma.len()) {
        return Err(Error::UnknownSymbol(format!("tile #{bad}")));
    }
    let u = tiles.top_word(lambda);
    let v = tiles.bottom_word(lambda);
    if !v.starts_with(&u) {
        return Ok(DominoCheck::Vacuous);
    }
    // Every configuration takes at least two letters of v.
    let h = history(&tiles.machine, v.len() + 1, v.len() + 1)?;
    if h.word.len() < v.len() && h.status != HistoryStatus::Halted {
        return Err(Error::CapsInsufficient(format!(
            "history stopped ({:?}) after {} letters, {} needed",
            h.status,
            h.word.len(),
            v.len()
        )));
    }
    if h.word.starts_with(&v) {
        Ok(DominoCheck::Holds)
    } else {
        Ok(DominoCheck::Violated {
            u,
            v,
            history: h.word,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominoSweep {
    pub max_len: usize,
    /// Sequences with `u_λ ⊑ v_λ`.
    pub non_vacuous: usize,
    /// Shortest violation found, as tile symbols.
    pub violation: Option<Vec<Symbol>>,
}

/// Checks the domino property on every `λ` with `|λ| ≤ max_len`. A prefix
/// whose two words are incomparable has no non-vacuous extension, so the
/// search drops it.
pub fn domino_sweep(tiles: &TileSet, max_len: usize) -> Result<DominoSweep> {
    let longest = tiles
        .tiles
        .iter()
        .map(|t| t.bottom.len())
        .max()
        .unwrap_or(0);
    let need = 2 + max_len * longest;
    let h = history(&tiles.machine, need + 1, need + 1)?;
    let hist_ok = |v: &[Symbol]| {
        if h.word.starts_with(v) {
            Ok(true)
        } else if h.word.len() < v.len()
            && h.status != HistoryStatus::Halted
            && v.starts_with(&h.word)
        {
            Err(Error::CapsInsufficient(format!(
                "history stopped ({:?})",
                h.status
            )))
        } else {
            Ok(false)
        }
    };
    let mut sweep = DominoSweep {
        max_len,
        non_vacuous: 0,
        violation: None,
    };
    // Breadth first, so the first violation is a shortest one.
    let mut layer: Vec<(Vec<Symbol>, Vec<Symbol>, Vec<Symbol>)> =
        vec![(Vec::new(), Vec::new(), tiles.start())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (lambda, u, v) in &layer {
            for (i, tile) in letters(tiles) {
                let mut u2 = u.clone();
                u2.extend_from_slice(&tile.top);
                let mut v2 = v.clone();
                v2.extend_from_slice(&tile.bottom);
                let mut l2 = lambda.clone();
                l2.push(i);
                if v2.starts_with(&u2) {
                    sweep.non_vacuous += 1;
                    if !hist_ok(&v2)? {
                        sweep.violation = Some(l2);
                        return Ok(sweep);
                    }
                } else if !u2.starts_with(&v2) {
                    continue;
                }
                next.push((l2, u2, v2));
            }
        }
        layer = next;
    }
    Ok(sweep)
}

/// `W_i`: the nonempty words of length at most `|top|` that are not a
/// prefix of `top`.
pub fn fail_words(top: &[Symbol], gamma_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<Symbol>> = vec![Vec::new()];
    for _ in 0..top.len() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..gamma_len {
                let mut w2 = w.clone();
                w2.push(g);
                if !top.starts_with(&w2) {
                    out.push(w2.clone());
                }
                next.push(w2);
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

fn letters(tiles: &TileSet) -> Vec<(Symbol, &Tile)> {
    tiles.sigma.symbols().map(|s| (s, tiles.tile(s))).collect()
}

fn loop_all(t: &mut Transducer, state: &str, gamma: usize) -> Result<()> {
    for g in 0..gamma {
        t.add(state, Input::Eps, &[g], None, state)?;
    }
    Ok(())
}

fn add_tup(t: &mut Transducer, tiles: &TileSet, prefix: &str) -> Result<()> {
    let (p0, fail, p1) = (
        format!("{prefix}p0"),
        format!("{prefix}p_fail"),
        format!("{prefix}p1"),
    );
    let gamma = tiles.gamma.len();
    t.set_final(&fail);
    t.set_final(&p1);
    for (i, tile) in letters(tiles) {
        t.add(&p0, Input::Letter(i), &tile.top, None, &p0)?;
        for w in fail_words(&tile.top, gamma) {
            t.add(&p0, Input::Letter(i), &w, None, &fail)?;
        }
        t.add(&fail, Input::Letter(i), &[], None, &fail)?;
    }
    loop_all(t, &fail, gamma)?;
    t.add(&p0, Input::Eps, &[], None, &p1)?;
    loop_all(t, &p1, gamma)
}

/// `T_up`: outputs `u_λ` and then anything, or deviates from `u_λ` within
/// some tile and then outputs anything.
pub fn build_tup(tiles: &TileSet) -> Result<Transducer> {
    let mut t = Transducer::new(Kind::OneWay, tiles.sigma.clone(), tiles.gamma.clone());
    t.set_initial("p0");
    add_tup(&mut t, tiles, "")?;
    Ok(t)
}

/// `T_down`: outputs `v_λ`, each `v_i` with origin on its tile.
pub fn build_tdown(tiles: &TileSet) -> Result<Transducer> {
    let mut t = Transducer::new(Kind::OneWay, tiles.sigma.clone(), tiles.gamma.clone());
    t.set_initial("s0");
    t.set_final("s1");
    t.add("s0", Input::Eps, &tiles.start(), None, "s1")?;
    for (i, tile) in letters(tiles) {
        t.add("s1", Input::Letter(i), &tile.bottom, None, "s1")?;
    }
    Ok(t)
}

/// `T'_up`: either `T_up`, or an arbitrary output with origin on the first
/// letter followed by silently reading the input.
pub fn build_tup_prime(tiles: &TileSet) -> Result<Transducer> {
    let mut t = Transducer::new(Kind::OneWay, tiles.sigma.clone(), tiles.gamma.clone());
    t.set_initial("q0");
    t.set_final("q2");
    t.add("q0", Input::Eps, &[], None, "q1")?;
    loop_all(&mut t, "q1", tiles.gamma.len())?;
    for (i, _) in letters(tiles) {
        t.add("q1", Input::Letter(i), &[], None, "q2")?;
        t.add("q2", Input::Letter(i), &[], None, "q2")?;
    }
    t.add("q0", Input::Eps, &[], None, "up.p0")?;
    add_tup(&mut t, tiles, "up.")?;
    Ok(t)
}

/// `T'_down = T_down ∪ T_up`.
pub fn build_tdown_prime(tiles: &TileSet) -> Result<Transducer> {
    build_tdown(tiles)?.disjoint_union(&build_tup(tiles)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{grow, halt2};

    fn render(tiles: &TileSet, w: &[Symbol]) -> String {
        w.iter().map(|&s| tiles.gamma().name(s)).collect()
    }

    fn example_lambda(tiles: &TileSet) -> Vec<Symbol> {
        [
            ("q0 #", "q0 B #"),
            ("q0 B", "a q1"),
            ("#", "#"),
            ("a", "a"),
            ("q1 #", "q1 B #"),
            ("a q1 B", "q2 a b"),
            ("#", "#"),
        ]
        .iter()
        .map(|(t, b)| tiles.find(t, b).expect("tile present"))
        .collect()
    }

    #[test]
    fn halt2_history() {
        let m = halt2();
        let h = history(&m, 100, 100).unwrap();
        let g = m.gamma();
        let s: String = h.word.iter().map(|&x| g.name(x)).collect();
        assert_eq!(s, "q0#q0B#aq1#aq1B#q2ab#");
        assert_eq!(h.status, HistoryStatus::Halted);
        assert_eq!(h.configs, 5);
    }

    #[test]
    fn caps_are_reported() {
        let h = history(&grow(), 3, 100).unwrap();
        assert_eq!(h.status, HistoryStatus::StillRunning);
        assert_eq!(h.configs, 3);
        let h = history(&grow(), 100, 3).unwrap();
        assert_eq!(h.status, HistoryStatus::CellCapHit);
    }

    #[test]
    fn halt2_tiles() {
        let tiles = build_tiles(&halt2());
        for a in ["B", "a", "b", "#"] {
            assert!(tiles.find(a, a).is_some());
        }
        assert!(tiles.find("q0 B", "a q1").is_some());
        assert!(tiles.find("a q1 B", "q2 a b").is_some());
        assert!(tiles.find("# q1 B", "# q2 B b").is_some());
        for q in ["q0", "q1", "q2"] {
            assert!(tiles.find(&format!("{q} #"), &format!("{q} B #")).is_some());
        }
        // 4 copy, 1 right, 3 expansions, 3 left, 1 left expansion.
        assert_eq!(tiles.tiles().len(), 12);
        assert!(tiles.tiles().iter().all(|t| !t.top.is_empty()));
    }

    #[test]
    fn sweep_agrees_with_pointwise_check() {
        let tiles = build_tiles(&halt2());
        let sweep = domino_sweep(&tiles, 4).unwrap();
        let mut non_vacuous = 0;
        let mut bad = None;
        for len in 1..=4 {
            for l in tiles.sigma().words_of_len(len) {
                match check_domino_lemma(&tiles, &l).unwrap() {
                    DominoCheck::Vacuous => {}
                    DominoCheck::Holds => non_vacuous += 1,
                    DominoCheck::Violated { .. } => {
                        non_vacuous += 1;
                        bad.get_or_insert(l);
                    }
                }
            }
        }
        assert_eq!(sweep.non_vacuous, non_vacuous);
        assert_eq!(sweep.violation.is_some(), bad.is_some());
    }

    #[test]
    fn example_lambda_is_a_solution_prefix() {
        let tiles = build_tiles(&halt2());
        let l = example_lambda(&tiles);
        assert_eq!(render(&tiles, &tiles.top_word(&l)), "q0#q0B#aq1#aq1B#");
        assert_eq!(
            render(&tiles, &tiles.bottom_word(&l)),
            "q0#q0B#aq1#aq1B#q2ab#"
        );
        assert_eq!(check_domino_lemma(&tiles, &l).unwrap(), DominoCheck::Holds);
        let a = tiles.find("a", "a").unwrap();
        assert_eq!(
            check_domino_lemma(&tiles, &[a]).unwrap(),
            DominoCheck::Vacuous
        );
    }

    #[test]
    fn immediate_halt_breaks_the_expansion_tile() {
        let m = TuringMachine::parse("states: q0\nalphabet: B\ninitial: q0\nfinal: q0\n").unwrap();
        assert_eq!(tape_probe(&m, 10), 1);
        let h = history(&m, 10, 10).unwrap();
        assert_eq!((h.configs, h.status), (1, HistoryStatus::Halted));
        let tiles = build_tiles(&m);
        let e = tiles.find("q0 #", "q0 B #").unwrap();
        assert!(!check_domino_lemma(&tiles, &[e]).unwrap().is_ok());
    }

    #[test]
    fn probes() {
        assert_eq!(tape_probe(&halt2(), 2), 3);
        assert_eq!(tape_probe(&halt2(), 100), 3);
        assert_eq!(tape_probe(&grow(), 10), 11);
    }

    #[test]
    fn fail_words_of_q0b() {
        let tiles = build_tiles(&halt2());
        let g = tiles.gamma();
        let top = g.parse_word("q0 B").unwrap();
        let w = fail_words(&top, g.len());
        let has = |s: &str| w.contains(&g.parse_word(s).unwrap());
        assert!(has("q0 a") && has("#") && has("a B"));
        assert!(!has("q0") && !has("") && !has("q0 B"));
        let n = g.len();
        assert_eq!(w.len(), (n - 1) + (n * n - 1));
    }

    #[test]
    fn parse_errors_and_round_trip() {
        let m = halt2();
        assert_eq!(TuringMachine::parse(&m.to_text()).unwrap(), m);
        let err =
            TuringMachine::parse("states: q\nalphabet: B\ninitial: q\nq,B -> q,B,X\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(TuringMachine::parse("states: q B\nalphabet: B\ninitial: q\n").is_err());
        assert!(TuringMachine::parse(
            "states: q\nalphabet: B\ninitial: q\nq,B -> q,B,R\nq,B -> q,B,L\n"
        )
        .is_err());
    }

    #[test]
    fn table_has_three_rows() {
        let t = build_tiles(&halt2()).table();
        assert_eq!(t.lines().count(), 3);
        assert!(t.lines().nth(1).unwrap().contains("q0B"));
    }
}
