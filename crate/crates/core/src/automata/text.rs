//! Textual automaton format.
//!
//! ```text
//! alphabet: a b
//! tracks: x y
//! states: 0 1
//! initial: 0
//! final: 1
//! 0 -- a[1 0] --> 1
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{StructuredAlphabet, StructuredNfa};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

pub fn parse_automaton(text: &str) -> Result<StructuredNfa> {
    let mut alphabet = None;
    let mut tracks: Vec<String> = Vec::new();
    let mut states: Vec<String> = Vec::new();
    let mut initial: Vec<String> = Vec::new();
    let mut finals: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        if let Some((from, rest)) = line.split_once("--") {
            let (label, to) = rest
                .split_once("-->")
                .ok_or_else(|| Error::parse(lineno, 1, "expected `-->`"))?;
            edges.push((
                lineno,
                from.trim().to_string(),
                label.trim().to_string(),
                to.trim().to_string(),
            ));
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(lineno, 1, "expected `key: value` or a transition"))?;
        let words: Vec<String> = value.split_whitespace().map(str::to_string).collect();
        match key.trim() {
            "alphabet" => alphabet = Some(Alphabet::new(words)),
            "tracks" => tracks = words,
            "states" => states = words,
            "initial" => initial = words,
            "final" => finals = words,
            other => return Err(Error::parse(lineno, 1, format!("unknown key `{other}`"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing `alphabet:`"))?;
    let sa = StructuredAlphabet::new(alphabet, tracks)?;
    let index: HashMap<&str, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let lookup = |name: &str, line: usize| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(line, 1, format!("unknown state `{name}`")))
    };
    let mut nfa = StructuredNfa::new(sa.clone(), states.len());
    for s in &initial {
        nfa.set_initial(lookup(s, 0)?);
    }
    for s in &finals {
        nfa.set_final(lookup(s, 0)?, true);
    }
    for (line, from, label, to) in edges {
        let letter = sa
            .parse_letter(&label)
            .map_err(|e| Error::parse(line, 1, e.to_string()))?;
        nfa.add_transition(lookup(&from, line)?, letter, lookup(&to, line)?);
    }
    Ok(nfa)
}

pub fn write_automaton(nfa: &StructuredNfa) -> String {
    let sa = nfa.alphabet();
    let mut out = String::new();
    let _ = writeln!(out, "alphabet: {}", sa.base().names().join(" "));
    let _ = writeln!(out, "tracks: {}", sa.tracks().join(" "));
    let states: Vec<String> = (0..nfa.num_states()).map(|s| s.to_string()).collect();
    let _ = writeln!(out, "states: {}", states.join(" "));
    let init: Vec<String> = nfa.initial().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "initial: {}", init.join(" "));
    let fin: Vec<String> = nfa.finals().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "final: {}", fin.join(" "));
    for s in 0..nfa.num_states() {
        for &(l, t) in nfa.transitions(s) {
            let _ = writeln!(out, "{s} -- {} --> {t}", sa.render_letter(l));
        }
    }
    out
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find("//") {
        Some(i) => &line[..i],
        None => line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "alphabet: a b\ntracks: x\nstates: s t\ninitial: s\nfinal: t\ns -- a[1] --> t\nt -- b[0] --> t\n";
        let n = parse_automaton(text).unwrap();
        assert_eq!(n.num_states(), 2);
        let again = parse_automaton(&write_automaton(&n)).unwrap();
        assert_eq!(n, again);
    }

    #[test]
    fn bad_bits_reported_with_line() {
        let text = "alphabet: a\ntracks: x\nstates: s\ninitial: s\nfinal: s\ns -- a[1 1] --> s\n";
        match parse_automaton(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
    }
}
