//! Transducer file format.
//!
//! ```text
//! kind: 1nt
//! input-alphabet: a b
//! output-alphabet: c d
//! states: p0 p1
//! initial: p0
//! final: p1
//! p0 -- a / eps --> p0
//! p0 -- eps / c d --> p1
//! ```
//!
//! Two-way transitions carry a direction: `p -- a / c, R --> q`; `<` and
//! `>` stand for the endmarkers ⊢ and ⊣.

use std::fmt::Write as _;

use super::{Input, Kind, Move, Transducer, Transition};
use crate::alphabet::Alphabet;
use crate::automata::text::strip_comment;
use crate::error::{Error, Result};

pub fn parse_transducer(text: &str) -> Result<Transducer> {
    let mut kind = None;
    let (mut sigma, mut gamma) = (None, None);
    let mut states = Vec::new();
    let mut initial = Vec::new();
    let mut finals = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        if let Some((from, rest)) = line.split_once(" -- ") {
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
            "kind" => {
                kind = Some(match value.trim() {
                    "1nt" => Kind::OneWay,
                    "2nt" => Kind::TwoWay,
                    other => {
                        return Err(Error::parse(
                            lineno,
                            key.len() + 2,
                            format!("unknown kind `{other}`"),
                        ))
                    }
                })
            }
            "input-alphabet" => sigma = Some(Alphabet::new(words)),
            "output-alphabet" => gamma = Some(Alphabet::new(words)),
            "states" => states = words,
            "initial" => initial = words,
            "final" => finals = words,
            other => return Err(Error::parse(lineno, 1, format!("unknown key `{other}`"))),
        }
    }
    let kind = kind.ok_or_else(|| Error::parse(1, 1, "missing `kind:`"))?;
    let sigma = sigma.ok_or_else(|| Error::parse(1, 1, "missing `input-alphabet:`"))?;
    let gamma = gamma.ok_or_else(|| Error::parse(1, 1, "missing `output-alphabet:`"))?;
    let mut t = Transducer::new(kind, sigma, gamma);
    for s in &states {
        t.state(s);
    }
    let known = |t: &Transducer, s: &str, line: usize| {
        if t.state_names().iter().any(|n| n == s) {
            Ok(())
        } else {
            Err(Error::parse(line, 1, format!("undeclared state `{s}`")))
        }
    };
    for s in &initial {
        known(&t, s, 1)?;
        t.set_initial(s);
    }
    for s in &finals {
        known(&t, s, 1)?;
        t.set_final(s);
    }
    for (line, from, label, to) in edges {
        known(&t, &from, line)?;
        known(&t, &to, line)?;
        let (input, rest) = label
            .split_once('/')
            .ok_or_else(|| Error::parse(line, 1, "expected `input / output`"))?;
        let (output, dir) = match (kind, rest.rsplit_once(',')) {
            (Kind::TwoWay, Some((o, d))) => {
                let d = match d.trim() {
                    "L" => Move::Left,
                    "R" => Move::Right,
                    other => {
                        return Err(Error::parse(
                            line,
                            1,
                            format!("unknown direction `{other}`"),
                        ))
                    }
                };
                (o.trim(), Some(d))
            }
            (Kind::TwoWay, None) => {
                return Err(Error::parse(
                    line,
                    1,
                    "two-way transition needs `, L` or `, R`",
                ))
            }
            (Kind::OneWay, _) => (rest.trim(), None),
        };
        let input = match input.trim() {
            "eps" => Input::Eps,
            "<" => Input::Begin,
            ">" => Input::End,
            a => Input::Letter(
                t.input_alphabet()
                    .symbol(a)
                    .map_err(|e| Error::parse(line, 1, e.to_string()))?,
            ),
        };
        let out = if output == "eps" {
            Vec::new()
        } else {
            t.output_alphabet()
                .parse_word(output)
                .map_err(|e| Error::parse(line, 1, e.to_string()))?
        };
        t.add(&from, input, &out, dir, &to)
            .map_err(|e| Error::parse(line, 1, e.to_string()))?;
    }
    Ok(t)
}

pub fn write_transducer(t: &Transducer) -> String {
    let mut s = String::new();
    let kind = match t.kind() {
        Kind::OneWay => "1nt",
        Kind::TwoWay => "2nt",
    };
    let _ = writeln!(s, "kind: {kind}");
    let _ = writeln!(
        s,
        "input-alphabet: {}",
        t.input_alphabet().names().join(" ")
    );
    let _ = writeln!(
        s,
        "output-alphabet: {}",
        t.output_alphabet().names().join(" ")
    );
    let _ = writeln!(s, "states: {}", t.state_names().join(" "));
    let init: Vec<&str> = t.initial().iter().map(|&q| t.state_name(q)).collect();
    let _ = writeln!(s, "initial: {}", init.join(" "));
    let fin: Vec<&str> = (0..t.num_states())
        .filter(|&q| t.is_final(q))
        .map(|q| t.state_name(q))
        .collect();
    let _ = writeln!(s, "final: {}", fin.join(" "));
    for tr in t.transitions() {
        let _ = writeln!(
            s,
            "{} -- {} --> {}",
            t.state_name(tr.from),
            label(t, tr),
            t.state_name(tr.to)
        );
    }
    s
}

/// `input / output[, D]` as written in transducer files.
pub(crate) fn label(t: &Transducer, tr: &Transition) -> String {
    let input = match tr.input {
        Input::Letter(a) => t.input_alphabet().name(a).to_string(),
        Input::Eps => "eps".into(),
        Input::Begin => "<".into(),
        Input::End => ">".into(),
    };
    let output = if tr.output.is_empty() {
        "eps".to_string()
    } else {
        tr.output
            .iter()
            .map(|&o| t.output_alphabet().name(o))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let dir = match tr.dir {
        Some(Move::Left) => ", L",
        Some(Move::Right) => ", R",
        None => "",
    };
    format!("{input} / {output}{dir}")
}
