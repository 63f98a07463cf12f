use std::fmt::Write as _;

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::text::strip_comment;
use crate::error::{Error, Result};

/// An input word, an output word and the origin (1-based input position)
/// of every output position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OriginGraph {
    pub input: Vec<Symbol>,
    pub output: Vec<Symbol>,
    pub orig: Vec<usize>,
}

impl OriginGraph {
    pub fn new(input: Vec<Symbol>, output: Vec<Symbol>, orig: Vec<usize>) -> Result<Self> {
        let g = OriginGraph {
            input,
            output,
            orig,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.input.is_empty() {
            return Err(Error::EmptyInput);
        }
        if self.output.len() != self.orig.len() {
            return Err(Error::InvalidGraph(format!(
                "{} output letters but {} origins",
                self.output.len(),
                self.orig.len()
            )));
        }
        if let Some(&bad) = self.orig.iter().find(|&&o| o == 0 || o > self.input.len()) {
            return Err(Error::InvalidGraph(format!(
                "origin {bad} outside 1..={}",
                self.input.len()
            )));
        }
        Ok(())
    }

    pub fn same_words(&self, other: &OriginGraph) -> bool {
        self.input == other.input && self.output == other.output
    }

    /// Mirror image: both words reversed, origins reflected.
    pub fn mirror(&self) -> OriginGraph {
        let n = self.input.len();
        OriginGraph {
            input: self.input.iter().rev().copied().collect(),
            output: self.output.iter().rev().copied().collect(),
            orig: self.orig.iter().rev().map(|&o| n + 1 - o).collect(),
        }
    }

    pub fn render(&self, sigma: &Alphabet, gamma: &Alphabet) -> String {
        let orig: Vec<String> = self.orig.iter().map(|o| o.to_string()).collect();
        format!(
            "{} / {} / ({})",
            sigma.render(&self.input),
            gamma.render(&self.output),
            orig.join(",")
        )
    }

    /// The graph file format read by [`parse_graph`].
    pub fn to_text(&self, sigma: &Alphabet, gamma: &Alphabet) -> String {
        let mut s = String::new();
        let words = |alpha: &Alphabet, w: &[Symbol]| {
            w.iter()
                .map(|&c| alpha.name(c))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(s, "input: {}", words(sigma, &self.input));
        let _ = writeln!(s, "output: {}", words(gamma, &self.output));
        let orig: Vec<String> = self.orig.iter().map(|o| o.to_string()).collect();
        let _ = writeln!(s, "orig: {}", orig.join(" "));
        s
    }
}

/// Parses `input:`, `output:` and `orig:` lines. Words are written letter
/// by letter separated by spaces, or compactly when every letter is one
/// character.
pub fn parse_graph(text: &str, sigma: &Alphabet, gamma: &Alphabet) -> Result<OriginGraph> {
    let (mut input, mut output, mut orig) = (None, None, None);
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(i + 1, 1, "expected `key: value`"))?;
        let value = value.trim();
        let word = |alpha: &Alphabet| -> Result<Vec<Symbol>> {
            if value.contains(char::is_whitespace) || alpha.contains(value) || value.is_empty() {
                alpha.parse_word(value)
            } else {
                alpha.parse_compact(value)
            }
        };
        let wrap = |e: Error| Error::parse(i + 1, key.len() + 2, e.to_string());
        match key.trim() {
            "input" => input = Some(word(sigma).map_err(wrap)?),
            "output" => output = Some(word(gamma).map_err(wrap)?),
            "orig" => {
                let nums = value
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|e| Error::parse(i + 1, 1, e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                orig = Some(nums);
            }
            other => return Err(Error::parse(i + 1, 1, format!("unknown key `{other}`"))),
        }
    }
    let input = input.ok_or_else(|| Error::parse(1, 1, "missing `input:`"))?;
    let output = output.unwrap_or_default();
    let orig = orig.unwrap_or_default();
    OriginGraph::new(input, output, orig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_origins() {
        assert!(OriginGraph::new(vec![0, 0], vec![0], vec![3]).is_err());
        assert!(OriginGraph::new(vec![], vec![], vec![]).is_err());
        assert!(OriginGraph::new(vec![0], vec![0, 0], vec![1]).is_err());
    }

    #[test]
    fn mirror_is_involutive() {
        let g = OriginGraph::new(vec![0, 1, 1], vec![1, 0], vec![3, 1]).unwrap();
        assert_eq!(g.mirror().mirror(), g);
        assert_eq!(g.mirror().orig, vec![3, 1]);
    }

    #[test]
    fn text_round_trip() {
        let s = Alphabet::new(["a", "b"]);
        let g = Alphabet::new(["c", "d"]);
        let graph = parse_graph("input: abba\noutput: c d\norig: 1 4\n", &s, &g).unwrap();
        assert_eq!(graph.orig, vec![1, 4]);
        assert_eq!(parse_graph(&graph.to_text(&s, &g), &s, &g).unwrap(), graph);
    }
}
