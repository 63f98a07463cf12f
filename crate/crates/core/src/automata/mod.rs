//! Automata over structured alphabets.
//!
//! A structured letter is a base letter together with one boolean per named
//! track. Tracks carry the valuation of free variables when compiling
//! formulas, and the parameter labellings of resynchronizers.

mod ambiguity;
mod dfa;
mod nfa;
pub(crate) mod text;

pub use ambiguity::{ambiguity_class, Ambiguity, AmbiguityReport, AmbiguityWitness};
pub use dfa::Dfa;
pub use nfa::StructuredNfa;
pub use text::{parse_automaton, write_automaton};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Encoded structured letter: `base << tracks | bits`.
pub type Letter = u32;

/// A base alphabet extended with an ordered list of boolean tracks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructuredAlphabet {
    base: Alphabet,
    tracks: Vec<String>,
}

impl StructuredAlphabet {
    pub fn new<S: Into<String>>(
        base: Alphabet,
        tracks: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let tracks: Vec<String> = tracks.into_iter().map(Into::into).collect();
        if base.is_empty() {
            return Err(Error::AlphabetMismatch("base alphabet is empty".into()));
        }
        for (i, t) in tracks.iter().enumerate() {
            if tracks[..i].contains(t) {
                return Err(Error::AlphabetMismatch(format!("duplicate track `{t}`")));
            }
        }
        if tracks.len() > 24 {
            return Err(Error::Unsupported(format!(
                "{} tracks is too many",
                tracks.len()
            )));
        }
        Ok(StructuredAlphabet { base, tracks })
    }

    pub fn plain(base: Alphabet) -> Self {
        StructuredAlphabet::new(base, Vec::<String>::new()).expect("non-empty base")
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn tracks(&self) -> &[String] {
        &self.tracks
    }

    pub fn num_tracks(&self) -> usize {
        self.tracks.len()
    }

    pub fn track_index(&self, name: &str) -> Result<usize> {
        self.tracks
            .iter()
            .position(|t| t == name)
            .ok_or_else(|| Error::UnknownTrack(name.to_string()))
    }

    pub fn num_letters(&self) -> usize {
        self.base.len() << self.tracks.len()
    }

    #[inline]
    pub fn letter(&self, base: Symbol, bits: u32) -> Letter {
        ((base as u32) << self.tracks.len()) | bits
    }

    #[inline]
    pub fn base_of(&self, letter: Letter) -> Symbol {
        (letter >> self.tracks.len()) as Symbol
    }

    #[inline]
    pub fn bits_of(&self, letter: Letter) -> u32 {
        letter & ((1u32 << self.tracks.len()) - 1)
    }

    #[inline]
    pub fn bit(&self, letter: Letter, track: usize) -> bool {
        letter >> track & 1 == 1
    }

    /// Same base alphabet and tracks, order included.
    pub fn check_same(&self, other: &StructuredAlphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!("{self} vs {other}")))
        }
    }

    /// This alphabet with `track` removed.
    pub fn without_track(&self, track: usize) -> StructuredAlphabet {
        let mut tracks = self.tracks.clone();
        tracks.remove(track);
        StructuredAlphabet {
            base: self.base.clone(),
            tracks,
        }
    }

    /// Builds a word from base letters and one bit column per track.
    pub fn word(&self, base: &[Symbol], columns: &[&[bool]]) -> Vec<Letter> {
        assert_eq!(columns.len(), self.tracks.len());
        (0..base.len())
            .map(|i| {
                let bits = columns
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (t, col)| acc | ((col[i] as u32) << t));
                self.letter(base[i], bits)
            })
            .collect()
    }

    /// Builds a word where each track is given as a set of 1-based positions.
    pub fn word_with_positions(&self, base: &[Symbol], sets: &[&[usize]]) -> Vec<Letter> {
        assert_eq!(sets.len(), self.tracks.len());
        (0..base.len())
            .map(|i| {
                let bits = sets.iter().enumerate().fold(0u32, |acc, (t, s)| {
                    acc | ((s.contains(&(i + 1)) as u32) << t)
                });
                self.letter(base[i], bits)
            })
            .collect()
    }

    pub fn render_letter(&self, letter: Letter) -> String {
        let bits: Vec<&str> = (0..self.tracks.len())
            .map(|t| if self.bit(letter, t) { "1" } else { "0" })
            .collect();
        format!(
            "{}[{}]",
            self.base.name(self.base_of(letter)),
            bits.join(" ")
        )
    }

    pub fn render_word(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&l| self.render_letter(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `a[1 0]` (or `a` when there are no tracks).
    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        let text = text.trim();
        let (name, bits) = match text.find('[') {
            Some(open) => {
                let close = text
                    .rfind(']')
                    .ok_or_else(|| Error::UnknownSymbol(text.to_string()))?;
                (&text[..open], &text[open + 1..close])
            }
            None => (text, ""),
        };
        let base = self.base.symbol(name.trim())?;
        let values: Vec<&str> = bits.split_whitespace().collect();
        if values.len() != self.tracks.len() {
            return Err(Error::AlphabetMismatch(format!(
                "letter `{text}` has {} bits, expected {}",
                values.len(),
                self.tracks.len()
            )));
        }
        let mut mask = 0;
        for (t, v) in values.iter().enumerate() {
            match *v {
                "0" => {}
                "1" => mask |= 1 << t,
                _ => return Err(Error::UnknownSymbol(v.to_string())),
            }
        }
        Ok(self.letter(base, mask))
    }
}

impl fmt::Display for StructuredAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x B^({})", self.base, self.tracks.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_encoding_round_trips() {
        let sa = StructuredAlphabet::new(Alphabet::new(["a", "b"]), ["x", "y", "Z"]).unwrap();
        assert_eq!(sa.num_letters(), 16);
        let l = sa.letter(1, 0b101);
        assert_eq!(sa.base_of(l), 1);
        assert_eq!(sa.bits_of(l), 0b101);
        assert!(sa.bit(l, 0) && !sa.bit(l, 1) && sa.bit(l, 2));
        assert_eq!(sa.render_letter(l), "b[1 0 1]");
        assert_eq!(sa.parse_letter("b[1 0 1]").unwrap(), l);
    }

    #[test]
    fn duplicate_tracks_rejected() {
        assert!(StructuredAlphabet::new(Alphabet::new(["a"]), ["x", "x"]).is_err());
        assert!(StructuredAlphabet::new(Alphabet::new(Vec::<String>::new()), ["x"]).is_err());
    }
}
