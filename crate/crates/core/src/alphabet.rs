//! Finite alphabets of named letters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a letter inside its [`Alphabet`].
pub type Symbol = usize;

/// A finite set of named letters.
///
/// Names are kept sorted and deduplicated so that two alphabets built from
/// the same set of names assign the same index to every letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        names.dedup();
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map_err(|_| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbol(name).is_ok()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        0..self.names.len()
    }

    /// Parses a whitespace separated word; `eps` (or nothing) is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>> {
        text.split_whitespace()
            .filter(|t| *t != "eps")
            .map(|t| self.symbol(t))
            .collect()
    }

    /// Parses a word given letter by letter; every name must be one character.
    pub fn parse_compact(&self, text: &str) -> Result<Vec<Symbol>> {
        text.chars().map(|c| self.symbol(&c.to_string())).collect()
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        if self.names.iter().all(|n| n.chars().count() == 1) {
            word.iter().map(|&s| self.name(s)).collect()
        } else {
            word.iter()
                .map(|&s| self.name(s))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// All words of exactly `len` letters, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> WordIter {
        WordIter::new(self.len(), len)
    }

    pub fn disjoint(&self, other: &Alphabet) -> bool {
        self.names.iter().all(|n| !other.contains(n))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

/// Odometer over `size^len` words.
pub struct WordIter {
    size: usize,
    current: Option<Vec<Symbol>>,
}

impl WordIter {
    pub fn new(size: usize, len: usize) -> Self {
        let current = if size == 0 && len > 0 {
            None
        } else {
            Some(vec![0; len])
        };
        WordIter { size, current }
    }
}

impl Iterator for WordIter {
    type Item = Vec<Symbol>;

    fn next(&mut self) -> Option<Vec<Symbol>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.size {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted() {
        let a = Alphabet::new(["b", "a", "b"]);
        assert_eq!(a.names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(a.symbol("b").unwrap(), 1);
        assert!(a.symbol("c").is_err());
    }

    #[test]
    fn word_iter_counts() {
        let a = Alphabet::new(["a", "b", "c"]);
        assert_eq!(a.words_of_len(3).count(), 27);
        assert_eq!(a.words_of_len(0).count(), 1);
        let words: Vec<_> = a.words_of_len(2).collect();
        assert_eq!(words[1], vec![0, 1]);
    }
}
