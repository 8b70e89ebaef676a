use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter inside an [`Alphabet`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u8);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type Word = Vec<Symbol>;

/// A finite alphabet of single ASCII alphanumeric letters, kept sorted so that
/// two alphabets over the same letters always compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut letters: Vec<char> = letters.into_iter().collect();
        for &c in &letters {
            if !c.is_ascii_alphanumeric() {
                return Err(Error::parse(
                    1,
                    1,
                    format!("'{c}' is not an ASCII alphanumeric letter"),
                ));
            }
        }
        letters.sort_unstable();
        letters.dedup();
        if letters.len() > u8::MAX as usize {
            return Err(Error::parse(1, 1, "alphabet too large"));
        }
        Ok(Alphabet { letters })
    }

    /// Parses the body of an `alphabet:` header, e.g. `a b`.
    pub fn parse_list(text: &str, line: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let mut chars = tok.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_alphanumeric() => letters.push(c),
                _ => {
                    return Err(Error::parse(
                        line,
                        1,
                        format!("'{tok}' is not a single alphanumeric letter"),
                    ))
                }
            }
        }
        Alphabet::new(letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.letters.len() as u8).map(Symbol)
    }

    pub fn letter(&self, s: Symbol) -> char {
        self.letters[s.index()]
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn symbol(&self, c: char) -> Option<Symbol> {
        self.letters
            .binary_search(&c)
            .ok()
            .map(|i| Symbol(i as u8))
    }

    /// Reads a word; `""`, `eps` and `ε` all denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "eps" || text == "ε" {
            return Ok(Vec::new());
        }
        text.chars()
            .map(|c| self.symbol(c).ok_or(Error::UnknownLetter(c)))
            .collect()
    }

    pub fn format_word(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            return "eps".to_string();
        }
        w.iter().map(|&s| self.letter(s)).collect()
    }

    /// Header body as written in files: letters separated by single spaces.
    pub fn header(&self) -> String {
        self.letters
            .iter()
            .map(char::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// All words of exactly `len` letters in length-lexicographic order.
    pub fn words_of_length(&self, len: usize) -> WordsOfLength {
        WordsOfLength {
            k: self.letters.len(),
            current: if self.letters.is_empty() && len > 0 {
                None
            } else {
                Some(vec![Symbol(0); len])
            },
        }
    }

    /// All words with at most `max_len` letters, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max_len).flat_map(move |n| self.words_of_length(n))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.header())
    }
}

pub struct WordsOfLength {
    k: usize,
    current: Option<Word>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if next[i].index() + 1 < self.k {
                next[i] = Symbol(next[i].0 + 1);
                advanced = true;
                break;
            }
            next[i] = Symbol(0);
        }
        if advanced {
            self.current = Some(next);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_deduplicated() {
        let a = Alphabet::parse_list("b a b", 1).unwrap();
        assert_eq!(a.letters(), &['a', 'b']);
        assert_eq!(a, Alphabet::new(['a', 'b']).unwrap());
    }

    #[test]
    fn word_enumeration_counts() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        assert_eq!(a.words_of_length(0).count(), 1);
        assert_eq!(a.words_of_length(3).count(), 8);
        assert_eq!(a.words_up_to(4).count(), 31);
        let empty = Alphabet::new([]).unwrap();
        assert_eq!(empty.words_up_to(3).count(), 1);
    }

    #[test]
    fn words_round_trip() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let w = a.parse_word("abba").unwrap();
        assert_eq!(a.format_word(&w), "abba");
        assert!(a.parse_word("eps").unwrap().is_empty());
        assert!(matches!(a.parse_word("ac"), Err(Error::UnknownLetter('c'))));
    }
}
