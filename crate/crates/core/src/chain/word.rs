use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    /// Inscribed circle.
    C,
    /// Chord tangent to the inner circle.
    S,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::C => 'c',
            Letter::S => 's',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word must have at least 2 letters, got {0}")]
    TooShort(usize),
    #[error("invalid letter {0:?}: expected 'c' or 's'")]
    BadLetter(char),
}

/// A cyclic word over `{c, s}` of length at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.len() < 2 {
            return Err(WordError::TooShort(letters.len()));
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter `i` read cyclically (0-based).
    pub fn letter(&self, i: usize) -> Letter {
        self.0[i % self.0.len()]
    }

    pub fn first(&self) -> Letter {
        self.0[0]
    }

    pub fn power(&self, n: usize) -> Self {
        Self(self.0.iter().copied().cycle().take(self.0.len() * n.max(1)).collect())
    }

    pub fn rotated(&self, k: usize) -> Self {
        let n = self.0.len();
        Self((0..n).map(|i| self.0[(i + k) % n]).collect())
    }

    /// Letters of the chain `uₙ₊₁, uₙ, …, u₁` read as a word: `a₁ aₙ … a₂`.
    pub fn reversed_cycle(&self) -> Self {
        let n = self.0.len();
        Self((0..n).map(|i| self.0[(n - i) % n]).collect())
    }

    /// Alternating `(cs)^k` or `(sc)^k`.
    pub fn is_mixed_alternating(&self) -> bool {
        self.0.len().is_multiple_of(2) && self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// Short words outside the known closure families.
    pub fn is_flagged(&self) -> bool {
        self.0.len() < 3 && !self.is_mixed_alternating()
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .trim()
            .chars()
            .map(|ch| match ch.to_ascii_lowercase() {
                'c' => Ok(Letter::C),
                's' => Ok(Letter::S),
                other => Err(WordError::BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

impl TryFrom<String> for Word {
    type Error = WordError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Word = "cScs".parse().unwrap();
        assert_eq!(w.to_string(), "cscs");
        assert_eq!(w.letter(4), Letter::C);
        assert!("c".parse::<Word>().is_err());
        assert_eq!("cxs".parse::<Word>(), Err(WordError::BadLetter('x')));
    }

    #[test]
    fn powers_and_reversal() {
        let w: Word = "ccs".parse().unwrap();
        assert_eq!(w.power(2).to_string(), "ccsccs");
        assert_eq!(w.rotated(1).to_string(), "csc");
        assert_eq!(w.reversed_cycle().to_string(), "csc");
        let w: Word = "ccss".parse().unwrap();
        assert_eq!(w.reversed_cycle().to_string(), "cssc");
    }

    #[test]
    fn flags() {
        assert!(!"cs".parse::<Word>().unwrap().is_flagged());
        assert!("cc".parse::<Word>().unwrap().is_flagged());
        assert!(!"ccc".parse::<Word>().unwrap().is_flagged());
        assert!("scsc".parse::<Word>().unwrap().is_mixed_alternating());
    }
}
