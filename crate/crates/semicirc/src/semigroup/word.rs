//! The free semigroup on the input variables: concatenation, never reordered.

use super::SemigroupError;
use std::fmt;

/// A nonempty sequence of variable indices. The semigroup operation is
/// concatenation, which makes this the order oracle: two circuits compute
/// the same word at an output iff the circuits agree for every semigroup,
/// commutative or not.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn letter(var: u32) -> Self {
        Word { letters: vec![var] }
    }

    pub fn from_letters(letters: Vec<u32>) -> Result<Self, SemigroupError> {
        if letters.is_empty() {
            return Err(SemigroupError::BadValue {
                kind: "word",
                text: String::new(),
            });
        }
        Ok(Word { letters })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

pub(super) fn parse_word(text: &str) -> Result<Word, SemigroupError> {
    let bad = || SemigroupError::BadValue {
        kind: "word",
        text: text.to_string(),
    };
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let var = token
            .strip_prefix('x')
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(bad)?;
        letters.push(var);
    }
    Word::from_letters(letters).map_err(|_| bad())
}
