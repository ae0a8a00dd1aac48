//! Finite-prefix combinatorics on words.
//!
//! Everything here is evidence about a prefix: a property reported as holding
//! "up to n" has only been checked on the factors visible in the prefix.

mod analysis;
mod factors;
pub mod generators;
mod word;

pub use analysis::{
    bispecial_factors, is_balanced, recurrence_window, special_factors, sturmian_check, Balance,
    Side, SpecialFactor, SturmianVerdict,
};
pub use factors::{FactorId, FactorSet};
pub use word::{Alphabet, Symbol, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("alphabet of {0} letters is too large")]
    AlphabetTooLarge(usize),
    #[error("letter {letter:?} at position {position} is not in the alphabet")]
    UnknownLetter { letter: char, position: usize },
    #[error("letter {0:?} is not in the alphabet")]
    LetterNotInAlphabet(char),
    #[error("max_len {max_len} must be between 1 and the word length {len}")]
    MaxLenOutOfRange { max_len: usize, len: usize },
    #[error("length {n} exceeds the indexed horizon {max_len}")]
    LengthOutOfRange { n: usize, max_len: usize },
}

/// Complete factor index of `word` up to `max_len`.
pub fn factors(word: &Word, max_len: usize) -> Result<FactorSet, WordError> {
    FactorSet::new(word, max_len)
}

/// Number of distinct factors of length `n`.
pub fn complexity(fs: &FactorSet, n: usize) -> Result<usize, WordError> {
    fs.complexity(n)
}
