//! Exact interval exchange transformations and the combinatorics of their
//! codings: factor indices, Rauzy graphs and their evolutions, and the
//! reconstruction of an IET from a finite word.

pub mod fz;
pub mod iet;
pub mod numerics;
pub mod rauzy;
pub mod reconstruct;
pub mod words;

use std::fmt;

pub use iet::{CodingConfig, IetConfig, IetError, IetSpec, RegularityReport};
pub use numerics::{parse_scalar, ExactScalar, Interval, IntervalSet, NumericsError};
pub use words::{Alphabet, FactorSet, Word, WordError};

/// A diagnostic for a line-oriented input file. `line == 0` means the
/// problem is not tied to a single line (a missing key).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ConfigError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(
                f,
                "line {}, column {}: {}",
                self.line, self.column, self.message
            )
        }
    }
}

impl std::error::Error for ConfigError {}
