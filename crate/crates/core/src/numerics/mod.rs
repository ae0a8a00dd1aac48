//! Exact arithmetic over the rationals and real quadratic fields.
//!
//! Every boundary test in the crate (interval membership, orbit collisions,
//! cylinder intersection) goes through [`ExactScalar::try_cmp`] or
//! [`ExactScalar::signum`], which only ever compare big integers.

mod interval;
mod parse;
mod scalar;

pub use interval::{Interval, IntervalSet};
pub use parse::parse_scalar;
pub use scalar::ExactScalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative radicand {0}")]
    NegativeRadicand(i64),
    #[error("mixed radicals sqrt({0}) and sqrt({1}) are not supported")]
    MixedRadicals(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("interval lower end exceeds upper end")]
    InvertedInterval,
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
}
