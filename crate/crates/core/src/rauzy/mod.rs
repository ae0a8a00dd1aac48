//! Rauzy graphs, their followers and labels, and the evolution validator.

mod gf2;
mod graph;
mod labeled;
mod validate;

pub use graph::{build_k_graph, follower, is_subgraph_of_follower, strongly_connected, RauzyGraph};
pub use labeled::{label_follower, Label, LabeledRauzyGraph};
pub use validate::{
    validate_evolution, DeletionConstraint, EvolutionReport, Labeling, Verdict, Witness,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RauzyError {
    #[error("order {k} needs factors of length {} but only {max_len} are indexed", k + 1)]
    KOutOfRange { k: usize, max_len: usize },
    #[error("window [{k_min}, {k_max}] is invalid for factors indexed up to {max_len}")]
    WindowOutOfRange {
        k_min: usize,
        k_max: usize,
        max_len: usize,
    },
    #[error("graphs of orders {lower} and {upper} are not consecutive")]
    MismatchedK { lower: usize, upper: usize },
    #[error("word {0:?} has the wrong length for this graph")]
    BadLength(String),
    #[error("arc {0:?} joins missing vertices")]
    DanglingArc(String),
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("label conflict: {0}")]
    LabelConflict(String),
}
