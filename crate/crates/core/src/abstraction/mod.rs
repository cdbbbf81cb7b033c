//! Finite abstraction of scalar parametric affine systems: interval cells,
//! exact interval Post, and the quotient PTS over state and parameter cells.

mod affine;
mod config;
mod interval;
mod quotient;
mod rational;

use thiserror::Error;

pub use affine::ScalarParametricAffine;
pub use config::{AbstractionConfig, DomainConfig, PredicateConfig};
pub use interval::{grid_boxes, grid_partition, Interval, IntervalBox};
pub use quotient::{build_quotient_pts, Comparison, Predicate, Quotient};
pub use rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum AbstractionError {
    #[error("invalid number '{0}'")]
    Number(String),
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },
    #[error("partition needs at least one cell")]
    NoCells,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("cell {cell} straddles predicate '{predicate}'")]
    Straddle { cell: String, predicate: String },
    #[error("input {0} lies outside the input domain")]
    InputOutOfDomain(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Systems(#[from] crate::systems::SystemsError),
    #[error(transparent)]
    Logic(#[from] crate::logic::LogicError),
    #[error("malformed abstraction config: {0}")]
    Json(#[from] serde_json::Error),
}
