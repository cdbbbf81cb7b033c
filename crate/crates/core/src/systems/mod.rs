//! Finite transition systems, parametric transition systems and the
//! operations that build or flatten them.

mod embed;
mod io;
mod pts;
mod quotient;
mod ts;

use thiserror::Error;

use crate::logic::{Alphabet, Letter, LogicError};

pub use embed::{embed, DynamicsSpec};
pub use io::{PtsFile, TransitionRecord};
pub use pts::{robustify, Pts};
pub use quotient::{quotient, Partition};
pub use ts::TransitionSystem;

pub type StateId = usize;
pub type InputId = usize;
pub type ParamId = usize;

/// Largest parameter set supported; estimator sets are 64-bit masks.
pub const MAX_PARAMS: usize = 64;

#[derive(Debug, Error)]
pub enum SystemsError {
    #[error("empty {0} set")]
    Empty(&'static str),
    #[error("{0} parameters exceed the supported maximum of {MAX_PARAMS}")]
    TooManyParams(usize),
    #[error("duplicate {kind} name '{name}'")]
    DuplicateName { kind: &'static str, name: String },
    #[error("unknown {kind} '{name}'")]
    UnknownName { kind: &'static str, name: String },
    #[error("transition ({x}, {u}) is blocking")]
    Blocking { x: String, u: String },
    #[error("partition is not observation preserving: cell {cell} holds '{a}' and '{b}' with different labels")]
    NotObservationPreserving { cell: usize, a: String, b: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
}

/// Labelled non-deterministic system a controller can play on.
///
/// Implemented by plain transition systems and by adaptive transition systems
/// so both can be composed with a Rabin automaton.
pub trait LabeledSystem {
    fn state_count(&self) -> usize;
    fn input_count(&self) -> usize;
    fn successors(&self, x: StateId, u: InputId) -> &[StateId];
    fn label(&self, x: StateId) -> Letter;
    fn alphabet(&self) -> &Alphabet;
    fn state_name(&self, x: StateId) -> String;
    fn input_name(&self, u: InputId) -> &str;
}

pub(crate) fn check_unique(kind: &'static str, names: &[String]) -> Result<(), SystemsError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(SystemsError::DuplicateName { kind, name: n.clone() });
        }
    }
    Ok(())
}

pub(crate) fn sorted_unique(mut v: Vec<StateId>) -> Vec<StateId> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Name given to the completion sink unless it collides with an existing state.
pub(crate) fn sink_name(existing: &[String]) -> String {
    let mut name = "sink".to_string();
    while existing.contains(&name) {
        name.push('_');
    }
    name
}
