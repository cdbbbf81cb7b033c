//! Temporal specifications: LTL syntax, Rabin automata and the fragment compiler.

mod alphabet;
mod compile;
mod dra;
mod exchange;
mod ltl;

use thiserror::Error;

pub use alphabet::{Alphabet, LassoWord, Letter, MAX_PROPS};
pub use compile::{compile_to_dra, Fragment};
pub use dra::{Dra, DraState, RabinPair};
pub use exchange::{parse_dra, write_dra};
pub use ltl::{mentioned_props, parse_ltl, Ltl, LtlDisplay};


#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared proposition '{name}' at offset {pos}")]
    Undeclared { name: String, pos: usize },
    #[error("undeclared proposition '{0}'")]
    UndeclaredProp(String),
    #[error("invalid proposition name '{0}'")]
    InvalidPropName(String),
    #[error("duplicate proposition '{0}'")]
    DuplicateProp(String),
    #[error("{0} propositions exceed the supported maximum of {MAX_PROPS}")]
    TooManyProps(usize),
    #[error("lasso cycle must be non-empty")]
    EmptyCycle,
    #[error("formula outside the supported fragment: {0}")]
    UnsupportedFragment(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("transition function not total: state {state} has no move on {letter}")]
    NonTotal { state: usize, letter: String },
    #[error("dangling state reference {id} in {what}")]
    Dangling { what: String, id: usize },
    #[error("automaton has no acceptance pairs")]
    NoPairs,
}
