//! Adaptive controller synthesis for systems with constant but unknown
//! parameters under LTL specifications.
//!
//! The pipeline: a parametric transition system ([`systems::Pts`]) is unfolded
//! into an adaptive transition system ([`adaptive::Ats`]) whose states pair a
//! system state with the set of parameters still consistent with the observed
//! history. The product of the ATS with a Rabin automaton for the
//! specification is solved as a Rabin game ([`synthesis`]). Infinite-state
//! scalar affine systems are first abstracted into a finite quotient
//! ([`abstraction`]).

pub mod logic;
pub mod systems;
pub mod estimation;
pub mod adaptive;
pub mod fixtures;
pub mod synthesis;
pub mod abstraction;
pub mod frontend;
pub mod simulation;

/// Any error raised along the synthesis pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Logic(#[from] logic::LogicError),
    #[error(transparent)]
    Systems(#[from] systems::SystemsError),
    #[error(transparent)]
    Estimation(#[from] estimation::EstimationError),
    #[error(transparent)]
    Adaptive(#[from] adaptive::AdaptiveError),
    #[error(transparent)]
    Synthesis(#[from] synthesis::SynthesisError),
    #[error(transparent)]
    Abstraction(#[from] abstraction::AbstractionError),
    #[error(transparent)]
    Simulation(#[from] simulation::SimulationError),
}
