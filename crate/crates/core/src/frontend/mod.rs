//! Case-study generators, pipelines and run manifests.

mod grid;
mod pipeline;
mod scalar;

use thiserror::Error;

pub use grid::{gen_gridworld, BoundaryPolicy, Cell, DriftTrigger, GridWorldConfig, GRID_SPEC};
pub use pipeline::{
    closed_loop_nodes, compile_spec, partition_of, replay, run_case_study, run_grid_study, run_scalar_study, sha256_hex,
    Artifacts, BatchSummary, CaseStudyOutcome, CaseStudyRequest, GridRun, GridStudy, RunManifest, ScalarStudy,
    SimulationOptions,
};
pub use scalar::{gen_scalar_safety, scalar_config, SCALAR_SPEC};

#[derive(Debug, Error)]
pub enum FrontendError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Systems(#[from] crate::systems::SystemsError),
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}
