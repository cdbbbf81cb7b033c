//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

pub mod games;
pub mod lasso;
pub mod estimator;
pub mod abstraction;
