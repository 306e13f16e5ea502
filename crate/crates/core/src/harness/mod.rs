//! Instance generation, query-free references and experiment runs.

pub mod generate;
pub mod reference;
pub mod suite;

pub use generate::{generate, Family, InstanceSpec};
pub use reference::{reference_maxflow, reference_mincut, separation_check};
pub use suite::{run_suite, Algorithm, ExperimentRow, SuiteOptions, SuiteReport};
