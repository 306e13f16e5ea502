//! Cut-query algorithms over a hidden graph.
//!
//! Every algorithm here talks to the graph only through [`oracle::CutView`],
//! and every query is charged to a [`oracle::QueryLedger`].

pub mod config;
pub mod error;
pub mod expander;
pub mod harness;
pub mod isolating;
pub mod maxflow;
pub mod mincut;
pub mod oracle;
pub mod primitives;
pub mod sets;

pub use error::{Error, Result};
