//! Deterministic Congested Clique simulator with low-arboricity coloring and
//! MIS algorithms.

pub mod cli;
pub mod coloring;
pub mod decomposition;
pub mod graph;
pub mod mis;
pub mod oracles;
pub mod sim;

mod error;

pub use error::{Error, Result};
