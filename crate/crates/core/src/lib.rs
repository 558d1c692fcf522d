pub mod canon;
pub mod cli;
pub mod cnf;
pub mod coloring;
pub mod constructions;
pub mod cycles;
pub mod dimacs_path;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod interval;
mod mask;
pub mod maxfree;
pub mod patterns;
pub mod probes;
pub mod saturation;
pub mod search;

pub use error::{Error, Result};
pub use graph::Graph;
