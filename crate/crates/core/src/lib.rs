//! MaxCut local-search heuristics and the tooling to benchmark them.
//!
//! The crate covers the incremental cut state shared by all solvers, seeded
//! instance generators for the standard random-graph families, four classical
//! heuristics (forward greedy, reversible greedy, tabu search, extremal
//! optimization), the SoftTabu linear Q-learning agent, and an evaluation
//! protocol that reports approximation ratios against a best-known registry.

pub mod cut;
pub mod error;
pub mod eval;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rng;
pub mod softtabu;
pub mod solvers;
pub mod tuning;

pub use cut::{cut_value, CutState};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
pub use oracle::brute_force_optimum;
