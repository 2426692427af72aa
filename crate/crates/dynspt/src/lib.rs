//! Dynamic maintenance of a single-source shortest-path tree under one-edge
//! weight changes.
//!
//! The crate keeps a shortest-path tree of a directed graph with arbitrary
//! (possibly negative) integer weights and repairs it after a single edge
//! weight increase or decrease, touching only the affected region instead of
//! recomputing from scratch.  Decreases additionally detect when the change
//! creates a negative cycle and return a concrete witness.  An optional
//! post-processing mode minimises the number of tree-edge changes, available
//! when the pre-update graph has no cycle of total weight zero.

pub mod decremental;
pub mod error;
pub mod generator;
pub mod graph;
pub mod incremental;
pub mod io;
pub mod minchange;
pub mod oracle;
pub mod pqueue;
pub mod samples;
pub mod sssp;
pub mod tree;
pub mod update;

pub use error::{Error, Result};
pub use graph::{build_graph, Edge, EdgeId, Graph, VertexId, Weight, WeightUpdate};
pub use sssp::{bellman_ford, detect_zero_cycle, SsspResult};
pub use tree::{count_edge_changes, ShortestPathTree};
pub use update::{UpdateOutcome, UpdateStats};
