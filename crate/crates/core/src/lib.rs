//! Exact graph invariants, sum-perfect recognition and forbidden induced
//! subgraph mining for small graphs.

pub mod canon;
pub mod cli;
pub mod error;
pub mod family;
pub mod format;
pub mod graph;
pub mod invariants;
pub mod miner;
pub mod recognition;

pub use canon::{canonical_key, contains_induced, is_isomorphic, CanonicalKey, Embedding};
pub use error::{Error, Result};
pub use format::{emit_graph6, parse_graph6};
pub use graph::{Graph, VertexSet};
pub use invariants::{InvariantReport, StableCliquePair};
