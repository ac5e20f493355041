//! Exact matching preclusion analysis.
//!
//! The crate computes the matching preclusion number `mp(G)` (the fewest
//! edges whose removal leaves no perfect matching), enumerates and
//! classifies optimal preclusion sets, and evaluates the classification of
//! super matched vertex-transitive graphs as a fast oracle that can be
//! cross-checked against exhaustive search.

pub mod bitset;
pub mod combinatorics;
pub mod corpus;
pub mod family;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod preclusion;
pub mod structure;

pub use bitset::{EdgeMask, VertexSet, MAX_VERTICES};
pub use family::{FamilyError, FamilySpec};
pub use graph::{Edge, EdgeSet, Graph, GraphError};
