//! Triangle-distinct graphs: a simple-graph core with triangle-degree
//! primitives, exact triangle-degree identities, the recursive `G_n` family,
//! structural bound checkers, and exhaustive small-order search.

pub mod bounds;
pub mod cli;
pub mod construction;
pub mod graph;
pub mod graph6;
pub mod identities;
pub mod search;
pub mod verify;

pub use construction::{base_g7, construct, ConstructedGraph};
pub use graph::{Graph, GraphBuilder, GraphError, Vertex, VertexSet};
