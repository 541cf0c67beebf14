//! Congested Clique simulation of sampling-based MIS and maximal matching
//! algorithms, with exact oracles, lower-bound instance generators and a
//! seeded experiment harness.

pub mod graph;
pub mod harness;
pub mod hardgraphs;
pub mod rng;
pub mod sim;
pub mod solvers;
pub mod sparsify;

pub use graph::{Graph, GraphError, Matching, VertexSet};
pub use rng::{Prob, Seed, Stream};
