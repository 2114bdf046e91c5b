//! Matching polytopes of small graphs: H-descriptions, Ehrhart counts and
//! h*-vectors, Gorenstein classification, and t-matching decompositions.

pub mod budget;
pub mod ehrhart;
pub mod error;
pub mod gorenstein;
pub mod graph;
pub mod idp;
pub mod polytope;
pub mod structures;

pub use budget::Budget;
pub use error::{Error, ResourceExceeded, Result};
pub use graph::{EdgeIndex, Graph, Vertex};
