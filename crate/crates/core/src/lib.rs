//! Connected f-factor solvers.
//!
//! [`driver::connected_f_factor`] is the main entry point. It refines a
//! partition of the vertex set round by round, asking a partition-connector
//! backend (deterministic tree enumeration in [`connector`], or the
//! randomized algebraic test in [`algebraic`]) for an f-factor that connects
//! the current parts, and repairs the previous factor with alternating
//! circuits from [`circuits`].

pub mod algebraic;
pub mod blowup;
pub mod circuits;
pub mod connector;
pub mod driver;
pub mod factor;
pub mod field;
pub mod graph;
pub mod lab;
pub mod matching;

pub use graph::{DegreeSpec, EdgeId, FactorSubgraph, Graph, GraphError, Partition, VertexId};
