//! Steiner distance, Steiner k-diameter and k-radius of graphs and of their
//! Cartesian and lexicographic products, with closed-form bounds and a
//! verification harness that checks them against exact computation.

pub mod bounds;
pub mod error;
pub mod families;
pub mod graph;
pub mod mask;
pub mod parallel;
pub mod products;
pub mod sdiam;
pub mod steiner;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Distance, DistanceMatrix, Graph, InducedSubgraph};
pub use parallel::Executor;
pub use products::{cartesian_product, lexicographic_product, ProductGraph, ProductKind, ProductVertex};
pub use steiner::{SolverConfig, SteinerResult, VertexMultiset};
