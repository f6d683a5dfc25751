//! Path-representable distances on weighted graphs and the persistence of
//! their Rips filtrations.

pub mod error;
pub mod graph;
pub mod lab;
pub mod metric;
pub mod paths;
pub mod persistence;

pub use error::{Error, Result};
pub use graph::{Edge, SpanningTree, WeightedGraph};
pub use metric::{d_edge, d_weight, DistanceMatrix, PathMode, Provenance};
pub use paths::{Path, PathChoiceFunction};
pub use persistence::{Bar, Barcode, FilteredComplex, ReducedMatrix, SimplexOrdering};
