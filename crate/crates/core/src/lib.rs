//! L(t,1)-colouring of simple undirected graphs.
//!
//! Adjacent vertices must receive colours whose difference avoids a forbidden
//! set `T` (which always contains 0), and vertices at distance exactly two
//! must receive different colours. The span of a graph is the smallest
//! possible highest colour.

pub mod audit;
pub mod checker;
pub mod colouring;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod solver;
pub mod tset;

pub use colouring::{Colour, Colouring, Violation, ViolationKind};
pub use error::{Error, Result};
pub use graph::Graph;
pub use solver::{Budget, Method, SpanResult};
pub use tset::TSet;
