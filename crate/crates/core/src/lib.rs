//! Power domination, twin classes and resolving sets on finite simple graphs,
//! together with a generator for the fractal cubic network family `FCN(d)`.
//!
//! The modules mirror the pieces of the analysis:
//!
//! - [`graph`]: immutable simple graphs, vertex sets and hop distances.
//! - [`io`]: edge-list, JSON and DOT encodings.
//! - [`fcn`]: the `FCN(d)` generator and its canonical vertex partitions.
//! - [`powerdom`]: the monitoring closure, PDS checks and `γ_P` bounds.
//! - [`twins`]: open and closed twin classes.
//! - [`resolving`]: distance codes, resolving sets, metric dimension, RPDS.
//! - [`oracle`]: independent exhaustive baselines.
//! - [`report`]: the serializable analysis report.

pub mod error;
pub mod fcn;
pub mod graph;
pub mod io;
pub mod method;
pub mod oracle;
pub mod powerdom;
pub mod report;
pub mod resolving;
pub mod twins;

pub use error::{Error, Result};
pub use graph::{build_graph, Diameter, DistanceMatrix, Graph, VertexId, VertexSet};
pub use method::{Method, Methods};
