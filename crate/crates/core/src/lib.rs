//! Parallel graph clustering.
//!
//! Graphs are immutable CSR structures ([`Graph`]); every clusterer takes a
//! graph plus a parameter struct and returns a [`Clustering`]. Hierarchical
//! clusterers additionally return a [`Dendrogram`]. Quality measures live in
//! [`metrics`], frontier analysis in [`analysis`], and input generation in
//! [`dataset`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
mod cancel;
mod clustering;
pub mod dataset;
mod error;
pub mod graph;
pub mod metrics;
pub mod unweighted;
mod util;
pub mod weighted;

pub use cancel::CancelToken;
pub use clustering::{read_vertex_sets, Clustering};
pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use weighted::Dendrogram;
