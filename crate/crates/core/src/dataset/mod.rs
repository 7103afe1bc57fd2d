//! Benchmark inputs: vector sets, k-NN graphs, RMAT graphs and community
//! files.

mod knn;
mod rmat;
mod vectors;

use std::path::Path;

pub use knn::{build_knn_graph, Metric};
pub use rmat::{generate_rmat, RmatParams};
pub use vectors::{gaussian_blobs, VectorSet};

use crate::error::Result;
use crate::metrics::GroundTruth;

/// One community per line; duplicates (as sets) are removed.
pub fn load_communities(path: impl AsRef<Path>) -> Result<GroundTruth> {
    GroundTruth::load(path)
}
