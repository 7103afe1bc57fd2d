use crate::clustering::Clustering;
use crate::graph::{connected_components, Graph};

/// Connected components after removing every edge with similarity below `tau`.
pub fn cluster_connectivity(g: &Graph, tau: f64) -> Clustering {
    connected_components(g, |_, _, w| w >= tau)
}
