use crate::clustering::Clustering;
use crate::graph::{connected_components_masked, core_numbers, Graph};

/// Connected components of the subgraph induced by vertices with core number
/// at least `k`; every other vertex is a singleton.
pub fn cluster_kcore(g: &Graph, k: u32) -> Clustering {
    let core = core_numbers(g);
    connected_components_masked(g, |v| core[v as usize] >= k, |_, _, _| true)
}
