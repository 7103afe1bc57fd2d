use rayon::prelude::*;

use super::{ConcurrentUnionFind, Graph, NodeId};
use crate::clustering::Clustering;

/// Connected components over the edges accepted by `keep(u, v, w)`.
///
/// Cluster ids are dense and ordered by each component's minimum vertex.
pub fn connected_components<F>(g: &Graph, keep: F) -> Clustering
where
    F: Fn(NodeId, NodeId, f64) -> bool + Sync,
{
    connected_components_masked(g, |_| true, keep)
}

/// Like [`connected_components`] but restricted to the subgraph induced by
/// vertices with `active(v)`; inactive vertices end up as singletons.
pub fn connected_components_masked<A, F>(g: &Graph, active: A, keep: F) -> Clustering
where
    A: Fn(NodeId) -> bool + Sync,
    F: Fn(NodeId, NodeId, f64) -> bool + Sync,
{
    let n = g.num_vertices();
    let uf = ConcurrentUnionFind::new(n);
    (0..n as NodeId)
        .into_par_iter()
        .with_min_len(256)
        .filter(|&u| active(u))
        .for_each(|u| {
            for (v, w) in g.edges_of(u) {
                if u < v && active(v) && keep(u, v, w) {
                    uf.union(u, v);
                }
            }
        });
    Clustering::from_labels(uf.roots())
}
