use rayon::prelude::*;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::unweighted::edge_triangle_counts;

fn flat_labels<'a>(g: &Graph, c: &'a Clustering) -> Result<&'a [u32]> {
    let labels = c
        .labels()
        .ok_or_else(|| Error::InvalidInput("density metrics need a non-overlapping clustering".into()))?;
    if labels.len() != g.num_vertices() {
        return Err(Error::InvalidInput(format!(
            "clustering covers {} vertices, graph has {}",
            labels.len(),
            g.num_vertices()
        )));
    }
    Ok(labels)
}

/// `Σ |C| · d(C) / Σ |C|` over `(size, density)` pairs; 1 for no clusters.
pub fn size_weighted_mean(clusters: &[(usize, f64)]) -> f64 {
    let total: usize = clusters.iter().map(|c| c.0).sum();
    if total == 0 {
        return 1.0;
    }
    clusters.iter().map(|&(s, d)| s as f64 * d).sum::<f64>() / total as f64
}

/// Size-weighted mean over clusters of `intra edges / (|C| choose 2)`;
/// singleton clusters count as density 1.
pub fn weighted_edge_density(g: &Graph, c: &Clustering) -> Result<f64> {
    let labels = flat_labels(g, c)?;
    let k = c.num_clusters();
    let mut intra = vec![0u64; k];
    for (u, v, _) in g.edges() {
        if labels[u as usize] == labels[v as usize] {
            intra[labels[u as usize] as usize] += 1;
        }
    }
    let per: Vec<(usize, f64)> = c
        .cluster_sizes()
        .into_iter()
        .zip(intra)
        .map(|(s, e)| {
            let d = if s < 2 {
                1.0
            } else {
                e as f64 / (s as f64 * (s as f64 - 1.0) / 2.0)
            };
            (s, d)
        })
        .collect();
    Ok(size_weighted_mean(&per))
}

/// Size-weighted mean over clusters of `3 · triangles / wedges` inside the
/// induced subgraph; clusters without wedges count as 1.
pub fn triangle_density(g: &Graph, c: &Clustering) -> Result<f64> {
    let labels = flat_labels(g, c)?;
    let inner = Graph::from_edges(
        g.num_vertices(),
        g.edges()
            .filter(|&(u, v, _)| labels[u as usize] == labels[v as usize])
            .map(|(u, v, _)| (u, v, 1.0))
            .collect(),
        false,
    )?;
    let t = edge_triangle_counts(&inner);
    let k = c.num_clusters();
    // per vertex: (triangle slot incidences, wedges centered there)
    let per_vertex: Vec<(u64, u64)> = (0..inner.num_vertices() as NodeId)
        .into_par_iter()
        .map(|u| {
            let tri: u64 = inner.slot_range(u).map(|s| t[s] as u64).sum();
            let d = inner.degree(u) as u64;
            (tri, d * d.saturating_sub(1) / 2)
        })
        .collect();
    let mut tri = vec![0u64; k];
    let mut wedges = vec![0u64; k];
    for (v, &(t6, w)) in per_vertex.iter().enumerate() {
        tri[labels[v] as usize] += t6;
        wedges[labels[v] as usize] += w;
    }
    let per: Vec<(usize, f64)> = c
        .cluster_sizes()
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            // each triangle shows up on 6 slots; 3·T = slots / 2
            let d = if wedges[i] == 0 {
                1.0
            } else {
                (tri[i] as f64 / 2.0) / wedges[i] as f64
            };
            (s, d)
        })
        .collect();
    Ok(size_weighted_mean(&per))
}
