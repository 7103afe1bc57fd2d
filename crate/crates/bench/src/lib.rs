//! Input fixtures shared by the criterion benchmarks.

use parclust_core::dataset::{build_knn_graph, gaussian_blobs, generate_rmat, Metric, RmatParams};
use parclust_core::Graph;

/// Skewed RMAT graph with `2^log2_n` vertices and about `16 · 2^log2_n` edges.
pub fn rmat(log2_n: u32, seed: u64) -> Graph {
    generate_rmat(&RmatParams { log2_n, edge_factor: 16, seed, ..Default::default() }).expect("valid RMAT parameters")
}

/// Same graph with every edge weighted in `(0, 1]` by a hash of its endpoints,
/// for the similarity-based clusterers.
pub fn weighted_rmat(log2_n: u32, seed: u64) -> Graph {
    let g = rmat(log2_n, seed);
    let mut weights = Vec::with_capacity(g.weight_slots().len());
    for u in 0..g.num_vertices() as u32 {
        for &v in g.neighbors(u) {
            let (a, b) = (u.min(v) as u64, u.max(v) as u64);
            let h = (a.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ b).wrapping_mul(0xbf58_476d_1ce4_e5b9) >> 11;
            weights.push((h as f64 + 1.0) / (1u64 << 53) as f64);
        }
    }
    g.with_weights(weights).expect("symmetric weights")
}

/// k-NN similarity graph over `blobs` Gaussian clusters in the plane.
pub fn blob_knn(blobs: usize, per_blob: usize, k: usize) -> Graph {
    let centers: Vec<Vec<f64>> = (0..blobs).map(|i| vec![10.0 * i as f64, 5.0 * (i % 2) as f64]).collect();
    let v = gaussian_blobs(&centers, per_blob, 1.0, 1).expect("valid blobs");
    build_knn_graph(&v, k, Metric::EuclideanInverse).expect("k below point count")
}
