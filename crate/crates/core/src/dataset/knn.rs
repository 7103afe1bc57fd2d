use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::VectorSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Weight `1 / (1 + ‖u − v‖)`.
    #[default]
    EuclideanInverse,
    /// Weight `⟨u, v⟩ / (‖u‖ ‖v‖)`, clamped to `[0, 1]`.
    Cosine,
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Exact k-nearest-neighbor graph, symmetrized by union. Distance ties go
/// to the lower vertex id.
pub fn build_knn_graph(v: &VectorSet, k: usize, metric: Metric) -> Result<Graph> {
    let n = v.count();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "k must lie in 1..{n} for {n} vectors, got {k}"
        )));
    }
    let unit: Vec<Vec<f64>> = match metric {
        Metric::EuclideanInverse => Vec::new(),
        Metric::Cosine => (0..n)
            .map(|i| {
                let r = v.row(i);
                let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm == 0.0 {
                    return Err(Error::InvalidInput(format!("vector {i} has zero norm")));
                }
                Ok(r.iter().map(|x| x / norm).collect())
            })
            .collect::<Result<_>>()?,
    };
    let edges: Vec<(NodeId, NodeId, f64)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            // (distance key, id, weight); smaller key is nearer
            let mut cand: Vec<(f64, usize, f64)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| match metric {
                    Metric::EuclideanInverse => {
                        let d = euclidean(v.row(i), v.row(j));
                        (d, j, 1.0 / (1.0 + d))
                    }
                    Metric::Cosine => {
                        let dot: f64 = unit[i].iter().zip(&unit[j]).map(|(x, y)| x * y).sum();
                        (-dot, j, dot.clamp(0.0, 1.0))
                    }
                })
                .collect();
            let order = |a: &(f64, usize, f64), b: &(f64, usize, f64)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
            cand.select_nth_unstable_by(k - 1, order);
            cand.truncate(k);
            cand.into_iter().map(move |(_, j, w)| (i as NodeId, j as NodeId, w))
        })
        .collect();
    Graph::from_edges(n, edges, true)
}
