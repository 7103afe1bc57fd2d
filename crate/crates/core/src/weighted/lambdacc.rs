//! The LambdaCC objective and its modularity special case.
//!
//! For a flat clustering the objective is reported over unordered vertex
//! pairs:
//!
//! ```text
//! score = sum over clusters C of  W(C) - lambda * ((sum_{u in C} k_u)^2 - sum_{u in C} k_u^2) / 2
//! ```
//!
//! where `W(C)` is the total weight of edges inside `C`. Summing over ordered
//! pairs instead doubles every term, which leaves the argmax unchanged.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexWeightMode {
    /// `k_u = 1` for every vertex.
    #[default]
    Unit,
    /// `k_u` is the weighted degree of `u`.
    WeightedDegree,
}

impl VertexWeightMode {
    pub fn vertex_weights(self, g: &Graph) -> Vec<f64> {
        match self {
            VertexWeightMode::Unit => vec![1.0; g.num_vertices()],
            VertexWeightMode::WeightedDegree => (0..g.num_vertices() as NodeId)
                .into_par_iter()
                .map(|u| g.weighted_degree(u))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaCCParams {
    /// Resolution `lambda >= 0`.
    pub resolution: f64,
    pub vertex_weight_mode: VertexWeightMode,
    /// Modularity scaling the resolution was derived from, if any.
    pub gamma: Option<f64>,
    /// Cap on contraction levels.
    pub max_rounds: usize,
    /// Cap on local-search sweeps per level.
    pub max_sweeps: usize,
    pub seed: u64,
    /// Run sweeps sequentially in seeded order so output is reproducible for
    /// any thread count.
    pub deterministic: bool,
}

impl Default for LambdaCCParams {
    fn default() -> Self {
        LambdaCCParams {
            resolution: 0.01,
            vertex_weight_mode: VertexWeightMode::Unit,
            gamma: None,
            max_rounds: 20,
            max_sweeps: 100,
            seed: 0,
            deterministic: false,
        }
    }
}

impl LambdaCCParams {
    pub fn with_resolution(resolution: f64) -> Self {
        LambdaCCParams {
            resolution,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.resolution >= 0.0) || !self.resolution.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "resolution must be >= 0, got {}",
                self.resolution
            )));
        }
        if self.max_rounds == 0 || self.max_sweeps == 0 {
            return Err(Error::InvalidParameter(
                "max_rounds and max_sweeps must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Exact LambdaCC score of a flat clustering in `O(n + m)`.
pub fn lambda_cc_objective(g: &Graph, c: &Clustering, p: &LambdaCCParams) -> Result<f64> {
    let k = p.vertex_weight_mode.vertex_weights(g);
    objective_with_weights(g, c, &k, p.resolution)
}

pub(crate) fn objective_with_weights(
    g: &Graph,
    c: &Clustering,
    k: &[f64],
    lambda: f64,
) -> Result<f64> {
    let labels = flat_labels(g, c)?;
    let nc = c.num_clusters();
    let mut intra = vec![0.0; nc];
    let mut ksum = vec![0.0; nc];
    let mut ksq = vec![0.0; nc];
    for u in 0..g.num_vertices() {
        let lu = labels[u] as usize;
        ksum[lu] += k[u];
        ksq[lu] += k[u] * k[u];
        for (v, w) in g.edges_of(u as NodeId) {
            if (u as NodeId) < v && labels[v as usize] as usize == lu {
                intra[lu] += w;
            }
        }
    }
    Ok((0..nc)
        .map(|i| intra[i] - lambda * (ksum[i] * ksum[i] - ksq[i]) / 2.0)
        .sum())
}

/// Generalized modularity `sum_C [ W(C)/W - gamma * (d_C / 2W)^2 ]`, where
/// `W` is the total edge weight and `d_C` the summed weighted degree of `C`.
pub fn modularity(g: &Graph, c: &Clustering, gamma: f64) -> Result<f64> {
    let labels = flat_labels(g, c)?;
    let total = g.total_weight();
    if total <= 0.0 {
        return Err(Error::InvalidInput(
            "modularity is undefined on a graph without edge weight".into(),
        ));
    }
    let nc = c.num_clusters();
    let mut intra = vec![0.0; nc];
    let mut deg = vec![0.0; nc];
    for u in 0..g.num_vertices() {
        let lu = labels[u] as usize;
        for (v, w) in g.edges_of(u as NodeId) {
            deg[lu] += w;
            if (u as NodeId) < v && labels[v as usize] as usize == lu {
                intra[lu] += w;
            }
        }
    }
    Ok((0..nc)
        .map(|i| intra[i] / total - gamma * (deg[i] / (2.0 * total)).powi(2))
        .sum())
}

fn flat_labels<'a>(g: &Graph, c: &'a Clustering) -> Result<&'a [u32]> {
    let labels = c.labels().ok_or_else(|| {
        Error::InvalidInput("objective requires a flat clustering".into())
    })?;
    if labels.len() != g.num_vertices() {
        return Err(Error::InvalidInput(format!(
            "clustering covers {} vertices, graph has {}",
            labels.len(),
            g.num_vertices()
        )));
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn edge() -> Graph {
        Graph::from_edges(0, vec![(0, 1, 1.0)], false).unwrap()
    }

    #[test]
    fn single_edge_values() {
        let g = edge();
        let together = Clustering::single_cluster(2);
        let apart = Clustering::singletons(2);
        let p0 = LambdaCCParams::with_resolution(0.0);
        let p4 = LambdaCCParams::with_resolution(0.4);
        assert_eq!(lambda_cc_objective(&g, &together, &p0).unwrap(), 1.0);
        assert_relative_eq!(lambda_cc_objective(&g, &together, &p4).unwrap(), 0.6);
        assert_eq!(lambda_cc_objective(&g, &apart, &p4).unwrap(), 0.0);
    }

    #[test]
    fn singletons_score_zero() {
        let g = Graph::from_edges(0, vec![(0, 1, 0.3), (1, 2, 2.0), (0, 3, 1.0)], true).unwrap();
        for lambda in [0.0, 0.5, 10.0] {
            let mut p = LambdaCCParams::with_resolution(lambda);
            p.vertex_weight_mode = VertexWeightMode::WeightedDegree;
            assert_eq!(lambda_cc_objective(&g, &Clustering::singletons(4), &p).unwrap(), 0.0);
        }
    }

    #[test]
    fn two_triangles_modularity_is_half() {
        let g = Graph::from_edges(
            0,
            vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)],
            false,
        )
        .unwrap();
        let c = Clustering::from_labels(vec![0, 0, 0, 1, 1, 1]);
        assert_relative_eq!(modularity(&g, &c, 1.0).unwrap(), 0.5);
    }

    #[test]
    fn overlapping_is_rejected() {
        let g = edge();
        let c = Clustering::overlapping(2, vec![vec![0, 1], vec![1]]);
        assert!(lambda_cc_objective(&g, &c, &LambdaCCParams::default()).is_err());
        assert!(modularity(&Graph::empty(2), &Clustering::singletons(2), 1.0).is_err());
    }
}
