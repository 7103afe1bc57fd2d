//! Structural graph clustering (SCAN).
//!
//! `σ(u, v) = |N̄(u) ∩ N̄(v)| / sqrt(|N̄(u)| |N̄(v)|)` over closed
//! neighborhoods. Cores have at least `μ` neighbors with `σ >= ε`; cores
//! linked by similar edges form clusters, and a non-core vertex with a
//! similar core neighbor joins the cluster of the lowest-id such core.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{ConcurrentUnionFind, Graph, NodeId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanParams {
    pub epsilon: f64,
    pub mu: usize,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams { epsilon: 0.6, mu: 2 }
    }
}

impl ScanParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be >= 0, got {}",
                self.epsilon
            )));
        }
        if self.mu == 0 {
            return Err(Error::InvalidParameter("mu must be >= 1".into()));
        }
        Ok(())
    }
}

fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

fn similarity_unchecked(g: &Graph, u: NodeId, v: NodeId) -> f64 {
    let common = intersection_size(g.neighbors(u), g.neighbors(v)) + 2;
    common as f64 / (((g.degree(u) + 1) * (g.degree(v) + 1)) as f64).sqrt()
}

/// Structural similarity of the edge `{u, v}`.
pub fn structural_similarity(g: &Graph, u: NodeId, v: NodeId) -> Result<f64> {
    if u as usize >= g.num_vertices() || !g.has_edge(u, v) {
        return Err(Error::InvalidInput(format!("({u}, {v}) is not an edge")));
    }
    Ok(similarity_unchecked(g, u, v))
}

/// σ for every directed slot, aligned with [`Graph::neighbor_slots`].
pub fn structural_similarities(g: &Graph) -> Vec<f64> {
    let n = g.num_vertices() as NodeId;
    let mut sims = vec![0.0; 2 * g.num_edges()];
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|u| g.neighbors(u).iter().map(|&v| similarity_unchecked(g, u, v)).collect())
        .collect();
    for (u, row) in rows.into_iter().enumerate() {
        let r = g.slot_range(u as NodeId);
        sims[r].copy_from_slice(&row);
    }
    sims
}

pub fn cluster_scan(g: &Graph, p: &ScanParams) -> Result<Clustering> {
    p.validate()?;
    let n = g.num_vertices();
    let sims = structural_similarities(g);
    let similar = |slot: usize| sims[slot] >= p.epsilon;

    let is_core: Vec<bool> = (0..n as NodeId)
        .into_par_iter()
        .map(|u| g.slot_range(u).filter(|&s| similar(s)).count() >= p.mu)
        .collect();

    let uf = ConcurrentUnionFind::new(n);
    (0..n as NodeId).into_par_iter().filter(|&u| is_core[u as usize]).for_each(|u| {
        for s in g.slot_range(u) {
            let v = g.neighbor_slots()[s];
            if u < v && is_core[v as usize] && similar(s) {
                uf.union(u, v);
            }
        }
    });
    let core_root = uf.roots();

    let labels: Vec<NodeId> = (0..n as NodeId)
        .into_par_iter()
        .map(|u| {
            if is_core[u as usize] {
                return core_root[u as usize];
            }
            // neighbors are ascending, so the first hit is the lowest-id core
            g.slot_range(u)
                .find(|&s| similar(s) && is_core[g.neighbor_slots()[s] as usize])
                .map_or(u, |s| core_root[g.neighbor_slots()[s] as usize])
        })
        .collect();
    Ok(Clustering::from_labels(labels))
}
