//! Triangle-weighted connectivity (TECTONIC).
//!
//! Edge `{u, v}` gets weight `t(u, v) / (deg(u) + deg(v))`, where `t` is the
//! number of triangles through the edge; clusters are the components of the
//! edges with weight at least `θ`.
//!
//! Triangles are enumerated once each by orienting every edge from lower to
//! higher `(degree, id)` rank and intersecting out-lists.

use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{ConcurrentUnionFind, Graph, NodeId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TectonicParams {
    pub theta: f64,
}

impl Default for TectonicParams {
    fn default() -> Self {
        TectonicParams { theta: 0.1 }
    }
}

impl TectonicParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta >= 0.0) {
            return Err(Error::InvalidParameter(format!("theta must be >= 0, got {}", self.theta)));
        }
        Ok(())
    }
}

/// Rank-oriented adjacency: for each vertex the higher-ranked neighbors
/// (ascending id) and the CSR slot of each such edge.
struct Oriented {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    slots: Vec<usize>,
}

fn orient(g: &Graph) -> Oriented {
    let n = g.num_vertices();
    let rank = |u: NodeId| (g.degree(u), u);
    let rows: Vec<Vec<(NodeId, usize)>> = (0..n as NodeId)
        .into_par_iter()
        .map(|u| {
            let base = g.slot_range(u).start;
            g.neighbors(u)
                .iter()
                .enumerate()
                .filter(|&(_, &v)| rank(v) > rank(u))
                .map(|(i, &v)| (v, base + i))
                .collect()
        })
        .collect();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    let mut targets = Vec::with_capacity(g.num_edges());
    let mut slots = Vec::with_capacity(g.num_edges());
    for row in rows {
        for (v, s) in row {
            targets.push(v);
            slots.push(s);
        }
        offsets.push(targets.len());
    }
    Oriented {
        offsets,
        targets,
        slots,
    }
}

/// Number of triangles through each edge, one value per directed slot.
pub fn edge_triangle_counts(g: &Graph) -> Vec<u32> {
    let o = orient(g);
    let counts: Vec<AtomicU32> = (0..g.neighbor_slots().len()).map(|_| AtomicU32::new(0)).collect();
    let bump = |s: usize| counts[s].fetch_add(1, Ordering::Relaxed);
    (0..g.num_vertices()).into_par_iter().with_min_len(64).for_each(|u| {
        for a in o.offsets[u]..o.offsets[u + 1] {
            let v = o.targets[a] as usize;
            let (mut i, mut j) = (o.offsets[u], o.offsets[v]);
            let (iend, jend) = (o.offsets[u + 1], o.offsets[v + 1]);
            while i < iend && j < jend {
                match o.targets[i].cmp(&o.targets[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        bump(o.slots[a]);
                        bump(o.slots[i]);
                        bump(o.slots[j]);
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    });
    let mut counts: Vec<u32> = counts.into_iter().map(AtomicU32::into_inner).collect();
    // mirror each oriented slot onto its reverse slot
    for u in 0..g.num_vertices() {
        for a in o.offsets[u]..o.offsets[u + 1] {
            let v = o.targets[a];
            let back = g.slot_range(v).start
                + g.neighbors(v).binary_search(&(u as NodeId)).expect("symmetric graph");
            counts[back] = counts[o.slots[a]];
        }
    }
    counts
}

/// Total number of triangles.
pub fn triangle_count(g: &Graph) -> u64 {
    edge_triangle_counts(g).iter().map(|&t| t as u64).sum::<u64>() / 6
}

/// TECTONIC weight per directed slot, aligned with [`Graph::neighbor_slots`].
pub fn tectonic_edge_weights(g: &Graph) -> Vec<f64> {
    let counts = edge_triangle_counts(g);
    let mut weights = vec![0.0; counts.len()];
    for u in 0..g.num_vertices() as NodeId {
        for s in g.slot_range(u) {
            let v = g.neighbor_slots()[s];
            weights[s] = counts[s] as f64 / (g.degree(u) + g.degree(v)) as f64;
        }
    }
    weights
}

pub fn cluster_tectonic(g: &Graph, p: &TectonicParams) -> Result<Clustering> {
    p.validate()?;
    let weights = tectonic_edge_weights(g);
    let uf = ConcurrentUnionFind::new(g.num_vertices());
    (0..g.num_vertices() as NodeId).into_par_iter().for_each(|u| {
        for s in g.slot_range(u) {
            let v = g.neighbor_slots()[s];
            if u < v && weights[s] >= p.theta {
                uf.union(u, v);
            }
        }
    });
    Ok(Clustering::from_labels(uf.roots()))
}
