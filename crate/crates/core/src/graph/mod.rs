//! Immutable simple undirected graphs in CSR form.
//!
//! Every undirected edge `{u, v}` is stored twice, once in each endpoint's
//! adjacency row. Rows are sorted ascending by neighbor id, contain no
//! self-loops and no duplicates, and both slots of an edge carry the same
//! weight. Weights are nonnegative similarities; a missing edge behaves as
//! similarity zero and is never materialized.

mod components;
mod io;
mod kcore;
mod union_find;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use components::{connected_components, connected_components_masked};
pub use io::{
    load_binary, load_edge_list, load_graph, parse_edge_list, read_binary, save_binary,
    write_edge_list, BINARY_MAGIC,
};
pub use kcore::core_numbers;
pub use union_find::ConcurrentUnionFind;

/// Vertex identifier. Vertices of a graph with `n` vertices are `0..n`.
pub type NodeId = u32;

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    weights: Vec<f64>,
    weighted: bool,
}

impl Graph {
    /// Builds a graph from an arbitrary list of undirected edges.
    ///
    /// The input is symmetrized, self-loops are dropped and parallel edges are
    /// merged keeping the maximum weight. The vertex count is
    /// `max(min_vertices, largest id + 1)`.
    pub fn from_edges(
        min_vertices: usize,
        edges: Vec<(NodeId, NodeId, f64)>,
        weighted: bool,
    ) -> Result<Graph> {
        let mut n = min_vertices;
        for &(u, v, w) in &edges {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) has invalid weight {w}"
                )));
            }
            n = n.max(u as usize + 1).max(v as usize + 1);
        }
        if n > NodeId::MAX as usize {
            return Err(Error::InvalidInput(format!("too many vertices: {n}")));
        }

        let mut slots: Vec<(NodeId, NodeId, f64)> = edges
            .into_par_iter()
            .filter(|&(u, v, _)| u != v)
            .flat_map_iter(|(u, v, w)| {
                let w = if weighted { w } else { 1.0 };
                [(u, v, w), (v, u, w)]
            })
            .collect();
        slots.par_sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        slots.dedup_by(|next, kept| {
            if next.0 == kept.0 && next.1 == kept.1 {
                kept.2 = kept.2.max(next.2);
                true
            } else {
                false
            }
        });

        let mut offsets = vec![0usize; n + 1];
        for &(u, _, _) in &slots {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let (neighbors, weights) = slots.into_iter().map(|(_, v, w)| (v, w)).unzip();
        Ok(Graph {
            offsets,
            neighbors,
            weights,
            weighted,
        })
    }

    /// Builds a graph from raw CSR arrays, validating every invariant.
    pub fn from_csr(
        offsets: Vec<usize>,
        neighbors: Vec<NodeId>,
        weights: Vec<f64>,
        weighted: bool,
    ) -> Result<Graph> {
        let g = Graph {
            offsets,
            neighbors,
            weights,
            weighted,
        };
        g.validate()?;
        Ok(g)
    }

    /// An edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
            weights: Vec::new(),
            weighted: false,
        }
    }

    /// Checks the CSR invariants: sorted duplicate-free rows, no self-loops,
    /// symmetric slots with identical nonnegative weights.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFormat(msg));
        if self.offsets.is_empty() || self.offsets[0] != 0 {
            return bad("offsets must start at 0".into());
        }
        if self.neighbors.len() != self.weights.len() {
            return bad("neighbor and weight arrays differ in length".into());
        }
        if *self.offsets.last().unwrap() != self.neighbors.len() {
            return bad("last offset must equal the number of slots".into());
        }
        if !self.neighbors.len().is_multiple_of(2) {
            return bad("odd number of directed slots".into());
        }
        let n = self.num_vertices();
        for u in 0..n {
            if self.offsets[u] > self.offsets[u + 1] {
                return bad(format!("offsets decrease at vertex {u}"));
            }
        }
        (0..n).into_par_iter().try_for_each(|u| {
            let row = self.neighbors(u as NodeId);
            for (i, (&v, &w)) in row.iter().zip(self.weights_of(u as NodeId)).enumerate() {
                if v as usize >= n {
                    return bad(format!("neighbor {v} of {u} out of range"));
                }
                if v as usize == u {
                    return bad(format!("self-loop at {u}"));
                }
                if i > 0 && row[i - 1] >= v {
                    return bad(format!("row {u} not strictly ascending"));
                }
                if !(w >= 0.0) || !w.is_finite() {
                    return bad(format!("edge ({u}, {v}) has invalid weight {w}"));
                }
                match self.edge_weight(v, u as NodeId) {
                    Some(back) if back == w => {}
                    _ => return bad(format!("edge ({u}, {v}) is not symmetric")),
                }
            }
            Ok(())
        })
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u as usize + 1] - self.offsets[u as usize]
    }

    #[inline]
    pub fn slot_range(&self, u: NodeId) -> std::ops::Range<usize> {
        self.offsets[u as usize]..self.offsets[u as usize + 1]
    }

    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.neighbors[self.slot_range(u)]
    }

    #[inline]
    pub fn weights_of(&self, u: NodeId) -> &[f64] {
        &self.weights[self.slot_range(u)]
    }

    /// `(neighbor, weight)` pairs of `u`, ascending by neighbor.
    pub fn edges_of(&self, u: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.neighbors(u)
            .iter()
            .copied()
            .zip(self.weights_of(u).iter().copied())
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        (0..self.num_vertices() as NodeId).flat_map(move |u| {
            self.edges_of(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_slots(&self) -> &[NodeId] {
        &self.neighbors
    }

    pub fn weight_slots(&self) -> &[f64] {
        &self.weights
    }

    /// Weight of edge `{u, v}`, or `None` when absent.
    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let row = self.neighbors(u);
        row.binary_search(&v)
            .ok()
            .map(|i| self.weights[self.offsets[u as usize] + i])
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn weighted_degree(&self, u: NodeId) -> f64 {
        self.weights_of(u).iter().sum()
    }

    /// Sum of weights over undirected edges.
    pub fn total_weight(&self) -> f64 {
        self.weights.par_iter().sum::<f64>() / 2.0
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.weights.iter().copied().reduce(f64::max)
    }

    /// Returns a copy carrying different per-slot weights. `weights` must be
    /// symmetric and aligned with [`Graph::neighbor_slots`].
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Graph> {
        if weights.len() != self.weights.len() {
            return Err(Error::InvalidInput("weight vector length mismatch".into()));
        }
        Graph::from_csr(self.offsets.clone(), self.neighbors.clone(), weights, true)
    }
}
