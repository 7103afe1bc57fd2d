use rayon::prelude::*;

use crate::graph::{Graph, NodeId};

/// Weighted cluster graph used while coarsening: CSR adjacency without
/// self-loops plus a scalar weight per node (vertex weight `k` for LambdaCC,
/// cluster size for linkage-based clusterers).
#[derive(Clone, Debug)]
pub(crate) struct LevelGraph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    weights: Vec<f64>,
    pub node_weight: Vec<f64>,
}

impl LevelGraph {
    pub fn from_graph(g: &Graph, node_weight: Vec<f64>) -> Self {
        debug_assert_eq!(node_weight.len(), g.num_vertices());
        LevelGraph {
            offsets: g.offsets().to_vec(),
            targets: g.neighbor_slots().to_vec(),
            weights: g.weight_slots().to_vec(),
            node_weight,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.node_weight.len()
    }

    #[inline]
    pub fn row(&self, u: usize) -> (&[NodeId], &[f64]) {
        let r = self.offsets[u]..self.offsets[u + 1];
        (&self.targets[r.clone()], &self.weights[r])
    }

    pub fn num_slots(&self) -> usize {
        self.targets.len()
    }

    /// Collapses every cluster of `labels` (dense in `0..k`) to one node.
    /// Parallel edges are summed, intra-cluster edges dropped and node weights
    /// summed.
    pub fn contract(&self, labels: &[u32], k: usize) -> LevelGraph {
        let n = self.n();
        // counting sort of members by cluster
        let mut start = vec![0usize; k + 1];
        for &l in labels {
            start[l as usize + 1] += 1;
        }
        for c in 0..k {
            start[c + 1] += start[c];
        }
        let mut fill = start.clone();
        let mut members = vec![0 as NodeId; n];
        for (v, &l) in labels.iter().enumerate() {
            members[fill[l as usize]] = v as NodeId;
            fill[l as usize] += 1;
        }

        let rows: Vec<(Vec<(NodeId, f64)>, f64)> = (0..k)
            .into_par_iter()
            .with_min_len(64)
            .map_init(Vec::new, |scratch: &mut Vec<(NodeId, f64)>, c| {
                scratch.clear();
                let mut weight = 0.0;
                for &v in &members[start[c]..start[c + 1]] {
                    weight += self.node_weight[v as usize];
                    let (t, w) = self.row(v as usize);
                    for (&u, &w) in t.iter().zip(w) {
                        let lu = labels[u as usize];
                        if lu as usize != c {
                            scratch.push((lu, w));
                        }
                    }
                }
                (merge_runs(scratch), weight)
            })
            .collect();

        let mut offsets = Vec::with_capacity(k + 1);
        offsets.push(0);
        let mut total = 0;
        for (row, _) in &rows {
            total += row.len();
            offsets.push(total);
        }
        let mut targets = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut node_weight = Vec::with_capacity(k);
        for (row, nw) in rows {
            for (t, w) in row {
                targets.push(t);
                weights.push(w);
            }
            node_weight.push(nw);
        }
        LevelGraph {
            offsets,
            targets,
            weights,
            node_weight,
        }
    }
}

/// Sorts `(key, weight)` pairs by key and sums weights of equal keys.
pub(crate) fn merge_runs(pairs: &mut [(NodeId, f64)]) -> Vec<(NodeId, f64)> {
    pairs.sort_unstable_by_key(|p| p.0);
    let mut out: Vec<(NodeId, f64)> = Vec::with_capacity(pairs.len());
    for &(k, w) in pairs.iter() {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += w,
            _ => out.push((k, w)),
        }
    }
    out
}
