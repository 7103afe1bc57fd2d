//! (1+ε)-approximate average-linkage agglomerative clustering.
//!
//! The linkage of clusters `A` and `B` is `w(A, B) / (|A| |B|)`, where
//! `w(A, B)` is the total weight of edges between them. Under average
//! linkage a merge never raises any linkage above the larger of the two it
//! replaces, so the global maximum `T` only decreases. Work proceeds in
//! buckets: with `T` the current maximum, every pair whose linkage is at
//! least `T / (1 + ε)` is merged in matching-sized batches, affected linkages
//! are recomputed after each batch, and once no pair is left in the bucket
//! the maximum is recomputed. Each merge therefore satisfies
//! `similarity >= W_max / (1 + ε)` at the moment it is applied.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dendrogram::Dendrogram;
use super::level::merge_runs;
use crate::cancel::CancelToken;
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParHacParams {
    pub epsilon: f64,
    /// Merging stops once the best linkage falls below this value.
    pub weight_threshold: f64,
    /// Kept for run provenance; batch order is fixed by cluster id.
    pub seed: u64,
}

impl Default for ParHacParams {
    fn default() -> Self {
        ParHacParams {
            epsilon: 0.1,
            weight_threshold: 0.0,
            seed: 0,
        }
    }
}

impl ParHacParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be >= 0, got {}",
                self.epsilon
            )));
        }
        if !(self.weight_threshold >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weight_threshold must be >= 0, got {}",
                self.weight_threshold
            )));
        }
        Ok(())
    }
}

pub fn cluster_parhac(g: &Graph, p: &ParHacParams) -> Result<(Clustering, Dendrogram)> {
    cluster_parhac_with_cancel(g, p, &CancelToken::never())
}

struct ClusterGraph {
    /// Adjacency per live cluster slot: `(neighbor slot, total edge weight)`,
    /// ascending by neighbor.
    adj: Vec<Vec<(u32, f64)>>,
    size: Vec<f64>,
    node: Vec<u32>,
    alive: Vec<bool>,
}

impl ClusterGraph {
    #[inline]
    fn linkage(&self, a: u32, b: u32, w: f64) -> f64 {
        w / (self.size[a as usize] * self.size[b as usize])
    }

    fn max_linkage(&self) -> Option<f64> {
        (0..self.adj.len() as u32)
            .into_par_iter()
            .filter(|&a| self.alive[a as usize])
            .flat_map_iter(|a| {
                self.adj[a as usize]
                    .iter()
                    .map(move |&(b, w)| self.linkage(a, b, w))
            })
            .reduce_with(f64::max)
    }

    /// Pairs `(a, b, linkage)` with `a < b` incident to `sources` and linkage
    /// at least `lo`.
    fn pairs_above(&self, sources: &[u32], lo: f64) -> Vec<(u32, u32, f64)> {
        sources
            .par_iter()
            .flat_map_iter(|&a| {
                self.adj[a as usize].iter().filter_map(move |&(b, w)| {
                    let l = self.linkage(a, b, w);
                    (l >= lo).then(|| (a.min(b), a.max(b), l))
                })
            })
            .collect()
    }
}

pub fn cluster_parhac_with_cancel(
    g: &Graph,
    p: &ParHacParams,
    cancel: &CancelToken,
) -> Result<(Clustering, Dendrogram)> {
    p.validate()?;
    let n = g.num_vertices();
    let mut dendrogram = Dendrogram::new(n);
    let mut cg = ClusterGraph {
        adj: (0..n as NodeId)
            .into_par_iter()
            .map(|u| g.edges_of(u).collect())
            .collect(),
        size: vec![1.0; n],
        node: (0..n as u32).collect(),
        alive: vec![true; n],
    };
    let mut redirect: Vec<u32> = (0..n as u32).collect();
    let mut touched_mark = vec![false; n];
    let all: Vec<u32> = (0..n as u32).collect();

    while let Some(top) = cg.max_linkage() {
        cancel.check()?;
        if top < p.weight_threshold {
            break;
        }
        let lo = (top / (1.0 + p.epsilon)).max(p.weight_threshold);
        let live: Vec<u32> = all.iter().copied().filter(|&a| cg.alive[a as usize]).collect();
        let mut candidates = cg.pairs_above(&live, lo);

        while !candidates.is_empty() {
            cancel.check()?;
            candidates.par_sort_unstable_by(|x, y| {
                x.0.cmp(&y.0)
                    .then(y.2.total_cmp(&x.2))
                    .then(x.1.cmp(&y.1))
            });
            candidates.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);

            let mut batch = Vec::new();
            let mut leftover = Vec::new();
            for &(a, b, l) in &candidates {
                if !touched_mark[a as usize] && !touched_mark[b as usize] {
                    touched_mark[a as usize] = true;
                    touched_mark[b as usize] = true;
                    batch.push((a, b, l));
                } else {
                    leftover.push((a, b, l));
                }
            }

            for &(a, b, l) in &batch {
                let parent = dendrogram.merge(cg.node[a as usize], cg.node[b as usize], l);
                cg.node[a as usize] = parent;
                cg.size[a as usize] += cg.size[b as usize];
                cg.alive[b as usize] = false;
                redirect[b as usize] = a;
            }

            // survivors plus every neighbor of a merged pair get rebuilt rows
            let mut touched: Vec<u32> = Vec::new();
            for &(a, b, _) in &batch {
                touched.push(a);
                for &side in &[a, b] {
                    for &(x, _) in &cg.adj[side as usize] {
                        let x = redirect[x as usize];
                        if !touched_mark[x as usize] {
                            touched_mark[x as usize] = true;
                            touched.push(x);
                        }
                    }
                }
            }
            let partner: std::collections::HashMap<u32, u32> =
                batch.iter().map(|&(a, b, _)| (a, b)).collect();
            let adj = &cg.adj;
            let redirect_ref = &redirect;
            let rows: Vec<Vec<(u32, f64)>> = touched
                .par_iter()
                .map(|&x| {
                    let mut pairs: Vec<(u32, f64)> = adj[x as usize]
                        .iter()
                        .chain(partner.get(&x).into_iter().flat_map(|&b| adj[b as usize].iter()))
                        .map(|&(y, w)| (redirect_ref[y as usize], w))
                        .filter(|&(y, _)| y != x)
                        .collect();
                    merge_runs(&mut pairs)
                })
                .collect();
            for (&x, row) in touched.iter().zip(rows) {
                cg.adj[x as usize] = row;
            }
            for &(_, b, _) in &batch {
                cg.adj[b as usize] = Vec::new();
            }

            candidates = leftover
                .into_iter()
                .filter(|&(a, b, _)| !touched_mark[a as usize] && !touched_mark[b as usize])
                .collect();
            candidates.extend(cg.pairs_above(&touched, lo));

            for &x in &touched {
                touched_mark[x as usize] = false;
            }
            for &(a, b, _) in &batch {
                touched_mark[a as usize] = false;
                touched_mark[b as usize] = false;
            }
        }
    }

    let flat = dendrogram.cut(p.weight_threshold);
    Ok((flat, dendrogram))
}
