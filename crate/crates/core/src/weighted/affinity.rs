//! Affinity clustering with a geometrically decaying edge threshold.
//!
//! Round `r` uses threshold `initial_threshold * decay^r`. Every current
//! cluster picks its single best incident edge (maximum average linkage) if
//! that edge clears the threshold; the components spanned by the picked
//! edges are merged and the cluster graph is contracted with average
//! linkage. Exact weight ties are broken by the number of common neighbors
//! in the current cluster graph, then by lower neighbor id.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dendrogram::Dendrogram;
use super::level::LevelGraph;
use crate::cancel::CancelToken;
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{ConcurrentUnionFind, Graph, NodeId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffinityParams {
    pub num_rounds: usize,
    pub initial_threshold: f64,
    pub decay: f64,
}

impl Default for AffinityParams {
    fn default() -> Self {
        AffinityParams {
            num_rounds: 20,
            initial_threshold: 0.5,
            decay: 1.0,
        }
    }
}

impl AffinityParams {
    pub fn validate(&self) -> Result<()> {
        if self.num_rounds == 0 {
            return Err(Error::InvalidParameter("num_rounds must be >= 1".into()));
        }
        if !(self.decay > 0.0 && self.decay <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "decay must lie in (0, 1], got {}",
                self.decay
            )));
        }
        if !(self.initial_threshold >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "initial_threshold must be >= 0, got {}",
                self.initial_threshold
            )));
        }
        Ok(())
    }
}

pub fn cluster_affinity(g: &Graph, p: &AffinityParams) -> Result<(Clustering, Dendrogram)> {
    cluster_affinity_with_cancel(g, p, &CancelToken::never())
}

fn common_neighbors(a: &[NodeId], b: &[NodeId]) -> usize {
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

/// Best qualifying neighbor of `u` as `(neighbor, linkage)`.
fn best_edge(lg: &LevelGraph, u: usize, threshold: f64) -> Option<(u32, f64)> {
    let (targets, weights) = lg.row(u);
    let su = lg.node_weight[u];
    let mut best: Option<(u32, f64)> = None;
    let mut tied = false;
    for (&v, &w) in targets.iter().zip(weights) {
        let l = w / (su * lg.node_weight[v as usize]);
        if l < threshold {
            continue;
        }
        match best {
            Some((_, bl)) if l < bl => {}
            Some((_, bl)) if l == bl => tied = true,
            _ => {
                best = Some((v, l));
                tied = false;
            }
        }
    }
    let (first, top) = best?;
    if !tied {
        return Some((first, top));
    }
    let mut pick = (first, common_neighbors(targets, lg.row(first as usize).0));
    for (&v, &w) in targets.iter().zip(weights) {
        if v <= first || w / (su * lg.node_weight[v as usize]) != top {
            continue;
        }
        let c = common_neighbors(targets, lg.row(v as usize).0);
        if c > pick.1 {
            pick = (v, c);
        }
    }
    Some((pick.0, top))
}

pub fn cluster_affinity_with_cancel(
    g: &Graph,
    p: &AffinityParams,
    cancel: &CancelToken,
) -> Result<(Clustering, Dendrogram)> {
    p.validate()?;
    let n = g.num_vertices();
    let mut dendrogram = Dendrogram::new(n);
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut level = LevelGraph::from_graph(g, vec![1.0; n]);
    let mut level_node: Vec<u32> = (0..n as u32).collect();
    let mut threshold = p.initial_threshold;

    for _round in 0..p.num_rounds {
        cancel.check()?;
        if level.num_slots() == 0 {
            break;
        }
        let tau = threshold;
        threshold *= p.decay;
        let picks: Vec<Option<(u32, f64)>> = (0..level.n())
            .into_par_iter()
            .map(|u| best_edge(&level, u, tau))
            .collect();

        let mut selected: Vec<(u32, u32, f64)> = picks
            .iter()
            .enumerate()
            .filter_map(|(u, pick)| pick.map(|(v, l)| ((u as u32).min(v), (u as u32).max(v), l)))
            .collect();
        if selected.is_empty() {
            if p.decay == 1.0 {
                break;
            }
            continue;
        }
        selected.sort_unstable_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
        selected.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);

        let uf = ConcurrentUnionFind::new(level.n());
        let mut root_node = level_node.clone();
        for &(a, b, l) in &selected {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                continue;
            }
            let parent = dendrogram.merge(root_node[ra as usize], root_node[rb as usize], l);
            uf.union(ra, rb);
            root_node[uf.find(ra) as usize] = parent;
        }

        let roots = uf.roots();
        let mut dense = vec![u32::MAX; level.n()];
        let mut k = 0u32;
        let mut next_node = Vec::new();
        for &r in &roots {
            if dense[r as usize] == u32::MAX {
                dense[r as usize] = k;
                next_node.push(root_node[r as usize]);
                k += 1;
            }
        }
        let level_labels: Vec<u32> = roots.iter().map(|&r| dense[r as usize]).collect();
        for l in labels.iter_mut() {
            *l = level_labels[*l as usize];
        }
        level = level.contract(&level_labels, k as usize);
        level_node = next_node;
    }
    Ok((Clustering::from_labels(labels), dendrogram))
}
