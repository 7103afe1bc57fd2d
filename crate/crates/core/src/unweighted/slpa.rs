//! Speaker-listener label propagation (SLPA), producing overlapping
//! communities.
//!
//! Each vertex keeps a memory of labels, initially its own id. In every round
//! each listener receives one label from each neighbor, drawn uniformly from
//! that neighbor's memory (so proportional to label frequency), and appends
//! the most frequent received label (smallest on ties). Speakers draw from
//! the memory as it stood at the start of the round, which makes the result a
//! function of the seed alone. Afterwards a vertex belongs to the community
//! of every label that fills at least a fraction `r` of its memory.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cancel::CancelToken;
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::util::stream_rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlpaParams {
    pub rounds: usize,
    /// Minimum memory frequency for a label to count as a membership.
    pub threshold: f64,
    pub seed: u64,
}

impl Default for SlpaParams {
    fn default() -> Self {
        SlpaParams {
            rounds: 20,
            threshold: 0.3,
            seed: 0,
        }
    }
}

impl SlpaParams {
    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidParameter("rounds must be >= 1".into()));
        }
        // thresholds above 1 are accepted and simply leave every vertex alone
        if !(self.threshold > 0.0) || !self.threshold.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "threshold must be > 0, got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

pub fn cluster_slpa(g: &Graph, p: &SlpaParams) -> Result<Clustering> {
    cluster_slpa_with_cancel(g, p, &CancelToken::never())
}

pub fn cluster_slpa_with_cancel(g: &Graph, p: &SlpaParams, cancel: &CancelToken) -> Result<Clustering> {
    let memory = slpa_memories(g, p, cancel)?;
    Ok(extract_communities(g.num_vertices(), &memory, p.threshold))
}

/// Runs the propagation phase and returns every vertex's label memory.
pub fn slpa_memories(g: &Graph, p: &SlpaParams, cancel: &CancelToken) -> Result<Vec<Vec<u32>>> {
    p.validate()?;
    let n = g.num_vertices();
    let mut memory: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    for round in 0..p.rounds {
        cancel.check()?;
        let heard: Vec<Option<u32>> = (0..n as NodeId)
            .into_par_iter()
            .map_init(Vec::new, |received, u| {
                let nbrs = g.neighbors(u);
                if nbrs.is_empty() {
                    return None;
                }
                let mut rng = stream_rng(p.seed, round as u64, u as u64);
                received.clear();
                for &v in nbrs {
                    let m = &memory[v as usize];
                    received.push(m[rng.random_range(0..m.len())]);
                }
                received.sort_unstable();
                Some(most_frequent_sorted(received))
            })
            .collect();
        for (m, h) in memory.iter_mut().zip(heard) {
            if let Some(l) = h {
                m.push(l);
            }
        }
    }
    Ok(memory)
}

fn most_frequent_sorted(xs: &[u32]) -> u32 {
    let (mut best, mut best_count) = (xs[0], 0);
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        if j - i > best_count {
            best = xs[i];
            best_count = j - i;
        }
        i = j;
    }
    best
}

/// Groups vertices by every label reaching frequency `r` in their memory.
pub fn extract_communities(n: usize, memory: &[Vec<u32>], r: f64) -> Clustering {
    let mut groups: HashMap<u32, Vec<NodeId>> = HashMap::new();
    let mut loners = Vec::new();
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for (v, m) in memory.iter().enumerate() {
        counts.clear();
        for &l in m {
            *counts.entry(l).or_default() += 1;
        }
        let len = m.len() as f64;
        let mut kept = false;
        for (&l, &c) in &counts {
            if c as f64 / len >= r {
                groups.entry(l).or_default().push(v as NodeId);
                kept = true;
            }
        }
        if !kept {
            loners.push(vec![v as NodeId]);
        }
    }
    let mut sets: Vec<Vec<NodeId>> = groups.into_values().collect();
    sets.extend(loners);
    Clustering::overlapping(n, sets)
}
