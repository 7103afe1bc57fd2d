//! Low-diameter decomposition via exponentially shifted BFS.
//!
//! Every vertex `v` draws a shift `δ_v ~ Exp(β)` and would start its own BFS
//! at time `δ_max - δ_v`. A vertex joins the center `u` minimizing
//! `δ_max - δ_u + dist(u, v)`, i.e. maximizing `δ_u - dist(u, v)`. The search
//! advances in unit rounds: in round `t` every vertex whose best arrival time
//! falls in `[t, t + 1)` settles, either as a new center or through a
//! neighbor settled in round `t - 1`.

use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cancel::CancelToken;
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::util::stream_rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LddParams {
    pub beta: f64,
    pub seed: u64,
}

impl Default for LddParams {
    fn default() -> Self {
        LddParams { beta: 0.2, seed: 0 }
    }
}

impl LddParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in (0, 1], got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

pub fn cluster_ldd(g: &Graph, p: &LddParams) -> Result<Clustering> {
    cluster_ldd_with_cancel(g, p, &CancelToken::never())
}

const UNSETTLED: u32 = u32::MAX;

pub fn cluster_ldd_with_cancel(g: &Graph, p: &LddParams, cancel: &CancelToken) -> Result<Clustering> {
    p.validate()?;
    let n = g.num_vertices();
    if n == 0 {
        return Ok(Clustering::singletons(0));
    }
    let exp = Exp::new(p.beta).expect("validated rate");
    let shift: Vec<f64> = (0..n as u64)
        .into_par_iter()
        .map(|v| exp.sample(&mut stream_rng(p.seed, v, 0x1dd)))
        .collect();
    let max_shift = shift.iter().copied().fold(0.0, f64::max);
    let start: Vec<f64> = shift.iter().map(|d| max_shift - d).collect();

    let last_bucket = start.iter().map(|s| s.floor() as usize).max().unwrap_or(0);
    let mut buckets: Vec<Vec<NodeId>> = vec![Vec::new(); last_bucket + 1];
    for (v, s) in start.iter().enumerate() {
        buckets[s.floor() as usize].push(v as NodeId);
    }

    let mut center = vec![UNSETTLED; n];
    let mut arrival = vec![f64::INFINITY; n];
    let mut round_of = vec![u32::MAX; n];
    let mut frontier: Vec<NodeId> = Vec::new();
    let mut settled = 0usize;
    let mut round = 0usize;

    while settled < n {
        cancel.check()?;
        let mut candidates: Vec<NodeId> = frontier
            .par_iter()
            .flat_map_iter(|&u| g.neighbors(u).iter().copied())
            .filter(|&v| center[v as usize] == UNSETTLED)
            .collect();
        if let Some(b) = buckets.get(round) {
            candidates.extend(b.iter().copied().filter(|&v| center[v as usize] == UNSETTLED));
        }
        candidates.par_sort_unstable();
        candidates.dedup();

        let prev = round.wrapping_sub(1) as u32;
        let decided: Vec<(NodeId, f64, u32)> = candidates
            .par_iter()
            .map(|&v| {
                let mut best = (f64::INFINITY, UNSETTLED);
                if start[v as usize].floor() as usize == round {
                    best = (start[v as usize], v);
                }
                for &u in g.neighbors(v) {
                    if round > 0 && round_of[u as usize] == prev {
                        let cand = (arrival[u as usize] + 1.0, center[u as usize]);
                        if cand.0 < best.0 || (cand.0 == best.0 && cand.1 < best.1) {
                            best = cand;
                        }
                    }
                }
                (v, best.0, best.1)
            })
            .collect();

        frontier.clear();
        for (v, t, c) in decided {
            debug_assert_ne!(c, UNSETTLED);
            center[v as usize] = c;
            arrival[v as usize] = t;
            round_of[v as usize] = round as u32;
            frontier.push(v);
        }
        settled += frontier.len();
        round += 1;
        if frontier.is_empty() {
            // nothing propagating; skip ahead to the next bucket with starters
            while round < buckets.len() && buckets[round].is_empty() {
                round += 1;
            }
        }
    }
    Ok(Clustering::from_member_labels(&center))
}
