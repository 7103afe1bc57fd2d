//! Louvain-style maximization of the LambdaCC objective.
//!
//! Each level runs local search (every vertex moves to the neighboring
//! cluster, or a fresh singleton, with the largest positive gain) until a
//! sweep makes no move, then contracts clusters into super-vertices and
//! recurses. After unfolding, a last local search runs on the original graph
//! so the result cannot be improved by moving any single vertex.
//!
//! In parallel mode sweeps are asynchronous: vertices read possibly stale
//! cluster assignments and totals, and updates go through atomics.

use std::sync::atomic::{AtomicBool, AtomicU32, AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::lambdacc::{LambdaCCParams, VertexWeightMode};
use super::level::LevelGraph;
use crate::cancel::CancelToken;
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::util::{stream_rng, AtomicF64};

/// Improvements below this are treated as zero.
const GAIN_EPS: f64 = 1e-12;

pub fn cluster_correlation(g: &Graph, p: &LambdaCCParams) -> Result<Clustering> {
    cluster_correlation_with_cancel(g, p, &CancelToken::never())
}

pub fn cluster_correlation_with_cancel(
    g: &Graph,
    p: &LambdaCCParams,
    cancel: &CancelToken,
) -> Result<Clustering> {
    p.validate()?;
    let n = g.num_vertices();
    if n == 0 {
        return Ok(Clustering::singletons(0));
    }
    let base = LevelGraph::from_graph(g, p.vertex_weight_mode.vertex_weights(g));
    let lambda = p.resolution;

    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut level = base.clone();
    let mut contracted = false;
    for round in 0..p.max_rounds {
        cancel.check()?;
        let init: Vec<u32> = (0..level.n() as u32).collect();
        let (assign, moves) = local_search(&level, lambda, init, p, round as u64, cancel)?;
        if moves == 0 {
            break;
        }
        let (dense, k) = densify(&assign);
        for l in labels.iter_mut() {
            *l = dense[*l as usize];
        }
        if k == level.n() {
            break;
        }
        level = level.contract(&dense, k);
        contracted = true;
        if level.num_slots() == 0 {
            break;
        }
    }

    if contracted {
        let (refined, _) = local_search(&base, lambda, labels, p, u64::MAX, cancel)?;
        labels = refined;
    }
    Ok(Clustering::from_labels(labels))
}

/// Modularity clustering: LambdaCC with weighted-degree vertex weights and
/// resolution `gamma / (2W)`, `W` the total edge weight.
pub fn cluster_modularity(g: &Graph, gamma: f64, base: &LambdaCCParams) -> Result<Clustering> {
    cluster_modularity_with_cancel(g, gamma, base, &CancelToken::never())
}

pub fn modularity_params(g: &Graph, gamma: f64, base: &LambdaCCParams) -> Result<LambdaCCParams> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma must be > 0, got {gamma}")));
    }
    let total = g.total_weight();
    if g.num_edges() == 0 || total <= 0.0 {
        return Err(Error::InvalidInput(
            "modularity resolution is undefined for a graph without edges".into(),
        ));
    }
    Ok(LambdaCCParams {
        resolution: gamma / (2.0 * total),
        vertex_weight_mode: VertexWeightMode::WeightedDegree,
        gamma: Some(gamma),
        ..base.clone()
    })
}

pub fn cluster_modularity_with_cancel(
    g: &Graph,
    gamma: f64,
    base: &LambdaCCParams,
    cancel: &CancelToken,
) -> Result<Clustering> {
    let p = modularity_params(g, gamma, base)?;
    cluster_correlation_with_cancel(g, &p, cancel)
}

fn densify(assign: &[u32]) -> (Vec<u32>, usize) {
    let mut map = vec![u32::MAX; assign.len()];
    let mut next = 0u32;
    let dense = assign
        .iter()
        .map(|&c| {
            let slot = &mut map[c as usize];
            if *slot == u32::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect();
    (dense, next as usize)
}

struct SearchState {
    assign: Vec<AtomicU32>,
    cluster_k: Vec<AtomicF64>,
    cluster_size: Vec<AtomicU32>,
    /// Empty cluster ids, popped from the back (lowest id last).
    free: Mutex<Vec<u32>>,
}

impl SearchState {
    fn new(lg: &LevelGraph, init: &[u32]) -> Self {
        let n = lg.n();
        let mut k = vec![0.0; n];
        let mut size = vec![0u32; n];
        for (v, &c) in init.iter().enumerate() {
            k[c as usize] += lg.node_weight[v];
            size[c as usize] += 1;
        }
        let free = (0..n as u32).rev().filter(|&c| size[c as usize] == 0).collect();
        SearchState {
            assign: init.iter().map(|&c| AtomicU32::new(c)).collect(),
            cluster_k: k.into_iter().map(AtomicF64::new).collect(),
            cluster_size: size.into_iter().map(AtomicU32::new).collect(),
            free: Mutex::new(free),
        }
    }

    fn take_empty(&self) -> Option<u32> {
        let mut free = self.free.lock().unwrap();
        while let Some(c) = free.pop() {
            if self.cluster_size[c as usize].load(Ordering::Acquire) == 0 {
                return Some(c);
            }
        }
        None
    }

    fn relocate(&self, v: usize, from: u32, to: u32, kv: f64) {
        self.assign[v].store(to, Ordering::Release);
        self.cluster_k[from as usize].add(-kv);
        self.cluster_k[to as usize].add(kv);
        self.cluster_size[to as usize].fetch_add(1, Ordering::AcqRel);
        if self.cluster_size[from as usize].fetch_sub(1, Ordering::AcqRel) == 1 {
            self.free.lock().unwrap().push(from);
        }
    }
}

enum Move {
    Stay,
    Join(u32),
    Isolate,
}

fn best_move(
    lg: &LevelGraph,
    lambda: f64,
    st: &SearchState,
    v: usize,
    scratch: &mut Vec<(u32, f64)>,
) -> Move {
    let (targets, weights) = lg.row(v);
    if targets.is_empty() {
        return Move::Stay;
    }
    let own = st.assign[v].load(Ordering::Acquire);
    let kv = lg.node_weight[v];

    scratch.clear();
    scratch.extend(
        targets
            .iter()
            .zip(weights)
            .map(|(&u, &w)| (st.assign[u as usize].load(Ordering::Relaxed), w)),
    );
    scratch.sort_unstable_by_key(|p| p.0);

    let mut w_own = 0.0;
    let mut i = 0;
    let mut candidates = 0;
    while i < scratch.len() {
        let c = scratch[i].0;
        let mut w = 0.0;
        while i < scratch.len() && scratch[i].0 == c {
            w += scratch[i].1;
            i += 1;
        }
        if c == own {
            w_own = w;
        } else {
            scratch[candidates] = (c, w);
            candidates += 1;
        }
    }
    let k_own_rest = st.cluster_k[own as usize].load() - kv;
    let stay_value = w_own - lambda * kv * k_own_rest;

    let mut best_gain = 0.0;
    let mut best: Option<u32> = None;
    for &(c, w) in &scratch[..candidates] {
        let gain = w - lambda * kv * st.cluster_k[c as usize].load() - stay_value;
        // candidates are ascending, so strict > keeps the lowest id on ties
        if gain > best_gain {
            best_gain = gain;
            best = Some(c);
        }
    }
    let isolate_gain = -stay_value;
    let own_alone = st.cluster_size[own as usize].load(Ordering::Relaxed) <= 1;
    if !own_alone && isolate_gain > best_gain && isolate_gain > GAIN_EPS {
        return Move::Isolate;
    }
    match best {
        Some(c) if best_gain > GAIN_EPS => Move::Join(c),
        _ => Move::Stay,
    }
}

/// Runs sweeps until a sweep over every vertex makes no move (or
/// `max_sweeps`). Between full sweeps only vertices next to a recent move are
/// revisited. Returns the final assignment and the total number of moves.
fn local_search(
    lg: &LevelGraph,
    lambda: f64,
    init: Vec<u32>,
    p: &LambdaCCParams,
    level: u64,
    cancel: &CancelToken,
) -> Result<(Vec<u32>, usize)> {
    let n = lg.n();
    let st = SearchState::new(lg, &init);
    let mut order: Vec<usize> = (0..n).collect();
    let mut total_moves = 0;
    let active: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(true)).collect();
    let next: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(false)).collect();
    let mut full = true;

    let visit = |v: usize, scratch: &mut Vec<(u32, f64)>| -> bool {
        if !active[v].load(Ordering::Relaxed) {
            return false;
        }
        let from = st.assign[v].load(Ordering::Acquire);
        let to = match best_move(lg, lambda, &st, v, scratch) {
            Move::Stay => return false,
            Move::Join(to) => to,
            Move::Isolate => match st.take_empty() {
                Some(to) => to,
                None => return false,
            },
        };
        st.relocate(v, from, to, lg.node_weight[v]);
        next[v].store(true, Ordering::Relaxed);
        for &u in lg.row(v).0 {
            next[u as usize].store(true, Ordering::Relaxed);
        }
        true
    };

    for sweep in 0..p.max_sweeps {
        cancel.check()?;
        order.shuffle(&mut stream_rng(p.seed, level, sweep as u64));
        let moves = if p.deterministic {
            let mut scratch = Vec::new();
            order.iter().filter(|&&v| visit(v, &mut scratch)).count()
        } else {
            let moves = AtomicUsize::new(0);
            order.par_chunks(512).for_each_init(Vec::new, |scratch, chunk| {
                let m = chunk.iter().filter(|&&v| visit(v, scratch)).count();
                moves.fetch_add(m, Ordering::Relaxed);
            });
            moves.into_inner()
        };
        total_moves += moves;
        if moves == 0 && full {
            break;
        }
        // cluster totals shift globally, so a quiet partial sweep is
        // confirmed by a full one
        full = moves == 0;
        active.par_iter().zip(&next).for_each(|(a, b)| {
            a.store(full || b.swap(false, Ordering::Relaxed), Ordering::Relaxed);
        });
    }
    let assign = st.assign.into_iter().map(AtomicU32::into_inner).collect();
    Ok((assign, total_moves))
}

/// Objective change from moving `v` (in flat `labels`) to cluster `target`,
/// or to a fresh singleton when `target` is `None`. Exposed for audits.
pub fn single_move_gain(
    g: &Graph,
    labels: &[u32],
    vertex_weights: &[f64],
    lambda: f64,
    v: NodeId,
    target: Option<u32>,
) -> f64 {
    let own = labels[v as usize];
    let kv = vertex_weights[v as usize];
    let mut k_own = 0.0;
    let mut k_target = 0.0;
    for (u, &l) in labels.iter().enumerate() {
        if u as NodeId == v {
            continue;
        }
        if l == own {
            k_own += vertex_weights[u];
        }
        if Some(l) == target {
            k_target += vertex_weights[u];
        }
    }
    let mut w_own = 0.0;
    let mut w_target = 0.0;
    for (u, w) in g.edges_of(v) {
        let l = labels[u as usize];
        if l == own {
            w_own += w;
        }
        if Some(l) == target {
            w_target += w;
        }
    }
    (w_target - lambda * kv * k_target) - (w_own - lambda * kv * k_own)
}
