//! Label propagation.
//!
//! Every vertex starts with its own id as label and repeatedly adopts the
//! label carried by most of its neighbors, ties going to the numerically
//! smallest label. Updates are applied in place: a vertex sees the labels its
//! predecessors in the sweep already produced.
//!
//! The sequential schedule visits vertices by ascending `(degree, id)`, so
//! peripheral vertices settle before the hubs that connect communities.
//! The parallel schedule runs the same update asynchronously over a seeded
//! permutation, reading possibly stale labels.

use std::sync::atomic::{AtomicU32, AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cancel::CancelToken;
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::util::stream_rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelPropMode {
    #[default]
    AsyncParallel,
    SequentialDeterministic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelPropParams {
    pub max_iters: usize,
    pub seed: u64,
    pub mode: LabelPropMode,
}

impl Default for LabelPropParams {
    fn default() -> Self {
        LabelPropParams {
            max_iters: 100,
            seed: 0,
            mode: LabelPropMode::AsyncParallel,
        }
    }
}

impl LabelPropParams {
    pub fn deterministic() -> Self {
        LabelPropParams {
            mode: LabelPropMode::SequentialDeterministic,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be >= 1".into()));
        }
        Ok(())
    }
}

pub fn cluster_label_prop(g: &Graph, p: &LabelPropParams) -> Result<Clustering> {
    cluster_label_prop_with_cancel(g, p, &CancelToken::never())
}

/// Most frequent label among `u`'s neighbors (smallest on ties), or `None`
/// for isolated vertices.
fn majority_label(g: &Graph, labels: &[AtomicU32], u: NodeId, scratch: &mut Vec<u32>) -> Option<u32> {
    scratch.clear();
    scratch.extend(g.neighbors(u).iter().map(|&v| labels[v as usize].load(Ordering::Relaxed)));
    scratch.sort_unstable();
    let mut best: Option<(usize, u32)> = None;
    let mut i = 0;
    while i < scratch.len() {
        let l = scratch[i];
        let mut j = i;
        while j < scratch.len() && scratch[j] == l {
            j += 1;
        }
        // ascending labels, so strict > keeps the smallest on ties
        if best.is_none_or(|(c, _)| j - i > c) {
            best = Some((j - i, l));
        }
        i = j;
    }
    best.map(|(_, l)| l)
}

/// One pass over `order`; returns the number of label changes.
fn sweep(g: &Graph, labels: &[AtomicU32], order: &[NodeId], parallel: bool) -> usize {
    let visit = |u: NodeId, scratch: &mut Vec<u32>| -> bool {
        match majority_label(g, labels, u, scratch) {
            Some(l) if l != labels[u as usize].load(Ordering::Relaxed) => {
                labels[u as usize].store(l, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    };
    if parallel {
        let changes = AtomicUsize::new(0);
        order.par_chunks(1024).for_each_init(Vec::new, |scratch, chunk| {
            let c = chunk.iter().filter(|&&u| visit(u, scratch)).count();
            changes.fetch_add(c, Ordering::Relaxed);
        });
        changes.into_inner()
    } else {
        let mut scratch = Vec::new();
        order.iter().filter(|&&u| visit(u, &mut scratch)).count()
    }
}

pub fn cluster_label_prop_with_cancel(
    g: &Graph,
    p: &LabelPropParams,
    cancel: &CancelToken,
) -> Result<Clustering> {
    p.validate()?;
    let n = g.num_vertices();
    let labels: Vec<AtomicU32> = (0..n as u32).map(AtomicU32::new).collect();
    let mut order: Vec<NodeId> = (0..n as NodeId).collect();
    let parallel = p.mode == LabelPropMode::AsyncParallel;
    if parallel {
        order.shuffle(&mut stream_rng(p.seed, 0x1abe1, 0));
    } else {
        order.sort_by_key(|&u| (g.degree(u), u));
    }
    for _ in 0..p.max_iters {
        cancel.check()?;
        if sweep(g, &labels, &order, parallel) == 0 {
            break;
        }
    }
    let labels: Vec<u32> = labels.into_iter().map(AtomicU32::into_inner).collect();
    Ok(Clustering::from_member_labels(&labels))
}
