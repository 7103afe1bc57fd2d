use std::collections::HashMap;

use rayon::prelude::*;

use super::GroundTruth;
use crate::clustering::Clustering;
use crate::error::{Error, Result};

/// For each vertex, the ids of the output clusters containing it.
pub(crate) fn memberships(c: &Clustering) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); c.num_vertices()];
    match c.labels() {
        Some(labels) => {
            for (v, &l) in labels.iter().enumerate() {
                out[v].push(l);
            }
        }
        None => {
            for (i, members) in c.clusters().iter().enumerate() {
                for &v in members {
                    out[v as usize].push(i as u32);
                }
            }
        }
    }
    out
}

/// Mean precision and recall over ground-truth communities, each matched to
/// the output cluster with the largest intersection (ties to the smaller
/// cluster id).
pub fn precision_recall(c: &Clustering, gt: &GroundTruth) -> Result<(f64, f64)> {
    let per = per_community_precision_recall(c, gt)?;
    let k = per.len() as f64;
    let (p, r) = per.iter().fold((0.0, 0.0), |(p, r), &(a, b)| (p + a, r + b));
    Ok((p / k, r / k))
}

/// `(precision, recall)` for every ground-truth community, in order.
pub fn per_community_precision_recall(c: &Clustering, gt: &GroundTruth) -> Result<Vec<(f64, f64)>> {
    if gt.is_empty() {
        return Err(Error::InvalidInput("ground truth has no communities".into()));
    }
    let n = c.num_vertices();
    if let Some(v) = gt.max_vertex().filter(|&v| v as usize >= n) {
        return Err(Error::InvalidInput(format!(
            "community vertex {v} out of range for {n} vertices"
        )));
    }
    let member_of = memberships(c);
    let sizes = c.cluster_sizes();
    Ok(gt
        .communities()
        .par_iter()
        .map(|community| {
            let mut overlap: HashMap<u32, usize> = HashMap::new();
            for &v in community {
                for &cid in &member_of[v as usize] {
                    *overlap.entry(cid).or_default() += 1;
                }
            }
            let best = overlap
                .into_iter()
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
            match best {
                Some((cid, inter)) => (
                    inter as f64 / sizes[cid as usize] as f64,
                    inter as f64 / community.len() as f64,
                ),
                None => (0.0, 0.0),
            }
        })
        .collect())
}

/// `F_β = (1+β²)·P·R / (β²·P + R)`, defined as 0 when both are 0.
pub fn f_beta(precision: f64, recall: f64, beta: f64) -> Result<f64> {
    if !(precision >= 0.0 && recall >= 0.0 && beta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "f_beta needs nonnegative inputs, got precision={precision} recall={recall} beta={beta}"
        )));
    }
    let b2 = beta * beta;
    let denom = b2 * precision + recall;
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok((1.0 + b2) * precision * recall / denom)
}
