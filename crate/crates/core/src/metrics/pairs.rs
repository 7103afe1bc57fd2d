use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Labeled vertex pairs; a pair is positive when its similarity exceeds the
/// threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct PairLabels {
    pub tuples: Vec<(NodeId, NodeId, f64)>,
    pub threshold: f64,
}

impl PairLabels {
    pub fn new(tuples: Vec<(NodeId, NodeId, f64)>, threshold: f64) -> Result<PairLabels> {
        for &(x, y, w) in &tuples {
            if x == y || !(w >= 0.0) {
                return Err(Error::InvalidInput(format!("invalid labeled pair ({x}, {y}, {w})")));
            }
        }
        Ok(PairLabels { tuples, threshold })
    }

    /// Lines of `x y w`; `#` starts a comment.
    pub fn load(path: impl AsRef<Path>, threshold: f64) -> Result<PairLabels> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut tuples = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::parse(path, i + 1, format!("expected `x y w`, got {line:?}"));
            if f.len() != 3 {
                return Err(bad());
            }
            let x = f[0].parse().map_err(|_| bad())?;
            let y = f[1].parse().map_err(|_| bad())?;
            let w = f[2].parse().map_err(|_| bad())?;
            tuples.push((x, y, w));
        }
        PairLabels::new(tuples, threshold)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairConfusion {
    pub true_positive: u64,
    pub false_positive: u64,
    pub false_negative: u64,
    pub true_negative: u64,
}

impl PairConfusion {
    /// `TP / (TP + FP)`, or 1 without predicted positives.
    pub fn precision(&self) -> f64 {
        let d = self.true_positive + self.false_positive;
        if d == 0 { 1.0 } else { self.true_positive as f64 / d as f64 }
    }

    /// `TP / (TP + FN)`, or 1 without actual positives.
    pub fn recall(&self) -> f64 {
        let d = self.true_positive + self.false_negative;
        if d == 0 { 1.0 } else { self.true_positive as f64 / d as f64 }
    }
}

pub fn pair_confusion(c: &Clustering, labels: &PairLabels) -> Result<PairConfusion> {
    let l = c
        .labels()
        .ok_or_else(|| Error::InvalidInput("pair evaluation needs a non-overlapping clustering".into()))?;
    let mut out = PairConfusion::default();
    for &(x, y, w) in &labels.tuples {
        let (Some(&cx), Some(&cy)) = (l.get(x as usize), l.get(y as usize)) else {
            return Err(Error::InvalidInput(format!("pair ({x}, {y}) out of range")));
        };
        match (w > labels.threshold, cx == cy) {
            (true, true) => out.true_positive += 1,
            (true, false) => out.false_negative += 1,
            (false, true) => out.false_positive += 1,
            (false, false) => out.true_negative += 1,
        }
    }
    Ok(out)
}

pub fn pair_label_pr(c: &Clustering, labels: &PairLabels) -> Result<(f64, f64)> {
    let m = pair_confusion(c, labels)?;
    Ok((m.precision(), m.recall()))
}
