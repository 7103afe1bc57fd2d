//! Pareto frontiers and area-under-curve summaries over benchmark results.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub x: f64,
    pub y: f64,
    pub run_id: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Larger x and larger y are better (precision vs recall).
    #[default]
    MaxMax,
    /// Smaller x and larger y are better (running time vs quality).
    MinXMaxY,
}

/// Non-dominated points, ascending by x. Identical points collapse to the
/// one with the lowest `run_id`.
pub fn pareto_frontier(points: &[FrontierPoint], orientation: Orientation) -> Result<Vec<FrontierPoint>> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no points to build a frontier from".into()));
    }
    if let Some(p) = points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "non-finite point ({}, {}) for run {}",
            p.x, p.y, p.run_id
        )));
    }
    let mut sorted = points.to_vec();
    // best x first, then best y, then lowest run id
    sorted.sort_by(|a, b| {
        let bx = match orientation {
            Orientation::MaxMax => b.x.total_cmp(&a.x),
            Orientation::MinXMaxY => a.x.total_cmp(&b.x),
        };
        bx.then(b.y.total_cmp(&a.y)).then(a.run_id.cmp(&b.run_id))
    });
    let mut out: Vec<FrontierPoint> = Vec::new();
    for p in sorted {
        if out.last().is_none_or(|best| p.y > best.y) {
            out.push(p);
        }
    }
    if orientation == Orientation::MaxMax {
        out.reverse();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AucRule {
    /// Recall at precision `p` is the best recall among points with
    /// precision at least `p`.
    #[default]
    Staircase,
    /// Linear interpolation between consecutive points, flat before the first
    /// one and zero after the last.
    Trapezoid,
}

/// Twice the area under recall as a function of precision over `[0.5, 1]`,
/// so a perfect point scores 1.
pub fn auc_high_precision(points: &[FrontierPoint]) -> f64 {
    auc_high_precision_with(points, AucRule::Staircase)
}

pub fn auc_high_precision_with(points: &[FrontierPoint], rule: AucRule) -> f64 {
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.x >= 0.5)
        .map(|p| (p.x.min(1.0), p.y.clamp(0.0, 1.0)))
        .collect();
    if pts.is_empty() {
        return 0.0;
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let area = match rule {
        AucRule::Staircase => {
            let mut suffix = vec![0.0; pts.len()];
            let mut best: f64 = 0.0;
            for i in (0..pts.len()).rev() {
                best = best.max(pts[i].1);
                suffix[i] = best;
            }
            let mut prev = 0.5;
            let mut area = 0.0;
            for (i, &(x, _)) in pts.iter().enumerate() {
                area += (x - prev) * suffix[i];
                prev = x;
            }
            area
        }
        AucRule::Trapezoid => {
            let mut area = (pts[0].0 - 0.5) * pts[0].1;
            for w in pts.windows(2) {
                area += (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0;
            }
            area
        }
    };
    (2.0 * area).clamp(0.0, 1.0)
}
