use serde::{Deserialize, Serialize};

use super::{
    ari, cluster_stats, f_beta, nmi, pair_label_pr, precision_recall, triangle_density,
    weighted_edge_density, GroundTruth, PairLabels,
};
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weighted::{lambda_cc_objective, modularity, LambdaCCParams};

/// Which metrics to compute.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSelection {
    pub precision_recall: bool,
    pub f_score_param: f64,
    pub ari: bool,
    pub nmi: bool,
    pub edge_density: bool,
    pub triangle_density: bool,
    pub cluster_stats: bool,
    pub diameter: bool,
    pub pair_precision_recall: bool,
    /// Resolution of the LambdaCC score to report, if any.
    pub lambda_cc_resolution: Option<f64>,
    /// Resolution γ of the modularity score to report, if any.
    pub modularity_gamma: Option<f64>,
}

impl Default for MetricSelection {
    fn default() -> Self {
        MetricSelection {
            precision_recall: false,
            f_score_param: 1.0,
            ari: false,
            nmi: false,
            edge_density: false,
            triangle_density: false,
            cluster_stats: false,
            diameter: false,
            pair_precision_recall: false,
            lambda_cc_resolution: None,
            modularity_gamma: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EvalInputs<'a> {
    pub ground_truth: Option<&'a GroundTruth>,
    pub pairs: Option<&'a PairLabels>,
}

/// Metric values for one clustering. Metrics that were not requested, or do
/// not apply (e.g. densities of an overlapping clustering), are `None`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f_beta: Option<f64>,
    pub beta: Option<f64>,
    pub ari: Option<f64>,
    pub nmi: Option<f64>,
    pub weighted_edge_density: Option<f64>,
    pub triangle_density: Option<f64>,
    pub lambda_cc_score: Option<f64>,
    pub modularity_score: Option<f64>,
    pub pair_precision: Option<f64>,
    pub pair_recall: Option<f64>,
    pub cluster_count: Option<usize>,
    pub cluster_size_min: Option<f64>,
    pub cluster_size_max: Option<f64>,
    pub cluster_size_mean: Option<f64>,
    pub diameter_min: Option<f64>,
    pub diameter_max: Option<f64>,
    pub diameter_mean: Option<f64>,
}

pub fn evaluate(g: &Graph, c: &Clustering, sel: &MetricSelection, inputs: EvalInputs) -> Result<MetricsReport> {
    let mut r = MetricsReport::default();
    let flat = c.is_flat();
    let need_truth = || {
        inputs
            .ground_truth
            .ok_or_else(|| Error::InvalidInput("metric requires ground-truth communities".into()))
    };
    if sel.precision_recall {
        let (p, rc) = precision_recall(c, need_truth()?)?;
        r.precision = Some(p);
        r.recall = Some(rc);
        r.f_beta = Some(f_beta(p, rc, sel.f_score_param)?);
        r.beta = Some(sel.f_score_param);
    }
    if sel.ari || sel.nmi {
        let truth = need_truth()?.to_partition(g.num_vertices()).ok();
        if let (true, Some(t)) = (flat, truth) {
            if sel.ari {
                r.ari = Some(ari(c, &t)?);
            }
            if sel.nmi {
                r.nmi = Some(nmi(c, &t)?);
            }
        }
    }
    if flat && sel.edge_density {
        r.weighted_edge_density = Some(weighted_edge_density(g, c)?);
    }
    if flat && sel.triangle_density {
        r.triangle_density = Some(triangle_density(g, c)?);
    }
    if sel.pair_precision_recall {
        let pairs = inputs
            .pairs
            .ok_or_else(|| Error::InvalidInput("pair metrics require labeled pairs".into()))?;
        if flat {
            let (p, rc) = pair_label_pr(c, pairs)?;
            r.pair_precision = Some(p);
            r.pair_recall = Some(rc);
        }
    }
    if let (true, Some(res)) = (flat, sel.lambda_cc_resolution) {
        r.lambda_cc_score = Some(lambda_cc_objective(g, c, &LambdaCCParams::with_resolution(res))?);
    }
    if let (true, Some(gamma)) = (flat, sel.modularity_gamma) {
        r.modularity_score = modularity(g, c, gamma).ok();
    }
    if sel.cluster_stats || sel.diameter {
        let s = cluster_stats(g, c, sel.diameter)?;
        r.cluster_count = Some(s.count);
        if let Some(sz) = s.sizes {
            r.cluster_size_min = Some(sz.min);
            r.cluster_size_max = Some(sz.max);
            r.cluster_size_mean = Some(sz.mean);
        }
        if let Some(d) = s.diameters {
            r.diameter_min = Some(d.min);
            r.diameter_max = Some(d.max);
            r.diameter_mean = Some(d.mean);
        }
    }
    Ok(r)
}
