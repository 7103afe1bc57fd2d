//! Clusterer names as they appear in configuration files, and the mapping of
//! their parameters onto library types.

use std::collections::BTreeMap;

use parclust_core::unweighted::{
    cluster_kcore, cluster_label_prop_with_cancel, cluster_ldd_with_cancel, cluster_scan,
    cluster_slpa_with_cancel, cluster_tectonic, LabelPropMode, LabelPropParams, LddParams, ScanParams,
    SlpaParams, TectonicParams,
};
use parclust_core::weighted::{
    cluster_affinity_with_cancel, cluster_connectivity, cluster_correlation_with_cancel,
    cluster_modularity_with_cancel, cluster_parhac_with_cancel, AffinityParams, LambdaCCParams,
    ParHacParams, VertexWeightMode,
};
use parclust_core::{CancelToken, Clustering, Dendrogram, Graph};
use serde_json::Value;

/// Built-in clusterers and the parameters each accepts.
pub const CLUSTERERS: &[(&str, &[&str])] = &[
    ("AffinityClusterer", &["num_rounds", "initial_threshold", "decay"]),
    ("ConnectivityClusterer", &["threshold"]),
    ("CorrelationClusterer", &["resolution", "max_rounds", "max_sweeps", "vertex_weight_mode", "seed"]),
    ("KCoreClusterer", &["threshold"]),
    ("LDDClusterer", &["beta", "seed"]),
    ("LabelPropagationClusterer", &["max_iteration", "seed"]),
    ("ModularityClusterer", &["gamma", "max_rounds", "max_sweeps", "seed"]),
    ("ParHacClusterer", &["weight_threshold", "epsilon", "seed"]),
    ("SLPAClusterer", &["max_iteration", "prune_threshold", "seed"]),
    ("ScanClusterer", &["epsilon", "mu"]),
    ("TectonicClusterer", &["threshold"]),
];

/// Name prefixes of third-party systems. Their blocks parse, but runs report
/// an error because no backend is wired in.
pub const EXTERNAL_PREFIXES: &[&str] = &["TigerGraph", "Neo4j", "NetworKit", "Snap"];

pub fn is_external(name: &str) -> bool {
    EXTERNAL_PREFIXES.iter().any(|p| name.starts_with(p)) && !is_builtin(name)
}

pub fn is_builtin(name: &str) -> bool {
    CLUSTERERS.iter().any(|c| c.0 == name)
}

pub fn is_known(name: &str) -> bool {
    is_builtin(name) || is_external(name)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Force sequential, reproducible schedules where the algorithm has one.
    pub deterministic: bool,
    /// Seed used when the parameter set does not name one.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Algorithm {
    Affinity(AffinityParams),
    Connectivity(f64),
    Correlation(LambdaCCParams),
    KCore(u32),
    Ldd(LddParams),
    LabelProp(LabelPropParams),
    Modularity { gamma: f64, base: LambdaCCParams },
    ParHac(ParHacParams),
    Slpa(SlpaParams),
    Scan(ScanParams),
    Tectonic(TectonicParams),
}

pub struct Output {
    pub clustering: Clustering,
    pub dendrogram: Option<Dendrogram>,
}

fn num(key: &str, v: &Value) -> Result<f64, String> {
    v.as_f64().ok_or_else(|| format!("`{key}` expects a number, got {v}"))
}

fn uint(key: &str, v: &Value) -> Result<u64, String> {
    v.as_u64().ok_or_else(|| format!("`{key}` expects a nonnegative integer, got {v}"))
}

fn usize_of(key: &str, v: &Value) -> Result<usize, String> {
    uint(key, v).map(|x| x as usize)
}

fn weight_mode(v: &Value) -> Result<VertexWeightMode, String> {
    match v.as_str() {
        Some("unit") => Ok(VertexWeightMode::Unit),
        Some("weighted_degree") => Ok(VertexWeightMode::WeightedDegree),
        _ => Err(format!("`vertex_weight_mode` expects unit or weighted_degree, got {v}")),
    }
}

/// Builds a validated algorithm from a parameter assignment. Unset
/// parameters keep library defaults.
pub fn configure(name: &str, params: &BTreeMap<String, Value>, opts: &RunOptions) -> Result<Algorithm, String> {
    let Some(&(_, accepted)) = CLUSTERERS.iter().find(|c| c.0 == name) else {
        if is_external(name) {
            return Err(format!("backend not supported: {name}"));
        }
        return Err(format!("unknown clusterer `{name}`"));
    };
    for key in params.keys() {
        if !accepted.contains(&key.as_str()) {
            return Err(format!("`{name}` has no parameter `{key}` (accepted: {})", accepted.join(", ")));
        }
    }
    let seed = match params.get("seed") {
        Some(v) => uint("seed", v)?,
        None => opts.seed.unwrap_or(0),
    };
    let get = |k: &str| params.get(k);
    let algo = match name {
        "AffinityClusterer" => {
            let mut p = AffinityParams::default();
            if let Some(v) = get("num_rounds") {
                p.num_rounds = usize_of("num_rounds", v)?;
            }
            if let Some(v) = get("initial_threshold") {
                p.initial_threshold = num("initial_threshold", v)?;
            }
            if let Some(v) = get("decay") {
                p.decay = num("decay", v)?;
            }
            p.validate().map_err(|e| e.to_string())?;
            Algorithm::Affinity(p)
        }
        "ConnectivityClusterer" => {
            let t = get("threshold").map_or(Ok(0.0), |v| num("threshold", v))?;
            Algorithm::Connectivity(t)
        }
        "CorrelationClusterer" | "ModularityClusterer" => {
            let mut p = LambdaCCParams {
                seed,
                deterministic: opts.deterministic,
                ..Default::default()
            };
            if let Some(v) = get("resolution") {
                p.resolution = num("resolution", v)?;
            }
            if let Some(v) = get("max_rounds") {
                p.max_rounds = usize_of("max_rounds", v)?;
            }
            if let Some(v) = get("max_sweeps") {
                p.max_sweeps = usize_of("max_sweeps", v)?;
            }
            if let Some(v) = get("vertex_weight_mode") {
                p.vertex_weight_mode = weight_mode(v)?;
            }
            p.validate().map_err(|e| e.to_string())?;
            if name == "CorrelationClusterer" {
                Algorithm::Correlation(p)
            } else {
                let gamma = get("gamma").map_or(Ok(1.0), |v| num("gamma", v))?;
                if !(gamma > 0.0) {
                    return Err(format!("`gamma` must be > 0, got {gamma}"));
                }
                Algorithm::Modularity { gamma, base: p }
            }
        }
        "KCoreClusterer" => {
            let k = get("threshold").map_or(Ok(0), |v| uint("threshold", v))?;
            Algorithm::KCore(u32::try_from(k).map_err(|_| format!("`threshold` too large: {k}"))?)
        }
        "LDDClusterer" => {
            let mut p = LddParams { seed, ..Default::default() };
            if let Some(v) = get("beta") {
                p.beta = num("beta", v)?;
            }
            p.validate().map_err(|e| e.to_string())?;
            Algorithm::Ldd(p)
        }
        "LabelPropagationClusterer" => {
            let mut p = LabelPropParams {
                seed,
                mode: if opts.deterministic {
                    LabelPropMode::SequentialDeterministic
                } else {
                    LabelPropMode::AsyncParallel
                },
                ..Default::default()
            };
            if let Some(v) = get("max_iteration") {
                p.max_iters = usize_of("max_iteration", v)?;
            }
            p.validate().map_err(|e| e.to_string())?;
            Algorithm::LabelProp(p)
        }
        "ParHacClusterer" => {
            let mut p = ParHacParams { seed, ..Default::default() };
            if let Some(v) = get("weight_threshold") {
                p.weight_threshold = num("weight_threshold", v)?;
            }
            if let Some(v) = get("epsilon") {
                p.epsilon = num("epsilon", v)?;
            }
            p.validate().map_err(|e| e.to_string())?;
            Algorithm::ParHac(p)
        }
        "SLPAClusterer" => {
            let mut p = SlpaParams { seed, ..Default::default() };
            if let Some(v) = get("max_iteration") {
                p.rounds = usize_of("max_iteration", v)?;
            }
            if let Some(v) = get("prune_threshold") {
                p.threshold = num("prune_threshold", v)?;
            }
            p.validate().map_err(|e| e.to_string())?;
            Algorithm::Slpa(p)
        }
        "ScanClusterer" => {
            let mut p = ScanParams::default();
            if let Some(v) = get("epsilon") {
                p.epsilon = num("epsilon", v)?;
            }
            if let Some(v) = get("mu") {
                p.mu = usize_of("mu", v)?;
            }
            p.validate().map_err(|e| e.to_string())?;
            Algorithm::Scan(p)
        }
        "TectonicClusterer" => {
            let mut p = TectonicParams::default();
            if let Some(v) = get("threshold") {
                p.theta = num("threshold", v)?;
            }
            p.validate().map_err(|e| e.to_string())?;
            Algorithm::Tectonic(p)
        }
        _ => unreachable!("listed in CLUSTERERS"),
    };
    Ok(algo)
}

/// Checks a single grid value the way a full parameter set would be checked.
pub fn check_param(name: &str, key: &str, value: &Value) -> Result<(), String> {
    if is_external(name) {
        return Ok(());
    }
    let params = BTreeMap::from([(key.to_string(), value.clone())]);
    configure(name, &params, &RunOptions::default()).map(|_| ())
}

impl Algorithm {
    pub fn run(&self, g: &Graph, cancel: &CancelToken) -> parclust_core::Result<Output> {
        let flat = |clustering| Output { clustering, dendrogram: None };
        Ok(match self {
            Algorithm::Affinity(p) => {
                let (c, d) = cluster_affinity_with_cancel(g, p, cancel)?;
                Output { clustering: c, dendrogram: Some(d) }
            }
            Algorithm::Connectivity(t) => flat(cluster_connectivity(g, *t)),
            Algorithm::Correlation(p) => flat(cluster_correlation_with_cancel(g, p, cancel)?),
            Algorithm::KCore(k) => flat(cluster_kcore(g, *k)),
            Algorithm::Ldd(p) => flat(cluster_ldd_with_cancel(g, p, cancel)?),
            Algorithm::LabelProp(p) => flat(cluster_label_prop_with_cancel(g, p, cancel)?),
            Algorithm::Modularity { gamma, base } => flat(cluster_modularity_with_cancel(g, *gamma, base, cancel)?),
            Algorithm::ParHac(p) => {
                let (c, d) = cluster_parhac_with_cancel(g, p, cancel)?;
                Output { clustering: c, dendrogram: Some(d) }
            }
            Algorithm::Slpa(p) => flat(cluster_slpa_with_cancel(g, p, cancel)?),
            Algorithm::Scan(p) => flat(cluster_scan(g, p)?),
            Algorithm::Tectonic(p) => flat(cluster_tectonic(g, p)?),
        })
    }
}
