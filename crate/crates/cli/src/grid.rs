use std::collections::BTreeMap;

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::{BenchConfig, ClustererSpec};

pub type ParamSet = BTreeMap<String, Value>;

/// One scheduled run.
#[derive(Clone, Debug, PartialEq)]
pub struct Job {
    pub graph: String,
    pub clusterer: String,
    pub params: ParamSet,
    pub round: usize,
}

/// Cartesian product of a clusterer's grid. Parameter names are taken in
/// lexicographic order with the last one varying fastest; values keep their
/// file order. An empty grid yields one empty assignment.
pub fn parameter_sets(spec: &ClustererSpec) -> Vec<ParamSet> {
    let mut grid: Vec<_> = spec.grid.iter().collect();
    grid.sort_by(|a, b| a.name.cmp(&b.name));
    let mut sets = vec![ParamSet::new()];
    for param in grid {
        sets = sets
            .into_iter()
            .flat_map(|base| {
                param.values.iter().map(move |v| {
                    let mut next = base.clone();
                    next.insert(param.name.clone(), v.clone());
                    next
                })
            })
            .collect();
    }
    sets
}

/// Runs in order graphs × clusterers × parameter sets × rounds.
pub fn expand_grid(cfg: &BenchConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    for graph in &cfg.graphs {
        for spec in &cfg.clusterers {
            for params in parameter_sets(spec) {
                for round in 0..cfg.num_rounds {
                    jobs.push(Job {
                        graph: graph.clone(),
                        clusterer: spec.name.clone(),
                        params: params.clone(),
                        round,
                    });
                }
            }
        }
    }
    jobs
}

pub fn params_json(params: &ParamSet) -> String {
    serde_json::to_string(params).expect("parameter maps serialize")
}

/// First 12 hex digits of the SHA-256 of the sorted parameter JSON.
pub fn param_hash(params: &ParamSet) -> String {
    let digest = Sha256::digest(params_json(params).as_bytes());
    digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
}
