use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Summary {
    fn of(xs: impl Iterator<Item = f64>) -> Option<Summary> {
        let (mut min, mut max, mut sum, mut k) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0usize);
        for x in xs {
            min = min.min(x);
            max = max.max(x);
            sum += x;
            k += 1;
        }
        (k > 0).then(|| Summary { min, max, mean: sum / k as f64 })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterStats {
    pub count: usize,
    pub sizes: Option<Summary>,
    /// Double-sweep BFS estimate per cluster: exact on trees, a lower bound
    /// in general. Disconnected clusters report their widest component.
    pub diameters: Option<Summary>,
}

/// BFS from `src` inside `members`; returns the farthest vertex and its
/// distance, recording visited vertices in `seen`.
fn bfs(
    g: &Graph,
    src: NodeId,
    inside: &dyn Fn(NodeId) -> bool,
    seen: &mut HashMap<NodeId, u32>,
) -> (NodeId, u32) {
    seen.clear();
    seen.insert(src, 0);
    let mut queue = VecDeque::from([src]);
    let mut far = (src, 0);
    while let Some(u) = queue.pop_front() {
        let d = seen[&u];
        if d > far.1 {
            far = (u, d);
        }
        for &v in g.neighbors(u) {
            if inside(v) && !seen.contains_key(&v) {
                seen.insert(v, d + 1);
                queue.push_back(v);
            }
        }
    }
    far
}

fn cluster_diameter(g: &Graph, members: &[NodeId], inside: &dyn Fn(NodeId) -> bool) -> u32 {
    let mut covered: HashMap<NodeId, ()> = HashMap::new();
    let mut seen = HashMap::new();
    let mut best = 0;
    for &s in members {
        if covered.contains_key(&s) {
            continue;
        }
        let (a, _) = bfs(g, s, inside, &mut seen);
        covered.extend(seen.keys().map(|&v| (v, ())));
        let (_, d) = bfs(g, a, inside, &mut seen);
        best = best.max(d);
    }
    best
}

pub fn cluster_stats(g: &Graph, c: &Clustering, with_diameter: bool) -> Result<ClusterStats> {
    if c.num_vertices() != g.num_vertices() {
        return Err(Error::InvalidInput(format!(
            "clustering covers {} vertices, graph has {}",
            c.num_vertices(),
            g.num_vertices()
        )));
    }
    let clusters = c.clusters();
    let sizes = Summary::of(clusters.iter().map(|m| m.len() as f64));
    let diameters = if with_diameter {
        let d: Vec<u32> = clusters
            .par_iter()
            .enumerate()
            .map(|(i, members)| match c.labels() {
                Some(l) => cluster_diameter(g, members, &|v| l[v as usize] == i as u32),
                None => cluster_diameter(g, members, &|v| members.binary_search(&v).is_ok()),
            })
            .collect();
        Summary::of(d.into_iter().map(f64::from))
    } else {
        None
    };
    Ok(ClusterStats {
        count: clusters.len(),
        sizes,
        diameters,
    })
}
