//! Flat and overlapping clusterings plus the one-cluster-per-line text format.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::NodeId;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    /// `labels[v]` is dense in `0..k`, ordered by minimum member.
    Flat { labels: Vec<u32>, k: usize },
    /// Sorted, deduplicated, nonempty member lists in lexicographic order.
    Overlapping { clusters: Vec<Vec<NodeId>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    n: usize,
    kind: Kind,
}

impl Clustering {
    /// Canonicalizes arbitrary labels: vertices with equal labels share a
    /// cluster, and cluster ids are assigned in order of first occurrence,
    /// i.e. ordered by minimum member vertex.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(labels: Vec<L>) -> Clustering {
        let n = labels.len();
        let mut dense: HashMap<L, u32> = HashMap::new();
        let mut out = Vec::with_capacity(n);
        for l in labels {
            let next = dense.len() as u32;
            out.push(*dense.entry(l).or_insert(next));
        }
        Clustering {
            n,
            kind: Kind::Flat {
                labels: out,
                k: dense.len(),
            },
        }
    }

    /// Fast path for labels where every label is itself a member vertex id
    /// (e.g. union-find roots or label-propagation labels).
    pub fn from_member_labels(labels: &[NodeId]) -> Clustering {
        let n = labels.len();
        let mut remap = vec![u32::MAX; n];
        let mut next = 0u32;
        let mut out = Vec::with_capacity(n);
        for &l in labels {
            let slot = &mut remap[l as usize];
            if *slot == u32::MAX {
                *slot = next;
                next += 1;
            }
            out.push(*slot);
        }
        Clustering {
            n,
            kind: Kind::Flat {
                labels: out,
                k: next as usize,
            },
        }
    }

    pub fn singletons(n: usize) -> Clustering {
        Clustering {
            n,
            kind: Kind::Flat {
                labels: (0..n as u32).collect(),
                k: n,
            },
        }
    }

    pub fn single_cluster(n: usize) -> Clustering {
        Clustering {
            n,
            kind: Kind::Flat {
                labels: vec![0; n],
                k: usize::from(n > 0),
            },
        }
    }

    /// Builds a clustering from explicit vertex sets over `0..n`. If the sets
    /// partition `0..n` exactly the result is flat; otherwise it is kept in
    /// overlapping form (empty sets dropped, identical sets merged).
    pub fn from_sets(n: usize, sets: Vec<Vec<NodeId>>) -> Result<Clustering> {
        let mut owner = vec![u32::MAX; n];
        let mut partition = true;
        for (i, set) in sets.iter().enumerate() {
            for &v in set {
                if v as usize >= n {
                    return Err(Error::InvalidInput(format!(
                        "vertex {v} out of range for {n} vertices"
                    )));
                }
                if owner[v as usize] != u32::MAX {
                    partition = false;
                }
                owner[v as usize] = i as u32;
            }
        }
        if partition && owner.iter().all(|&o| o != u32::MAX) {
            return Ok(Clustering::from_labels(owner));
        }
        Ok(Clustering::overlapping(n, sets))
    }

    /// Overlapping form; empty sets are dropped and duplicates merged.
    pub fn overlapping(n: usize, sets: Vec<Vec<NodeId>>) -> Clustering {
        let mut clusters: Vec<Vec<NodeId>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .filter(|s| !s.is_empty())
            .collect();
        clusters.sort();
        clusters.dedup();
        Clustering {
            n,
            kind: Kind::Overlapping { clusters },
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_clusters(&self) -> usize {
        match &self.kind {
            Kind::Flat { k, .. } => *k,
            Kind::Overlapping { clusters } => clusters.len(),
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self.kind, Kind::Flat { .. })
    }

    /// Per-vertex cluster ids for flat clusterings.
    pub fn labels(&self) -> Option<&[u32]> {
        match &self.kind {
            Kind::Flat { labels, .. } => Some(labels),
            Kind::Overlapping { .. } => None,
        }
    }

    /// All clusters as sorted member lists; flat clusterings are listed in
    /// cluster-id order.
    pub fn clusters(&self) -> Vec<Vec<NodeId>> {
        match &self.kind {
            Kind::Flat { labels, k } => {
                let mut out = vec![Vec::new(); *k];
                for (v, &l) in labels.iter().enumerate() {
                    out[l as usize].push(v as NodeId);
                }
                out
            }
            Kind::Overlapping { clusters } => clusters.clone(),
        }
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        match &self.kind {
            Kind::Flat { labels, k } => {
                let mut sizes = vec![0; *k];
                for &l in labels {
                    sizes[l as usize] += 1;
                }
                sizes
            }
            Kind::Overlapping { clusters } => clusters.iter().map(Vec::len).collect(),
        }
    }

    /// `true` when `self` refines `coarser`: every cluster of `self` lies
    /// inside a single cluster of `coarser`. Both must be flat.
    pub fn refines(&self, coarser: &Clustering) -> bool {
        let (Some(a), Some(b)) = (self.labels(), coarser.labels()) else {
            return false;
        };
        if a.len() != b.len() {
            return false;
        }
        let mut image = vec![u32::MAX; self.num_clusters()];
        a.iter().zip(b).all(|(&x, &y)| {
            let slot = &mut image[x as usize];
            if *slot == u32::MAX {
                *slot = y;
            }
            *slot == y
        })
    }

    /// Writes one cluster per line, members separated by single spaces.
    pub fn write(&self, mut out: impl Write) -> std::io::Result<()> {
        for cluster in self.clusters() {
            let mut first = true;
            for v in cluster {
                if !first {
                    out.write_all(b" ")?;
                }
                first = false;
                write!(out, "{v}")?;
            }
            out.write_all(b"\n")?;
        }
        out.flush()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write(std::io::BufWriter::new(file))
            .map_err(|e| Error::io(path, e))
    }

    /// Reads a cluster file. `n` defaults to the largest id seen + 1.
    pub fn load(path: impl AsRef<Path>, n: Option<usize>) -> Result<Clustering> {
        let path = path.as_ref();
        let sets = read_vertex_sets(path)?;
        let seen = sets
            .iter()
            .flatten()
            .map(|&v| v as usize + 1)
            .max()
            .unwrap_or(0);
        Clustering::from_sets(n.unwrap_or(seen).max(seen), sets)
    }
}

/// Reads whitespace-separated vertex ids, one set per line; blank lines and
/// `#` comments are skipped.
pub fn read_vertex_sets(path: &Path) -> Result<Vec<Vec<NodeId>>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut sets = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let set = line
            .split_whitespace()
            .map(|t| {
                t.parse::<NodeId>()
                    .map_err(|_| Error::parse(path, idx + 1, format!("invalid vertex id `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        sets.push(set);
    }
    Ok(sets)
}
