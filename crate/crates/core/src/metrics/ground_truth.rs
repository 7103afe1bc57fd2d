use std::collections::HashSet;
use std::path::Path;

use crate::clustering::{read_vertex_sets, Clustering};
use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Reference communities, possibly overlapping. Empty and repeated
/// communities are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundTruth {
    communities: Vec<Vec<NodeId>>,
}

impl GroundTruth {
    pub fn new(communities: Vec<Vec<NodeId>>) -> GroundTruth {
        let mut seen = HashSet::new();
        let communities = communities
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .filter(|c| !c.is_empty() && seen.insert(c.clone()))
            .collect();
        GroundTruth { communities }
    }

    /// One community per line, members separated by whitespace.
    pub fn load(path: impl AsRef<Path>) -> Result<GroundTruth> {
        Ok(GroundTruth::new(read_vertex_sets(path.as_ref())?))
    }

    pub fn communities(&self) -> &[Vec<NodeId>] {
        &self.communities
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn max_vertex(&self) -> Option<NodeId> {
        self.communities.iter().filter_map(|c| c.last().copied()).max()
    }

    /// Flat clustering over `0..n` in which uncovered vertices are singletons.
    /// Fails if communities overlap.
    pub fn to_partition(&self, n: usize) -> Result<Clustering> {
        let mut owner: Vec<Option<u32>> = vec![None; n];
        for (i, c) in self.communities.iter().enumerate() {
            for &v in c {
                let slot = owner.get_mut(v as usize).ok_or_else(|| {
                    Error::InvalidInput(format!("community vertex {v} out of range for {n} vertices"))
                })?;
                if slot.is_some() {
                    return Err(Error::InvalidInput(format!(
                        "ground truth is overlapping at vertex {v}"
                    )));
                }
                *slot = Some(i as u32);
            }
        }
        let labels: Vec<(bool, u32)> = owner
            .iter()
            .enumerate()
            .map(|(v, o)| o.map_or((false, v as u32), |c| (true, c)))
            .collect();
        Ok(Clustering::from_labels(labels))
    }
}
