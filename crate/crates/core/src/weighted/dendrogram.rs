use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::graph::{ConcurrentUnionFind, NodeId};

/// One agglomeration step. Leaves are `0..n`; internal nodes are numbered
/// `n, n+1, ...` in merge order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: u32,
    pub right: u32,
    pub similarity: f64,
    pub parent: u32,
}

/// Binary merge forest produced by hierarchical clusterers.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    num_leaves: usize,
    merges: Vec<Merge>,
    node_size: Vec<u32>,
}

impl Dendrogram {
    pub fn new(num_leaves: usize) -> Self {
        Dendrogram {
            num_leaves,
            merges: Vec::new(),
            node_size: vec![1; num_leaves],
        }
    }

    /// Records a merge of two current roots and returns the new node id.
    pub fn merge(&mut self, left: u32, right: u32, similarity: f64) -> u32 {
        let parent = self.node_size.len() as u32;
        let size = self.node_size[left as usize] + self.node_size[right as usize];
        self.node_size.push(size);
        self.merges.push(Merge {
            left,
            right,
            similarity,
            parent,
        });
        parent
    }

    pub fn num_leaves(&self) -> usize {
        self.num_leaves
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn node_size(&self, node: u32) -> u32 {
        self.node_size[node as usize]
    }

    pub fn max_similarity(&self) -> Option<f64> {
        self.merges.iter().map(|m| m.similarity).reduce(f64::max)
    }

    /// Flat clustering obtained by applying exactly the merges whose
    /// similarity is at least `threshold`.
    pub fn cut(&self, threshold: f64) -> Clustering {
        let n = self.num_leaves;
        // every node is represented by its leftmost leaf
        let mut rep: Vec<NodeId> = (0..n as NodeId).collect();
        rep.resize(self.node_size.len(), 0);
        let uf = ConcurrentUnionFind::new(n);
        for m in &self.merges {
            let (l, r) = (rep[m.left as usize], rep[m.right as usize]);
            rep[m.parent as usize] = l;
            if m.similarity >= threshold {
                uf.union(l, r);
            }
        }
        Clustering::from_labels(uf.roots())
    }
}

pub fn cut_dendrogram(d: &Dendrogram, threshold: f64) -> Clustering {
    d.cut(threshold)
}
