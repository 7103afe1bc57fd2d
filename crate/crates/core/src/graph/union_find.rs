use std::sync::atomic::{AtomicU32, Ordering};

use super::NodeId;

/// Lock-free union-find. Roots are always linked under the smaller root, so
/// the representative of every set is its minimum element once all unions
/// have completed.
pub struct ConcurrentUnionFind {
    parent: Vec<AtomicU32>,
}

impl ConcurrentUnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as NodeId).map(AtomicU32::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Finds the root of `x`, halving the path on the way.
    pub fn find(&self, mut x: NodeId) -> NodeId {
        loop {
            let p = self.parent[x as usize].load(Ordering::Acquire);
            if p == x {
                return x;
            }
            let gp = self.parent[p as usize].load(Ordering::Acquire);
            if gp != p {
                // failure only means someone else already shortened it
                let _ = self.parent[x as usize].compare_exchange_weak(
                    p,
                    gp,
                    Ordering::AcqRel,
                    Ordering::Relaxed,
                );
            }
            x = gp;
        }
    }

    /// Merges the sets of `a` and `b`. Returns `true` if they were disjoint.
    pub fn union(&self, a: NodeId, b: NodeId) -> bool {
        let mut a = a;
        let mut b = b;
        loop {
            a = self.find(a);
            b = self.find(b);
            if a == b {
                return false;
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if self.parent[hi as usize]
                .compare_exchange(hi, lo, Ordering::AcqRel, Ordering::Acquire)
                .is_ok()
            {
                return true;
            }
        }
    }

    pub fn same_set(&self, a: NodeId, b: NodeId) -> bool {
        loop {
            let ra = self.find(a);
            let rb = self.find(b);
            if ra == rb {
                return true;
            }
            // ra is still a root, so the answer is stable
            if self.parent[ra as usize].load(Ordering::Acquire) == ra {
                return false;
            }
        }
    }

    /// Root of every element, i.e. the minimum element of its set.
    pub fn roots(&self) -> Vec<NodeId> {
        use rayon::prelude::*;
        (0..self.len() as NodeId)
            .into_par_iter()
            .map(|x| self.find(x))
            .collect()
    }
}
