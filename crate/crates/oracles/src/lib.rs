//! Slow, obviously-correct reference implementations.
//!
//! Everything here works from raw edge lists and label vectors and shares no
//! code with `parclust-core`, so the library can be checked against it.
//! Inputs are small; most routines are quadratic or worse.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

pub type Edge = (u32, u32, f64);

/// Symmetric adjacency with self-loops dropped and duplicates resolved to
/// the maximum weight.
#[derive(Clone, Debug)]
pub struct Adjacency {
    pub n: usize,
    pub rows: Vec<BTreeMap<u32, f64>>,
}

impl Adjacency {
    pub fn new(n: usize, edges: &[Edge]) -> Adjacency {
        let n = edges
            .iter()
            .map(|&(u, v, _)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0)
            .max(n);
        let mut rows = vec![BTreeMap::new(); n];
        for &(u, v, w) in edges {
            if u == v {
                continue;
            }
            for (a, b) in [(u, v), (v, u)] {
                let e = rows[a as usize].entry(b).or_insert(w);
                if w > *e {
                    *e = w;
                }
            }
        }
        Adjacency { n, rows }
    }

    pub fn has(&self, u: u32, v: u32) -> bool {
        self.rows[u as usize].contains_key(&v)
    }

    pub fn weight(&self, u: u32, v: u32) -> f64 {
        self.rows[u as usize].get(&v).copied().unwrap_or(0.0)
    }

    pub fn degree(&self, u: u32) -> usize {
        self.rows[u as usize].len()
    }

    /// Each undirected edge once, `u < v`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (u, row) in self.rows.iter().enumerate() {
            for (&v, &w) in row {
                if (u as u32) < v {
                    out.push((u as u32, v, w));
                }
            }
        }
        out
    }
}

/// Relabels so that cluster ids appear in order of first occurrence.
pub fn canonical(labels: &[u32]) -> Vec<u32> {
    let mut map = HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len() as u32;
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

pub fn same_partition(a: &[u32], b: &[u32]) -> bool {
    canonical(a) == canonical(b)
}

/// Component labels by breadth-first search over edges accepted by `keep`.
pub fn components(adj: &Adjacency, keep: impl Fn(u32, u32, f64) -> bool) -> Vec<u32> {
    let mut label = vec![u32::MAX; adj.n];
    for s in 0..adj.n {
        if label[s] != u32::MAX {
            continue;
        }
        label[s] = s as u32;
        let mut q = VecDeque::from([s as u32]);
        while let Some(u) = q.pop_front() {
            for (&v, &w) in &adj.rows[u as usize] {
                if label[v as usize] == u32::MAX && keep(u, v, w) {
                    label[v as usize] = s as u32;
                    q.push_back(v);
                }
            }
        }
    }
    label
}

/// Core numbers by definition: the largest `k` whose k-core (obtained by
/// repeatedly deleting vertices of degree below `k`) contains the vertex.
pub fn core_numbers(adj: &Adjacency) -> Vec<u32> {
    let mut core = vec![0u32; adj.n];
    for k in 1..=adj.n as u32 {
        let mut alive = vec![true; adj.n];
        loop {
            let mut changed = false;
            for u in 0..adj.n {
                if alive[u] {
                    let d = adj.rows[u].keys().filter(|&&v| alive[v as usize]).count();
                    if (d as u32) < k {
                        alive[u] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for u in 0..adj.n {
            if alive[u] {
                core[u] = k;
            }
        }
    }
    core
}

fn closed_neighborhood(adj: &Adjacency, u: u32) -> BTreeSet<u32> {
    let mut s: BTreeSet<u32> = adj.rows[u as usize].keys().copied().collect();
    s.insert(u);
    s
}

pub fn structural_similarity(adj: &Adjacency, u: u32, v: u32) -> f64 {
    let (a, b) = (closed_neighborhood(adj, u), closed_neighborhood(adj, v));
    let inter = a.intersection(&b).count();
    inter as f64 / ((a.len() * b.len()) as f64).sqrt()
}

/// SCAN by its literal definition: find cores, build the core graph `H`,
/// take its components by BFS and attach each non-core vertex to the
/// lowest-id similar core.
pub fn scan(adj: &Adjacency, epsilon: f64, mu: usize) -> Vec<u32> {
    let similar = |u: u32, v: u32| structural_similarity(adj, u, v) >= epsilon;
    let is_core: Vec<bool> = (0..adj.n as u32)
        .map(|u| adj.rows[u as usize].keys().filter(|&&v| similar(u, v)).count() >= mu)
        .collect();
    let mut h = vec![Vec::new(); adj.n];
    for (u, v, _) in adj.edges() {
        if is_core[u as usize] && is_core[v as usize] && similar(u, v) {
            h[u as usize].push(v);
            h[v as usize].push(u);
        }
    }
    let mut label: Vec<u32> = (0..adj.n as u32).collect();
    let mut seen = vec![false; adj.n];
    for s in 0..adj.n {
        if !is_core[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            label[u] = s as u32;
            for &v in &h[u] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    q.push_back(v as usize);
                }
            }
        }
    }
    let core_label = label.clone();
    for u in 0..adj.n as u32 {
        if is_core[u as usize] {
            continue;
        }
        let attach = adj.rows[u as usize]
            .keys()
            .copied()
            .filter(|&v| is_core[v as usize] && similar(u, v))
            .min();
        if let Some(v) = attach {
            label[u as usize] = core_label[v as usize];
        }
    }
    label
}

/// Triangles through each edge by triple enumeration, keyed by `(u, v)` with
/// `u < v`.
pub fn edge_triangles(adj: &Adjacency) -> BTreeMap<(u32, u32), u32> {
    let mut t: BTreeMap<(u32, u32), u32> = adj.edges().iter().map(|&(u, v, _)| ((u, v), 0)).collect();
    let n = adj.n as u32;
    for a in 0..n {
        for b in a + 1..n {
            if !adj.has(a, b) {
                continue;
            }
            for c in b + 1..n {
                if adj.has(a, c) && adj.has(b, c) {
                    for key in [(a, b), (a, c), (b, c)] {
                        *t.get_mut(&key).unwrap() += 1;
                    }
                }
            }
        }
    }
    t
}

pub fn triangle_count(adj: &Adjacency) -> u64 {
    edge_triangles(adj).values().map(|&c| c as u64).sum::<u64>() / 3
}

/// Size-weighted mean over clusters of `3·triangles / wedges` in the induced
/// subgraph, 1 for clusters without wedges.
pub fn triangle_density(adj: &Adjacency, labels: &[u32]) -> f64 {
    let mut by: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (v, &l) in labels.iter().enumerate() {
        by.entry(l).or_default().push(v as u32);
    }
    let mut acc = 0.0;
    for members in by.values() {
        let (mut tri, mut wedges) = (0u64, 0u64);
        for &a in members {
            for &b in members {
                for &c in members {
                    if a < b && b < c && adj.has(a, b) && adj.has(a, c) && adj.has(b, c) {
                        tri += 1;
                    }
                }
            }
            // wedges centered at a: unordered pairs of in-cluster neighbors
            let d = members.iter().filter(|&&x| adj.has(a, x)).count() as u64;
            wedges += d * d.saturating_sub(1) / 2;
        }
        let density = if wedges == 0 { 1.0 } else { 3.0 * tri as f64 / wedges as f64 };
        acc += members.len() as f64 * density;
    }
    if labels.is_empty() { 1.0 } else { acc / labels.len() as f64 }
}

/// Pair-counting adjusted Rand index over all `n(n-1)/2` vertex pairs.
pub fn ari(a: &[u32], b: &[u32]) -> f64 {
    let (mut n11, mut n10, mut n01, mut n00) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            match (a[i] == a[j], b[i] == b[j]) {
                (true, true) => n11 += 1.0,
                (true, false) => n10 += 1.0,
                (false, true) => n01 += 1.0,
                (false, false) => n00 += 1.0,
            }
        }
    }
    let denom = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11);
    if denom == 0.0 {
        return 1.0;
    }
    2.0 * (n00 * n11 - n01 * n10) / denom
}

/// NMI with arithmetic-mean normalization, from an explicit joint table.
pub fn nmi(a: &[u32], b: &[u32]) -> f64 {
    let n = a.len() as f64;
    let la: BTreeSet<u32> = a.iter().copied().collect();
    let lb: BTreeSet<u32> = b.iter().copied().collect();
    let count = |f: &dyn Fn(usize) -> bool| (0..a.len()).filter(|&i| f(i)).count() as f64;
    let mut ha = 0.0;
    for &x in &la {
        let p = count(&|i| a[i] == x) / n;
        ha -= p * p.log2();
    }
    let mut hb = 0.0;
    for &y in &lb {
        let p = count(&|i| b[i] == y) / n;
        hb -= p * p.log2();
    }
    let mut mi = 0.0;
    for &x in &la {
        for &y in &lb {
            let pxy = count(&|i| a[i] == x && b[i] == y) / n;
            if pxy > 0.0 {
                let px = count(&|i| a[i] == x) / n;
                let py = count(&|i| b[i] == y) / n;
                mi += pxy * (pxy / (px * py)).log2();
            }
        }
    }
    if ha + hb == 0.0 {
        return 1.0;
    }
    (2.0 * mi / (ha + hb)).clamp(0.0, 1.0)
}

/// Indices of non-dominated points when both coordinates are maximized.
/// Among identical points only the first index is kept. Output is ascending
/// by x.
pub fn pareto_max_max(points: &[(f64, f64)]) -> Vec<usize> {
    let mut keep: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let (x, y) = points[i];
            !points.iter().enumerate().any(|(j, &(xj, yj))| {
                (xj >= x && yj >= y && (xj, yj) != (x, y)) || ((xj, yj) == (x, y) && j < i)
            })
        })
        .collect();
    keep.sort_by(|&i, &j| points[i].0.total_cmp(&points[j].0));
    keep
}

/// Like [`pareto_max_max`] with x minimized.
pub fn pareto_min_max(points: &[(f64, f64)]) -> Vec<usize> {
    let flipped: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (-x, y)).collect();
    let mut keep = pareto_max_max(&flipped);
    keep.sort_by(|&i, &j| points[i].0.total_cmp(&points[j].0));
    keep
}

/// LambdaCC objective summed over co-clustered unordered pairs:
/// `Σ (w_uv − λ k_u k_v)`.
pub fn lambda_cc(adj: &Adjacency, labels: &[u32], k: &[f64], lambda: f64) -> f64 {
    let mut s = 0.0;
    for u in 0..adj.n {
        for v in u + 1..adj.n {
            if labels[u] == labels[v] {
                s += adj.weight(u as u32, v as u32) - lambda * k[u] * k[v];
            }
        }
    }
    s
}

/// Calls `f` with every set partition of `0..n` as a restricted growth
/// string.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[u32])) {
    fn rec(i: usize, max: u32, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if i == cur.len() {
            f(cur);
            return;
        }
        for l in 0..=max + 1 {
            cur[i] = l;
            rec(i + 1, max.max(l), cur, f);
        }
    }
    if n == 0 {
        f(&[]);
        return;
    }
    let mut cur = vec![0u32; n];
    rec(1, 0, &mut cur, &mut f);
}

/// Best LambdaCC score over all partitions.
pub fn lambda_cc_optimum(adj: &Adjacency, k: &[f64], lambda: f64) -> (f64, Vec<u32>) {
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for_each_partition(adj.n, |p| {
        let s = lambda_cc(adj, p, k, lambda);
        if s > best.0 {
            best = (s, p.to_vec());
        }
    });
    best
}

/// Modularity `Σ_C [W(C)/W − γ (d_C / 2W)²]` by direct summation.
pub fn modularity(adj: &Adjacency, labels: &[u32], gamma: f64) -> f64 {
    let total: f64 = adj.edges().iter().map(|e| e.2).sum();
    let deg: Vec<f64> = adj.rows.iter().map(|r| r.values().sum()).collect();
    let mut inside: BTreeMap<u32, f64> = BTreeMap::new();
    let mut vol: BTreeMap<u32, f64> = BTreeMap::new();
    for (u, v, w) in adj.edges() {
        if labels[u as usize] == labels[v as usize] {
            *inside.entry(labels[u as usize]).or_default() += w;
        }
    }
    for (u, &d) in deg.iter().enumerate() {
        *vol.entry(labels[u]).or_default() += d;
    }
    vol.iter()
        .map(|(l, &d)| inside.get(l).copied().unwrap_or(0.0) / total - gamma * (d / (2.0 * total)).powi(2))
        .sum()
}

/// Current clusters in a hierarchical merge replay.
struct Replay {
    cluster_of: Vec<u32>,
    size: HashMap<u32, f64>,
}

impl Replay {
    fn linkages(&self, adj: &Adjacency) -> HashMap<(u32, u32), f64> {
        let mut w: HashMap<(u32, u32), f64> = HashMap::new();
        for (u, v, x) in adj.edges() {
            let (a, b) = (self.cluster_of[u as usize], self.cluster_of[v as usize]);
            if a != b {
                *w.entry((a.min(b), a.max(b))).or_default() += x;
            }
        }
        w.into_iter()
            .map(|((a, b), x)| ((a, b), x / (self.size[&a] * self.size[&b])))
            .collect()
    }
}

/// Exact sequential average-linkage HAC: repeatedly merges the adjacent
/// pair with the largest linkage until no adjacent pair is left. Returns the
/// merge similarities in order.
pub fn exact_hac(adj: &Adjacency) -> Vec<f64> {
    let mut r = Replay {
        cluster_of: (0..adj.n as u32).collect(),
        size: (0..adj.n as u32).map(|v| (v, 1.0)).collect(),
    };
    let mut out = Vec::new();
    loop {
        let link = r.linkages(adj);
        let Some((&(a, b), &l)) = link
            .iter()
            .max_by(|x, y| x.1.total_cmp(y.1).then(y.0.cmp(x.0)))
        else {
            break;
        };
        out.push(l);
        let sb = r.size.remove(&b).unwrap();
        *r.size.get_mut(&a).unwrap() += sb;
        for c in r.cluster_of.iter_mut() {
            if *c == b {
                *c = a;
            }
        }
    }
    out
}

/// One replayed merge: the similarity the algorithm recorded, the linkage
/// of the two clusters recomputed from scratch, and the largest linkage of
/// any adjacent pair right before the merge.
#[derive(Clone, Copy, Debug)]
pub struct ReplayedMerge {
    pub recorded: f64,
    pub actual: f64,
    pub global_max: f64,
}

/// Replays a dendrogram given as `(left, right, similarity)` triples, where
/// leaves are `0..n` and merge `i` creates node `n + i`.
pub fn replay_merges(adj: &Adjacency, merges: &[(u32, u32, f64)]) -> Vec<ReplayedMerge> {
    let n = adj.n as u32;
    let mut r = Replay {
        cluster_of: (0..n).collect(),
        size: (0..n).map(|v| (v, 1.0)).collect(),
    };
    // representative leaf (the cluster id used in `cluster_of`) per node
    let mut rep: Vec<u32> = (0..n).collect();
    let mut out = Vec::new();
    for &(left, right, sim) in merges {
        let link = r.linkages(adj);
        let (a, b) = (rep[left as usize], rep[right as usize]);
        let actual = link.get(&(a.min(b), a.max(b))).copied().unwrap_or(0.0);
        let global_max = link.values().copied().fold(f64::NEG_INFINITY, f64::max);
        out.push(ReplayedMerge {
            recorded: sim,
            actual,
            global_max,
        });
        let sb = r.size.remove(&b).unwrap();
        *r.size.get_mut(&a).unwrap() += sb;
        for c in r.cluster_of.iter_mut() {
            if *c == b {
                *c = a;
            }
        }
        rep.push(a);
    }
    out
}

/// Exact diameter of the subgraph induced by `members` (largest finite
/// distance), by BFS from every member.
pub fn induced_diameter(adj: &Adjacency, members: &[u32]) -> u32 {
    let inside: BTreeSet<u32> = members.iter().copied().collect();
    let mut best = 0;
    let mut dist: HashMap<u32, u32> = HashMap::new();
    for &s in members {
        dist.clear();
        dist.insert(s, 0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let d = dist[&u];
            best = best.max(d);
            for &v in adj.rows[u as usize].keys() {
                if inside.contains(&v) && !dist.contains_key(&v) {
                    dist.insert(v, d + 1);
                    q.push_back(v);
                }
            }
        }
    }
    best
}

/// k-NN edge set (`u < v`) under Euclidean distance with the union rule,
/// by fully sorting every candidate list.
pub fn knn_edges(points: &[Vec<f64>], k: usize) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        let mut cand: Vec<(f64, usize)> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(j, q)| {
                let d: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
                (d.sqrt(), j)
            })
            .collect();
        cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, j) in cand.iter().take(k) {
            out.insert((i.min(j) as u32, i.max(j) as u32));
        }
    }
    out
}
