use super::{Graph, NodeId};

/// Core number of every vertex by bucket peeling (Batagelj–Zaversnik).
///
/// Vertices are kept in an array sorted by current degree with `bucket_start`
/// marking where each degree begins; removing the minimum vertex decrements
/// its higher-degree neighbors by swapping them to the front of their bucket.
pub fn core_numbers(g: &Graph) -> Vec<u32> {
    let n = g.num_vertices();
    if n == 0 {
        return Vec::new();
    }
    let mut degree: Vec<usize> = (0..n).map(|u| g.degree(u as NodeId)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    let mut bucket_start = vec![0usize; max_deg + 2];
    for &d in &degree {
        bucket_start[d + 1] += 1;
    }
    for d in 0..=max_deg {
        bucket_start[d + 1] += bucket_start[d];
    }
    let mut order = vec![0 as NodeId; n];
    let mut position = vec![0usize; n];
    let mut fill = bucket_start.clone();
    for u in 0..n {
        let d = degree[u];
        position[u] = fill[d];
        order[fill[d]] = u as NodeId;
        fill[d] += 1;
    }

    for i in 0..n {
        let u = order[i] as usize;
        for &v in g.neighbors(u as NodeId) {
            let v = v as usize;
            if degree[v] > degree[u] {
                let dv = degree[v];
                let first = bucket_start[dv];
                let w = order[first] as usize;
                if w != v {
                    order.swap(position[v], first);
                    position[w] = position[v];
                    position[v] = first;
                }
                bucket_start[dv] += 1;
                degree[v] -= 1;
            }
        }
    }
    degree.into_iter().map(|d| d as u32).collect()
}
