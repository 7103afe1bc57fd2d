#![allow(dead_code)]

use parclust_core::Graph;
use parclust_oracles::{Adjacency, Edge};
use proptest::prelude::*;

/// Random simple graph as `(n, edges)` with `n` in `1..=max_n`.
pub fn graph_strategy(max_n: usize, weighted: bool) -> impl Strategy<Value = (usize, Vec<Edge>)> {
    (1..=max_n).prop_flat_map(move |n| {
        let density = 0.02f64..0.6;
        (Just(n), density, any::<u64>()).prop_map(move |(n, p, seed)| (n, random_edges(n, p, weighted, seed)))
    })
}

/// Erdős–Rényi style edges from a small deterministic PRNG.
pub fn random_edges(n: usize, p: f64, weighted: bool, seed: u64) -> Vec<Edge> {
    let mut state = seed ^ 0x5deece66d;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if next() < p {
                let w = if weighted { 0.05 + next() } else { 1.0 };
                edges.push((u, v, w));
            }
        }
    }
    edges
}

pub fn build(n: usize, edges: &[Edge], weighted: bool) -> (Graph, Adjacency) {
    (
        Graph::from_edges(n, edges.to_vec(), weighted).unwrap(),
        Adjacency::new(n, edges),
    )
}

pub fn labels_of(c: &parclust_core::Clustering) -> Vec<u32> {
    c.labels().expect("flat clustering").to_vec()
}

pub fn two_triangles_bridge() -> Vec<Edge> {
    vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0), (2, 3, 1.0)]
}
