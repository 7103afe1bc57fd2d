use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::util::stream_rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RmatParams {
    pub log2_n: u32,
    /// Number of sampled edges per vertex before deduplication.
    pub edge_factor: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub seed: u64,
}

impl Default for RmatParams {
    fn default() -> Self {
        RmatParams {
            log2_n: 10,
            edge_factor: 16,
            a: 0.5,
            b: 0.1,
            c: 0.1,
            d: 0.3,
            seed: 0,
        }
    }
}

impl RmatParams {
    pub fn validate(&self) -> Result<()> {
        let probs = [self.a, self.b, self.c, self.d];
        if probs.iter().any(|&p| !(p >= 0.0)) || ((probs.iter().sum::<f64>()) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "quadrant probabilities must be >= 0 and sum to 1, got {probs:?}"
            )));
        }
        if self.log2_n > 31 {
            return Err(Error::InvalidParameter("log2_n must be <= 31".into()));
        }
        Ok(())
    }
}

const CHUNK: usize = 1 << 16;

pub fn generate_rmat(p: &RmatParams) -> Result<Graph> {
    p.validate()?;
    let n = 1usize << p.log2_n;
    let m = n * p.edge_factor;
    let (ab, abc) = (p.a + p.b, p.a + p.b + p.c);
    let edges: Vec<(NodeId, NodeId, f64)> = (0..m.div_ceil(CHUNK))
        .into_par_iter()
        .flat_map_iter(|chunk| {
            let mut rng = stream_rng(p.seed, 0x72a7, chunk as u64);
            let len = CHUNK.min(m - chunk * CHUNK);
            (0..len).map(move |_| {
                let (mut u, mut v) = (0u32, 0u32);
                for _ in 0..p.log2_n {
                    let r: f64 = rng.random();
                    let (du, dv) = if r < p.a {
                        (0, 0)
                    } else if r < ab {
                        (0, 1)
                    } else if r < abc {
                        (1, 0)
                    } else {
                        (1, 1)
                    };
                    u = (u << 1) | du;
                    v = (v << 1) | dv;
                }
                (u, v, 1.0)
            })
        })
        .collect();
    Graph::from_edges(n, edges, false)
}
