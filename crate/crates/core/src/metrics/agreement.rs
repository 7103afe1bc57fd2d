use std::collections::HashMap;

use crate::clustering::Clustering;
use crate::error::{Error, Result};

fn flat_pair<'a>(a: &'a Clustering, b: &'a Clustering) -> Result<(&'a [u32], &'a [u32])> {
    let (Some(la), Some(lb)) = (a.labels(), b.labels()) else {
        return Err(Error::InvalidInput(
            "ARI and NMI are defined for non-overlapping clusterings only".into(),
        ));
    };
    if la.len() != lb.len() {
        return Err(Error::InvalidInput(format!(
            "clusterings cover {} and {} vertices",
            la.len(),
            lb.len()
        )));
    }
    Ok((la, lb))
}

struct Contingency {
    cells: HashMap<(u32, u32), u64>,
    rows: Vec<u64>,
    cols: Vec<u64>,
    n: u64,
}

fn contingency(la: &[u32], lb: &[u32]) -> Contingency {
    let ka = la.iter().max().map_or(0, |&m| m as usize + 1);
    let kb = lb.iter().max().map_or(0, |&m| m as usize + 1);
    let mut t = Contingency {
        cells: HashMap::new(),
        rows: vec![0; ka],
        cols: vec![0; kb],
        n: la.len() as u64,
    };
    for (&x, &y) in la.iter().zip(lb) {
        *t.cells.entry((x, y)).or_default() += 1;
        t.rows[x as usize] += 1;
        t.cols[y as usize] += 1;
    }
    t
}

fn choose2(x: u64) -> f64 {
    x as f64 * (x as f64 - 1.0) / 2.0
}

/// Adjusted Rand index. Returns 1 when the index is undefined (both
/// clusterings trivial in the same way, or fewer than two vertices).
pub fn ari(a: &Clustering, b: &Clustering) -> Result<f64> {
    let (la, lb) = flat_pair(a, b)?;
    let t = contingency(la, lb);
    let index: f64 = t.cells.values().map(|&c| choose2(c)).sum();
    let sa: f64 = t.rows.iter().map(|&c| choose2(c)).sum();
    let sb: f64 = t.cols.iter().map(|&c| choose2(c)).sum();
    let total = choose2(t.n);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = sa * sb / total;
    let max = (sa + sb) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// Normalized mutual information with the arithmetic mean of the two
/// entropies as normalizer; 1 when both entropies are zero.
pub fn nmi(a: &Clustering, b: &Clustering) -> Result<f64> {
    let (la, lb) = flat_pair(a, b)?;
    if la.is_empty() {
        return Ok(1.0);
    }
    let t = contingency(la, lb);
    let n = t.n as f64;
    let entropy = |counts: &[u64]| -> f64 {
        counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.ln()
            })
            .sum()
    };
    let (ha, hb) = (entropy(&t.rows), entropy(&t.cols));
    let mi: f64 = t
        .cells
        .iter()
        .map(|(&(x, y), &c)| {
            let c = c as f64;
            c / n * (c * n / (t.rows[x as usize] as f64 * t.cols[y as usize] as f64)).ln()
        })
        .sum();
    let norm = (ha + hb) / 2.0;
    if norm <= 0.0 {
        return Ok(1.0);
    }
    Ok((mi / norm).clamp(0.0, 1.0))
}
