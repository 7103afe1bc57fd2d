use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Dense row-major vectors with optional per-row labels.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorSet {
    count: usize,
    dimension: usize,
    values: Vec<f64>,
    labels: Option<Vec<u32>>,
}

impl VectorSet {
    pub fn new(dimension: usize, values: Vec<f64>) -> Result<VectorSet> {
        if dimension == 0 {
            return Err(Error::InvalidInput("vector dimension must be >= 1".into()));
        }
        if !values.len().is_multiple_of(dimension) {
            return Err(Error::InvalidInput(format!(
                "{} values do not split into rows of {dimension}",
                values.len()
            )));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("vector values must be finite".into()));
        }
        Ok(VectorSet {
            count: values.len() / dimension,
            dimension,
            values,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<u32>) -> Result<VectorSet> {
        if labels.len() != self.count {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} vectors",
                labels.len(),
                self.count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Header line `n d`, then `n` lines of `d` reals.
    pub fn load(path: impl AsRef<Path>) -> Result<VectorSet> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(path, 1, "missing `n d` header"))?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(path, hl + 1, format!("bad header token `{t}`"))))
            .collect::<Result<_>>()?;
        let [n, d] = head[..] else {
            return Err(Error::parse(path, hl + 1, "header must be `n d`"));
        };
        let mut values = Vec::with_capacity(n * d);
        let mut rows = 0;
        for (i, line) in lines {
            let before = values.len();
            for t in line.split_whitespace() {
                values.push(
                    t.parse::<f64>()
                        .map_err(|_| Error::parse(path, i + 1, format!("bad value `{t}`")))?,
                );
            }
            if values.len() - before != d {
                return Err(Error::parse(path, i + 1, format!("expected {d} values per row")));
            }
            rows += 1;
        }
        if rows != n {
            return Err(Error::InvalidFormat(format!(
                "{}: header announces {n} rows, found {rows}",
                path.display()
            )));
        }
        VectorSet::new(d, values)
    }

    /// Whitespace-separated integer labels, one per vector.
    pub fn load_labels(self, path: impl AsRef<Path>) -> Result<VectorSet> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let labels = text
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::InvalidFormat(format!("{}: bad label `{t}`", path.display())))
            })
            .collect::<Result<Vec<u32>>>()?;
        self.with_labels(labels)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = format!("{} {}\n", self.count, self.dimension);
        for row in self.values.chunks(self.dimension) {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }
}

/// Isotropic Gaussian blobs, `per_center` points around each center, labeled
/// by center index.
pub fn gaussian_blobs(centers: &[Vec<f64>], per_center: usize, sigma: f64, seed: u64) -> Result<VectorSet> {
    let d = centers.first().map_or(0, Vec::len);
    if centers.iter().any(|c| c.len() != d) {
        return Err(Error::InvalidInput("centers must share one dimension".into()));
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(centers.len() * per_center * d);
    let mut labels = Vec::new();
    for (ci, c) in centers.iter().enumerate() {
        for _ in 0..per_center {
            values.extend(c.iter().map(|&x| x + normal.sample(&mut rng)));
            labels.push(ci as u32);
        }
    }
    VectorSet::new(d, values)?.with_labels(labels)
}
