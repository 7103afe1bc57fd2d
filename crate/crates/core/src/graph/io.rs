//! Text edge lists and the binary CSR container.
//!
//! Binary layout, all integers little-endian:
//!
//! ```text
//! magic   "PCBS-CSR1"            9 bytes
//! flags   u8                     bit 0 = weighted
//! n       u64
//! m       u64                    undirected edge count
//! offsets (n + 1) x u64
//! targets 2m x u32
//! weights 2m x f64
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

pub const BINARY_MAGIC: &[u8; 9] = b"PCBS-CSR1";

/// Loads a whitespace-separated `u v [w]` edge list. Lines starting with `#`
/// (and blank lines) are skipped. When `weighted` is false any third column
/// is validated and then ignored.
pub fn load_edge_list(path: impl AsRef<Path>, weighted: bool) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(BufReader::new(file), path, weighted)
}

/// Parses an edge list from any reader; `origin` is only used in error messages.
pub fn parse_edge_list(reader: impl BufRead, origin: &Path, weighted: bool) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id: Option<NodeId> = None;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io(origin, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(Error::parse(
                origin,
                lineno,
                format!("expected `u v` or `u v w`, found {} tokens", tokens.len()),
            ));
        }
        let id = |t: &str| {
            t.parse::<NodeId>()
                .map_err(|_| Error::parse(origin, lineno, format!("invalid vertex id `{t}`")))
        };
        let u = id(tokens[0])?;
        let v = id(tokens[1])?;
        let w = match tokens.get(2) {
            Some(t) => {
                let w: f64 = t
                    .parse()
                    .map_err(|_| Error::parse(origin, lineno, format!("invalid weight `{t}`")))?;
                if !(w >= 0.0) || !w.is_finite() {
                    return Err(Error::parse(origin, lineno, format!("invalid weight `{t}`")));
                }
                w
            }
            None => 1.0,
        };
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, if weighted { w } else { 1.0 }));
    }
    let Some(max_id) = max_id else {
        return Err(Error::InvalidFormat(format!(
            "{}: edge list contains no edges",
            origin.display()
        )));
    };
    Graph::from_edges(max_id as usize + 1, edges, weighted)
}

/// Writes each undirected edge once as `u v` (unweighted) or `u v w`. If the
/// highest vertex is isolated a self-loop line `x x` is appended so that a
/// reload sees the same vertex count.
pub fn write_edge_list(g: &Graph, mut out: impl Write) -> std::io::Result<()> {
    for (u, v, w) in g.edges() {
        if g.is_weighted() {
            writeln!(out, "{u} {v} {w:?}")?;
        } else {
            writeln!(out, "{u} {v}")?;
        }
    }
    let n = g.num_vertices();
    if n > 0 && g.degree(n as NodeId - 1) == 0 {
        writeln!(out, "{0} {0}", n - 1)?;
    }
    out.flush()
}

pub fn save_binary(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_binary(g, &mut out).map_err(|e| Error::io(path, e))
}

fn write_binary(g: &Graph, out: &mut impl Write) -> std::io::Result<()> {
    out.write_all(BINARY_MAGIC)?;
    out.write_all(&[u8::from(g.is_weighted())])?;
    out.write_all(&(g.num_vertices() as u64).to_le_bytes())?;
    out.write_all(&(g.num_edges() as u64).to_le_bytes())?;
    for &o in g.offsets() {
        out.write_all(&(o as u64).to_le_bytes())?;
    }
    for &v in g.neighbor_slots() {
        out.write_all(&v.to_le_bytes())?;
    }
    for &w in g.weight_slots() {
        out.write_all(&w.to_le_bytes())?;
    }
    out.flush()
}

pub fn load_binary(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_binary(BufReader::new(file)).map_err(|e| match e {
        Error::InvalidFormat(msg) => Error::InvalidFormat(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn read_binary(mut input: impl Read) -> Result<Graph> {
    let truncated = |_| Error::InvalidFormat("truncated binary graph".into());
    let mut magic = [0u8; 9];
    input.read_exact(&mut magic).map_err(truncated)?;
    if &magic != BINARY_MAGIC {
        return Err(Error::InvalidFormat("bad magic, not a PCBS-CSR1 file".into()));
    }
    let mut flags = [0u8; 1];
    input.read_exact(&mut flags).map_err(truncated)?;
    let mut word = [0u8; 8];
    input.read_exact(&mut word).map_err(truncated)?;
    let n = u64::from_le_bytes(word) as usize;
    input.read_exact(&mut word).map_err(truncated)?;
    let m = u64::from_le_bytes(word) as usize;

    let mut buf = vec![0u8; (n + 1) * 8];
    input.read_exact(&mut buf).map_err(truncated)?;
    let offsets = buf
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()) as usize)
        .collect();
    let mut buf = vec![0u8; 2 * m * 4];
    input.read_exact(&mut buf).map_err(truncated)?;
    let neighbors = buf
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let mut buf = vec![0u8; 2 * m * 8];
    input.read_exact(&mut buf).map_err(truncated)?;
    let weights = buf
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Graph::from_csr(offsets, neighbors, weights, flags[0] & 1 == 1)
}

/// Loads either format: `binary` selects the CSR container, otherwise a text
/// edge list is read with the given `weighted` flag.
pub fn load_graph(path: impl AsRef<Path>, binary: bool, weighted: bool) -> Result<Graph> {
    if binary {
        load_binary(path)
    } else {
        load_edge_list(path, weighted)
    }
}
