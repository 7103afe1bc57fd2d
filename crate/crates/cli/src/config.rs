//! Benchmark and statistics configuration files.
//!
//! Grammar: top-level `Key: value` lines; a clusterer block is a bare
//! `<Name>:` line followed by an indented `config:` line and more deeply
//! indented `key: v1; v2; ...` parameter lines. `#` starts a comment line.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde_json::Value;

use crate::registry;
use crate::ConfigError;

#[derive(Clone, Debug, PartialEq)]
pub struct GridParam {
    pub name: String,
    pub values: Vec<Value>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClustererSpec {
    pub name: String,
    /// Parameter grid in file order.
    pub grid: Vec<GridParam>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub input_directory: PathBuf,
    pub output_directory: PathBuf,
    pub csv_output_directory: PathBuf,
    pub clusterers: Vec<ClustererSpec>,
    pub graphs: Vec<String>,
    /// Read graphs in the binary CSR format instead of text edge lists.
    pub gbbs_format: bool,
    pub weighted: bool,
    pub num_threads: usize,
    pub num_rounds: usize,
    pub timeout: Option<Duration>,
}

impl BenchConfig {
    pub fn graph_path(&self, graph: &str) -> PathBuf {
        self.input_directory.join(graph)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatsConfig {
    pub input_communities: Vec<String>,
    pub input_pairs: Vec<String>,
    pub statistics: StatisticsFlags,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatisticsFlags {
    pub compute_precision_recall: bool,
    pub compute_edge_density: bool,
    pub compute_triangle_density: bool,
    pub compute_ari: bool,
    pub compute_nmi: bool,
    pub compute_cluster_size: bool,
    pub compute_diameter: bool,
    pub compute_lambda_cc: bool,
    pub compute_modularity: bool,
    pub compute_pair_precision_recall: bool,
    pub f_score_param: f64,
    pub lambda_cc_resolution: f64,
    pub modularity_gamma: f64,
    pub pair_threshold: f64,
}

impl Default for StatisticsFlags {
    fn default() -> Self {
        StatisticsFlags {
            compute_precision_recall: false,
            compute_edge_density: false,
            compute_triangle_density: false,
            compute_ari: false,
            compute_nmi: false,
            compute_cluster_size: false,
            compute_diameter: false,
            compute_lambda_cc: false,
            compute_modularity: false,
            compute_pair_precision_recall: false,
            f_score_param: 1.0,
            lambda_cc_resolution: 0.01,
            modularity_gamma: 1.0,
            pair_threshold: 0.5,
        }
    }
}

impl StatisticsFlags {
    pub fn needs_communities(&self) -> bool {
        self.compute_precision_recall || self.compute_ari || self.compute_nmi
    }

    /// Metric CSV columns, in output order, for the enabled flags.
    pub fn columns(&self) -> Vec<&'static str> {
        let groups: [(bool, &[&'static str]); 10] = [
            (self.compute_precision_recall, &["precision", "recall", "f_score"]),
            (self.compute_ari, &["ari"]),
            (self.compute_nmi, &["nmi"]),
            (self.compute_edge_density, &["weighted_edge_density"]),
            (self.compute_triangle_density, &["triangle_density"]),
            (self.compute_lambda_cc, &["lambda_cc_score"]),
            (self.compute_modularity, &["modularity_score"]),
            (self.compute_pair_precision_recall, &["pair_precision", "pair_recall"]),
            (
                self.compute_cluster_size,
                &["cluster_count", "cluster_size_min", "cluster_size_max", "cluster_size_mean"],
            ),
            (self.compute_diameter, &["diameter_min", "diameter_max", "diameter_mean"]),
        ];
        groups.iter().filter(|g| g.0).flat_map(|g| g.1.iter().copied()).collect()
    }
}

struct Line<'a> {
    number: usize,
    indent: usize,
    key: &'a str,
    value: &'a str,
}

fn lines(text: &str) -> Result<Vec<Line<'_>>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let number = i + 1;
        let indent = raw.len() - raw.trim_start().len();
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(ConfigError::at(number, format!("expected `key: value`, got `{trimmed}`")));
        };
        out.push(Line {
            number,
            indent,
            key: key.trim(),
            value: value.trim(),
        });
    }
    Ok(out)
}

fn split_list(value: &str) -> Vec<&str> {
    value.split(';').map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// Numbers become JSON numbers, `true`/`false` booleans, anything else a
/// string.
pub fn parse_value(token: &str) -> Value {
    match token {
        "true" => return Value::Bool(true),
        "false" => return Value::Bool(false),
        _ => {}
    }
    if let Ok(i) = token.parse::<i64>() {
        return Value::from(i);
    }
    if let Ok(f) = token.parse::<f64>() {
        if let Some(n) = serde_json::Number::from_f64(f) {
            return Value::Number(n);
        }
    }
    Value::String(token.to_string())
}

fn parse_bool(line: &Line) -> Result<bool, ConfigError> {
    match line.value {
        "true" => Ok(true),
        "false" => Ok(false),
        v => Err(ConfigError::at(line.number, format!("`{}` expects true or false, got `{v}`", line.key))),
    }
}

fn parse_count(line: &Line) -> Result<usize, ConfigError> {
    match line.value.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(ConfigError::at(
            line.number,
            format!("`{}` expects a positive integer, got `{}`", line.key, line.value),
        )),
    }
}

fn parse_f64(line: &Line) -> Result<f64, ConfigError> {
    line.value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ConfigError::at(line.number, format!("`{}` expects a number, got `{}`", line.key, line.value)))
}

/// Durations like `500ms`, `30s`, `5m`, `7h`; a bare number is seconds.
pub fn parse_duration(text: &str) -> Option<Duration> {
    let text = text.trim();
    let split = text.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(text.len());
    let (num, unit) = text.split_at(split);
    let v: f64 = num.trim().parse().ok().filter(|v: &f64| *v >= 0.0 && v.is_finite())?;
    let secs = match unit.trim() {
        "" | "s" => v,
        "ms" => v / 1000.0,
        "m" => v * 60.0,
        "h" => v * 3600.0,
        _ => return None,
    };
    Some(Duration::from_secs_f64(secs))
}

pub fn parse_bench_config(text: &str) -> Result<BenchConfig, ConfigError> {
    let lines = lines(text)?;
    let mut cfg = BenchConfig {
        input_directory: PathBuf::from("."),
        output_directory: PathBuf::from("."),
        csv_output_directory: PathBuf::new(),
        clusterers: Vec::new(),
        graphs: Vec::new(),
        gbbs_format: false,
        weighted: false,
        num_threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        num_rounds: 1,
        timeout: None,
    };
    let mut csv_dir = None;
    let mut listed: Option<(usize, Vec<String>)> = None;
    let mut blocks: Vec<(usize, ClustererSpec)> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = &lines[i];
        i += 1;
        if line.indent > 0 {
            return Err(ConfigError::at(line.number, format!("unexpected indented line `{}`", line.key)));
        }
        if line.value.is_empty() {
            // clusterer block
            let name = line.key;
            if !registry::is_known(name) {
                return Err(ConfigError::at(line.number, format!("unknown clusterer `{name}`")));
            }
            let mut spec = ClustererSpec { name: name.to_string(), grid: Vec::new() };
            if i < lines.len() && lines[i].indent > 0 {
                let header = &lines[i];
                if header.key != "config" || !header.value.is_empty() {
                    return Err(ConfigError::at(header.number, format!("expected `config:` under `{name}`")));
                }
                i += 1;
                while i < lines.len() && lines[i].indent > header.indent {
                    let p = &lines[i];
                    i += 1;
                    let values: Vec<Value> = split_list(p.value).into_iter().map(parse_value).collect();
                    if values.is_empty() {
                        return Err(ConfigError::at(p.number, format!("parameter `{}` has no values", p.key)));
                    }
                    if spec.grid.iter().any(|g| g.name == p.key) {
                        return Err(ConfigError::at(p.number, format!("parameter `{}` given twice", p.key)));
                    }
                    for v in &values {
                        registry::check_param(name, p.key, v).map_err(|m| ConfigError::at(p.number, m))?;
                    }
                    spec.grid.push(GridParam { name: p.key.to_string(), values, line: p.number });
                }
            }
            if blocks.iter().any(|(_, b)| b.name == spec.name) {
                return Err(ConfigError::at(line.number, format!("duplicate block for `{name}`")));
            }
            blocks.push((line.number, spec));
            continue;
        }
        match line.key {
            "Input directory" => cfg.input_directory = PathBuf::from(line.value),
            "Output directory" => cfg.output_directory = PathBuf::from(line.value),
            "CSV output directory" => csv_dir = Some(PathBuf::from(line.value)),
            "Clusterers" => {
                let names: Vec<String> = split_list(line.value).into_iter().map(String::from).collect();
                for n in &names {
                    if !registry::is_known(n) {
                        return Err(ConfigError::at(line.number, format!("unknown clusterer `{n}`")));
                    }
                }
                listed = Some((line.number, names));
            }
            "Graphs" => cfg.graphs = split_list(line.value).into_iter().map(String::from).collect(),
            "GBBS format" => cfg.gbbs_format = parse_bool(line)?,
            "Weighted" => cfg.weighted = parse_bool(line)?,
            "Number of threads" => cfg.num_threads = parse_count(line)?,
            "Number of rounds" => cfg.num_rounds = parse_count(line)?,
            "Timeout" => {
                cfg.timeout = Some(parse_duration(line.value).ok_or_else(|| {
                    ConfigError::at(line.number, format!("invalid timeout `{}`", line.value))
                })?)
            }
            other => return Err(ConfigError::at(line.number, format!("unknown key `{other}`"))),
        }
    }
    let Some((_, names)) = listed else {
        return Err(ConfigError::new("missing required `Clusterers:` line"));
    };
    if cfg.graphs.is_empty() {
        return Err(ConfigError::new("missing required `Graphs:` line"));
    }
    for (line, b) in &blocks {
        if !names.contains(&b.name) {
            return Err(ConfigError::at(*line, format!("`{}` has a config block but is not listed in Clusterers", b.name)));
        }
    }
    cfg.clusterers = names
        .into_iter()
        .map(|name| {
            blocks
                .iter()
                .find(|(_, b)| b.name == name)
                .map(|(_, b)| b.clone())
                .unwrap_or(ClustererSpec { name, grid: Vec::new() })
        })
        .collect();
    cfg.csv_output_directory = csv_dir.unwrap_or_else(|| cfg.output_directory.clone());
    Ok(cfg)
}

pub fn parse_stats_config(text: &str) -> Result<StatsConfig, ConfigError> {
    let lines = lines(text)?;
    let mut cfg = StatsConfig {
        input_communities: Vec::new(),
        input_pairs: Vec::new(),
        statistics: StatisticsFlags::default(),
    };
    let mut i = 0;
    while i < lines.len() {
        let line = &lines[i];
        i += 1;
        if line.indent > 0 {
            return Err(ConfigError::at(line.number, format!("unexpected indented line `{}`", line.key)));
        }
        match (line.key, line.value.is_empty()) {
            ("Input communities", false) => {
                cfg.input_communities = split_list(line.value).into_iter().map(String::from).collect()
            }
            ("Input pairs", false) => cfg.input_pairs = split_list(line.value).into_iter().map(String::from).collect(),
            ("statistics_config", true) => {
                while i < lines.len() && lines[i].indent > 0 {
                    set_stat(&mut cfg.statistics, &lines[i])?;
                    i += 1;
                }
            }
            (other, _) => return Err(ConfigError::at(line.number, format!("unknown key `{other}`"))),
        }
    }
    Ok(cfg)
}

fn set_stat(s: &mut StatisticsFlags, line: &Line) -> Result<(), ConfigError> {
    let flag = match line.key {
        "compute_precision_recall" => &mut s.compute_precision_recall,
        "compute_edge_density" => &mut s.compute_edge_density,
        "compute_triangle_density" => &mut s.compute_triangle_density,
        "compute_ari" => &mut s.compute_ari,
        "compute_nmi" => &mut s.compute_nmi,
        "compute_cluster_size" => &mut s.compute_cluster_size,
        "compute_diameter" => &mut s.compute_diameter,
        "compute_lambda_cc" => &mut s.compute_lambda_cc,
        "compute_modularity" => &mut s.compute_modularity,
        "compute_pair_precision_recall" => &mut s.compute_pair_precision_recall,
        "f_score_param" => {
            let v = parse_f64(line)?;
            if v <= 0.0 {
                return Err(ConfigError::at(line.number, format!("f_score_param must be > 0, got {v}")));
            }
            s.f_score_param = v;
            return Ok(());
        }
        "lambda_cc_resolution" => {
            s.lambda_cc_resolution = parse_f64(line)?;
            return Ok(());
        }
        "modularity_gamma" => {
            s.modularity_gamma = parse_f64(line)?;
            return Ok(());
        }
        "pair_threshold" => {
            s.pair_threshold = parse_f64(line)?;
            return Ok(());
        }
        other => return Err(ConfigError::at(line.number, format!("unknown statistic `{other}`"))),
    };
    *flag = parse_bool(line)?;
    Ok(())
}

pub fn load_bench_config(path: &Path) -> Result<BenchConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new(format!("cannot read {}: {e}", path.display())))?;
    parse_bench_config(&text).map_err(|e| e.in_file(path))
}

pub fn load_stats_config(path: &Path) -> Result<StatsConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new(format!("cannot read {}: {e}", path.display())))?;
    parse_stats_config(&text).map_err(|e| e.in_file(path))
}
