//! Running an expanded grid and writing its artifacts.

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use parclust_core::graph::load_graph;
use parclust_core::metrics::{evaluate, EvalInputs, GroundTruth, MetricSelection, MetricsReport, PairLabels};
use parclust_core::{CancelToken, Clustering, Error as CoreError, Graph};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{BenchConfig, StatisticsFlags, StatsConfig};
use crate::grid::{expand_grid, param_hash, params_json, Job, ParamSet};
use crate::registry::{configure, RunOptions};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Timeout,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub graph: String,
    pub clusterer: String,
    pub params: ParamSet,
    pub round: usize,
    pub threads: usize,
    pub seconds: f64,
    pub status: Status,
    pub cluster_path: Option<PathBuf>,
    pub metrics: Option<MetricsReport>,
    pub message: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct ExecOptions {
    pub run: RunOptions,
    /// Number of runs executed concurrently; timings become contended above 1.
    pub parallel_runs: usize,
    /// Execute each run in a child process of this executable so timeouts
    /// can kill it.
    pub subprocess: Option<PathBuf>,
}

/// Extra time a child process gets beyond the timeout (graph loading is not
/// part of the measured run).
const CHILD_GRACE: Duration = Duration::from_secs(5);

pub fn cluster_file_name(job: &Job) -> String {
    format!("{}.{}.{}.{}.cluster", job.graph, job.clusterer, param_hash(&job.params), job.round)
}

/// Writes `path` through a temporary file in the same directory so readers
/// never observe partial output.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        fill(&mut w).map_err(io)?;
        w.flush().map_err(io)?;
    }
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn metric_selection(flags: &StatisticsFlags) -> MetricSelection {
    MetricSelection {
        precision_recall: flags.compute_precision_recall,
        f_score_param: flags.f_score_param,
        ari: flags.compute_ari,
        nmi: flags.compute_nmi,
        edge_density: flags.compute_edge_density,
        triangle_density: flags.compute_triangle_density,
        cluster_stats: flags.compute_cluster_size,
        diameter: flags.compute_diameter,
        pair_precision_recall: flags.compute_pair_precision_recall,
        lambda_cc_resolution: flags.compute_lambda_cc.then_some(flags.lambda_cc_resolution),
        modularity_gamma: flags.compute_modularity.then_some(flags.modularity_gamma),
    }
}

/// Value of a metrics CSV column.
pub fn metric_value(r: &MetricsReport, column: &str) -> Option<f64> {
    match column {
        "precision" => r.precision,
        "recall" => r.recall,
        "f_score" => r.f_beta,
        "ari" => r.ari,
        "nmi" => r.nmi,
        "weighted_edge_density" => r.weighted_edge_density,
        "triangle_density" => r.triangle_density,
        "lambda_cc_score" => r.lambda_cc_score,
        "modularity_score" => r.modularity_score,
        "pair_precision" => r.pair_precision,
        "pair_recall" => r.pair_recall,
        "cluster_count" => r.cluster_count.map(|c| c as f64),
        "cluster_size_min" => r.cluster_size_min,
        "cluster_size_max" => r.cluster_size_max,
        "cluster_size_mean" => r.cluster_size_mean,
        "diameter_min" => r.diameter_min,
        "diameter_max" => r.diameter_max,
        "diameter_mean" => r.diameter_mean,
        _ => None,
    }
}

/// Per-graph evaluation inputs, shared by all runs on that graph.
struct GraphInputs {
    graph: Result<Arc<Graph>, String>,
    truth: Option<Result<GroundTruth, String>>,
    pairs: Option<Result<PairLabels, String>>,
}

fn pick<'a>(files: &'a [String], index: usize, what: &str, graphs: usize) -> Result<Option<&'a String>, CliError> {
    match files.len() {
        0 => Ok(None),
        1 => Ok(files.first()),
        k if k == graphs => Ok(files.get(index)),
        k => Err(CliError::Config(crate::ConfigError::new(format!(
            "{k} {what} files for {graphs} graphs; give one per graph or a single shared file"
        )))),
    }
}

fn load_inputs(cfg: &BenchConfig, stats: Option<&StatsConfig>) -> Result<HashMap<String, GraphInputs>, CliError> {
    let mut out = HashMap::new();
    for (i, name) in cfg.graphs.iter().enumerate() {
        let graph = load_graph(cfg.graph_path(name), cfg.gbbs_format, cfg.weighted)
            .map(Arc::new)
            .map_err(|e| e.to_string());
        let (mut truth, mut pairs) = (None, None);
        if let Some(s) = stats {
            let flags = &s.statistics;
            if flags.needs_communities() {
                let file = pick(&s.input_communities, i, "community", cfg.graphs.len())?.ok_or_else(|| {
                    CliError::Config(crate::ConfigError::new(
                        "statistics need `Input communities:` for ground-truth metrics",
                    ))
                })?;
                truth = Some(GroundTruth::load(cfg.input_directory.join(file)).map_err(|e| e.to_string()));
            }
            if flags.compute_pair_precision_recall {
                let file = pick(&s.input_pairs, i, "pair", cfg.graphs.len())?.ok_or_else(|| {
                    CliError::Config(crate::ConfigError::new("pair metrics need `Input pairs:`"))
                })?;
                pairs = Some(
                    PairLabels::load(cfg.input_directory.join(file), flags.pair_threshold).map_err(|e| e.to_string()),
                );
            }
        }
        out.insert(name.clone(), GraphInputs { graph, truth, pairs });
    }
    Ok(out)
}

/// A job as handed to a child process.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChildJob {
    pub graph_path: PathBuf,
    pub binary: bool,
    pub weighted: bool,
    pub clusterer: String,
    pub params: ParamSet,
    pub deterministic: bool,
    pub seed: Option<u64>,
    pub threads: usize,
    pub timeout_ms: Option<u64>,
    pub out: PathBuf,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChildReport {
    pub status: Status,
    pub seconds: f64,
    pub message: Option<String>,
}

struct Timed {
    status: Status,
    seconds: f64,
    clustering: Option<Clustering>,
    message: Option<String>,
}

fn run_in_process(
    g: &Graph,
    clusterer: &str,
    params: &ParamSet,
    run: &RunOptions,
    threads: usize,
    timeout: Option<Duration>,
) -> Timed {
    let failed = |message: String| Timed { status: Status::Error, seconds: 0.0, clustering: None, message: Some(message) };
    let algo = match configure(clusterer, params, run) {
        Ok(a) => a,
        Err(m) => return failed(m),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return failed(e.to_string()),
    };
    let cancel = timeout.map_or_else(CancelToken::never, CancelToken::with_timeout);
    let start = Instant::now();
    let result = pool.install(|| algo.run(g, &cancel));
    let seconds = start.elapsed().as_secs_f64();
    let over = timeout.is_some_and(|t| seconds > t.as_secs_f64());
    match result {
        Err(CoreError::Cancelled) => Timed { status: Status::Timeout, seconds, clustering: None, message: None },
        Err(e) => Timed { seconds, ..failed(e.to_string()) },
        Ok(_) if over => Timed { status: Status::Timeout, seconds, clustering: None, message: None },
        Ok(out) => Timed { status: Status::Ok, seconds, clustering: Some(out.clustering), message: None },
    }
}

/// Entry point of a child process: load, cluster, write, report.
pub fn run_child(job: &ChildJob) -> ChildReport {
    let g = match load_graph(&job.graph_path, job.binary, job.weighted) {
        Ok(g) => g,
        Err(e) => return ChildReport { status: Status::Error, seconds: 0.0, message: Some(e.to_string()) },
    };
    let run = RunOptions { deterministic: job.deterministic, seed: job.seed };
    let t = run_in_process(&g, &job.clusterer, &job.params, &run, job.threads, job.timeout_ms.map(Duration::from_millis));
    let mut report = ChildReport { status: t.status, seconds: t.seconds, message: t.message };
    if let Some(c) = t.clustering {
        if let Err(e) = write_atomic(&job.out, |w| c.write(w)) {
            report.status = Status::Error;
            report.message = Some(e.to_string());
        }
    }
    report
}

fn run_in_child(exe: &Path, job: &ChildJob, timeout: Option<Duration>) -> ChildReport {
    let failed = |m: String| ChildReport { status: Status::Error, seconds: 0.0, message: Some(m) };
    let spec = match serde_json::to_string(job) {
        Ok(s) => s,
        Err(e) => return failed(e.to_string()),
    };
    let mut child = match Command::new(exe)
        .arg("run-one")
        .arg("--job")
        .arg(&spec)
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => return failed(format!("cannot start {}: {e}", exe.display())),
    };
    let start = Instant::now();
    let deadline = timeout.map(|t| t + CHILD_GRACE);
    loop {
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) => {}
            Err(e) => return failed(e.to_string()),
        }
        if deadline.is_some_and(|d| start.elapsed() > d) {
            let _ = child.kill();
            let _ = child.wait();
            let _ = fs::remove_file(&job.out);
            return ChildReport { status: Status::Timeout, seconds: start.elapsed().as_secs_f64(), message: Some("killed".into()) };
        }
        std::thread::sleep(Duration::from_millis(5));
    }
    let output = match child.wait_with_output() {
        Ok(o) => o,
        Err(e) => return failed(e.to_string()),
    };
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| failed(format!("child sent no report: {e}")))
}

struct Context<'a> {
    cfg: &'a BenchConfig,
    stats: Option<&'a StatsConfig>,
    opts: &'a ExecOptions,
    inputs: &'a HashMap<String, GraphInputs>,
}

fn run_job(job: &Job, ctx: &Context) -> RunRecord {
    let cfg = ctx.cfg;
    let mut rec = RunRecord {
        graph: job.graph.clone(),
        clusterer: job.clusterer.clone(),
        params: job.params.clone(),
        round: job.round,
        threads: cfg.num_threads,
        seconds: 0.0,
        status: Status::Error,
        cluster_path: None,
        metrics: None,
        message: None,
    };
    let inputs = &ctx.inputs[&job.graph];
    let g = match &inputs.graph {
        Ok(g) => g.clone(),
        Err(e) => {
            rec.message = Some(format!("graph failed to load: {e}"));
            return rec;
        }
    };
    let path = cfg.output_directory.join(cluster_file_name(job));
    let (status, seconds, clustering, message) = match &ctx.opts.subprocess {
        None => {
            let t = run_in_process(&g, &job.clusterer, &job.params, &ctx.opts.run, cfg.num_threads, cfg.timeout);
            (t.status, t.seconds, t.clustering, t.message)
        }
        Some(exe) => {
            let child = ChildJob {
                graph_path: cfg.graph_path(&job.graph),
                binary: cfg.gbbs_format,
                weighted: cfg.weighted,
                clusterer: job.clusterer.clone(),
                params: job.params.clone(),
                deterministic: ctx.opts.run.deterministic,
                seed: ctx.opts.run.seed,
                threads: cfg.num_threads,
                timeout_ms: cfg.timeout.map(|t| t.as_millis() as u64),
                out: path.clone(),
            };
            let r = run_in_child(exe, &child, cfg.timeout);
            let c = if r.status == Status::Ok {
                match Clustering::load(&path, Some(g.num_vertices())) {
                    Ok(c) => Some(c),
                    Err(e) => return RunRecord { message: Some(e.to_string()), ..rec },
                }
            } else {
                None
            };
            (r.status, r.seconds, c, r.message)
        }
    };
    rec.status = status;
    rec.seconds = seconds;
    rec.message = message;
    let Some(c) = clustering else {
        return rec;
    };
    if ctx.opts.subprocess.is_none() {
        if let Err(e) = write_atomic(&path, |w| c.write(w)) {
            rec.status = Status::Error;
            rec.message = Some(e.to_string());
            return rec;
        }
    }
    rec.cluster_path = Some(path.clone());

    if let Some(stats) = ctx.stats {
        let truth = match &inputs.truth {
            Some(Ok(t)) => Some(t),
            Some(Err(e)) => return RunRecord { status: Status::Error, message: Some(e.clone()), ..rec },
            None => None,
        };
        let pairs = match &inputs.pairs {
            Some(Ok(p)) => Some(p),
            Some(Err(e)) => return RunRecord { status: Status::Error, message: Some(e.clone()), ..rec },
            None => None,
        };
        let sel = metric_selection(&stats.statistics);
        match evaluate(&g, &c, &sel, EvalInputs { ground_truth: truth, pairs }) {
            Ok(report) => {
                let json_path = path.with_extension("metrics.json");
                let doc = serde_json::json!({
                    "graph": job.graph,
                    "clusterer": job.clusterer,
                    "params": job.params,
                    "round": job.round,
                    "metrics": report,
                });
                if let Err(e) = write_atomic(&json_path, |w| {
                    serde_json::to_writer_pretty(&mut *w, &doc)?;
                    writeln!(w)
                }) {
                    rec.status = Status::Error;
                    rec.message = Some(e.to_string());
                }
                rec.metrics = Some(report);
            }
            Err(e) => {
                rec.status = Status::Error;
                rec.message = Some(format!("metrics: {e}"));
            }
        }
    }
    rec
}

pub const RUN_COLUMNS: [&str; 7] = ["graph", "clusterer", "params_json", "round", "threads", "cluster_time_s", "status"];

fn base_row(r: &RunRecord) -> Vec<String> {
    vec![
        r.graph.clone(),
        r.clusterer.clone(),
        params_json(&r.params),
        r.round.to_string(),
        r.threads.to_string(),
        format!("{:.6}", r.seconds),
        r.status.as_str().to_string(),
    ]
}

fn write_csv(path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<(), CliError> {
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(header)?;
        for row in rows {
            out.write_record(&row)?;
        }
        out.flush()
    })
}

pub fn write_runs_csv(path: &Path, records: &[RunRecord]) -> Result<(), CliError> {
    write_csv(path, &RUN_COLUMNS, records.iter().map(base_row))
}

pub fn write_metrics_csv(path: &Path, records: &[RunRecord], flags: &StatisticsFlags) -> Result<(), CliError> {
    let cols = flags.columns();
    let header: Vec<&str> = RUN_COLUMNS.iter().copied().chain(cols.iter().copied()).collect();
    write_csv(
        path,
        &header,
        records.iter().map(|r| {
            let mut row = base_row(r);
            for c in &cols {
                row.push(
                    r.metrics
                        .as_ref()
                        .and_then(|m| metric_value(m, c))
                        .map_or_else(String::new, |v| v.to_string()),
                );
            }
            row
        }),
    )
}

/// Runs every job of the grid and writes `runs.csv` (and `metrics.csv` when
/// statistics are configured) to the CSV output directory. Individual run
/// failures are recorded, never raised.
pub fn execute(cfg: &BenchConfig, stats: Option<&StatsConfig>, opts: &ExecOptions) -> Result<Vec<RunRecord>, CliError> {
    let io = |p: &Path, e: std::io::Error| CliError::Io(format!("{}: {e}", p.display()));
    fs::create_dir_all(&cfg.output_directory).map_err(|e| io(&cfg.output_directory, e))?;
    fs::create_dir_all(&cfg.csv_output_directory).map_err(|e| io(&cfg.csv_output_directory, e))?;
    let inputs = load_inputs(cfg, stats)?;
    let jobs = expand_grid(cfg);
    let ctx = Context { cfg, stats, opts, inputs: &inputs };

    let workers = opts.parallel_runs.max(1).min(jobs.len().max(1));
    let records: Vec<RunRecord> = if workers == 1 {
        jobs.iter().map(|j| run_job(j, &ctx)).collect()
    } else {
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<RunRecord>>> = Mutex::new(vec![None; jobs.len()]);
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(job) = jobs.get(i) else { break };
                    let r = run_job(job, &ctx);
                    slots.lock().unwrap()[i] = Some(r);
                });
            }
        });
        slots.into_inner().unwrap().into_iter().map(|r| r.expect("every job ran")).collect()
    };

    write_runs_csv(&cfg.csv_output_directory.join("runs.csv"), &records)?;
    if let Some(s) = stats {
        write_metrics_csv(&cfg.csv_output_directory.join("metrics.csv"), &records, &s.statistics)?;
    }
    Ok(records)
}

/// Parameter map from `key=value` pairs given on the command line.
pub fn params_from_pairs(pairs: &[String]) -> Result<ParamSet, String> {
    pairs
        .iter()
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| format!("expected key=value, got `{p}`"))?;
            Ok((k.trim().to_string(), crate::config::parse_value(v.trim())))
        })
        .collect::<Result<ParamSet, String>>()
}

pub fn params_value(params: &ParamSet) -> Value {
    serde_json::to_value(params).unwrap_or(Value::Null)
}
