use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use parclust::config::{load_bench_config, load_stats_config};
use parclust::execute::{execute, params_from_pairs, run_child, write_atomic, ChildJob, ExecOptions, Status};
use parclust::registry::{self, configure, RunOptions};
use parclust::CliError;
use parclust_core::analysis::{auc_high_precision_with, pareto_frontier, AucRule, FrontierPoint, Orientation};
use parclust_core::dataset::{build_knn_graph, generate_rmat, Metric, RmatParams, VectorSet};
use parclust_core::graph::{load_graph, save_binary, write_edge_list};
use parclust_core::metrics::{evaluate, EvalInputs, GroundTruth, MetricSelection, PairLabels};
use parclust_core::{CancelToken, Clustering, Graph};

#[derive(Parser)]
#[command(name = "parclust", version, about = "Parallel graph clustering and benchmarking")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every parameter combination of a clustering configuration.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        deterministic: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Concurrent runs; timings are contended when above 1.
        #[arg(long, default_value_t = 1)]
        parallel_runs: usize,
        /// Run each job in a child process that is killed on timeout.
        #[arg(long)]
        subprocess: bool,
    },
    /// Cluster one graph with one algorithm.
    Cluster {
        algo: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weighted: bool,
        /// Read the graph in binary CSR format.
        #[arg(long)]
        binary: bool,
        /// Algorithm parameter as key=value; repeatable.
        #[arg(short = 'p', long = "param")]
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        deterministic: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compute quality metrics of a clustering and print them as JSON.
    Eval {
        #[arg(long)]
        clustering: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weighted: bool,
        #[arg(long)]
        binary: bool,
        #[arg(long)]
        communities: Option<PathBuf>,
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        pair_threshold: f64,
        #[arg(long, default_value_t = 1.0)]
        f_beta: f64,
        /// Also report the LambdaCC objective at this resolution.
        #[arg(long)]
        lambda_cc: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        modularity_gamma: f64,
        #[arg(long)]
        diameter: bool,
    },
    /// Pareto frontier of two CSV columns, printed as CSV.
    Frontier {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value_t = OrientationArg::MaxMax)]
        orientation: OrientationArg,
        /// Print the high-precision AUC of the frontier to stderr.
        #[arg(long)]
        auc: bool,
        #[arg(long, value_enum, default_value_t = AucArg::Staircase)]
        auc_rule: AucArg,
    },
    /// Build a k-nearest-neighbor similarity graph from a vector file.
    Knn {
        #[arg(long)]
        vectors: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
        metric: MetricArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate an RMAT graph.
    Rmat {
        #[arg(long)]
        log2n: u32,
        #[arg(long, default_value_t = 16)]
        edge_factor: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    #[command(hide = true)]
    RunOne {
        #[arg(long)]
        job: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    MaxMax,
    MinMax,
}

#[derive(Clone, Copy, ValueEnum)]
enum AucArg {
    Staircase,
    Trapezoid,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Euclidean,
    Cosine,
}

enum Failure {
    Usage(String),
    Runs(String),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        match e {
            CliError::Config(c) => Failure::Usage(c.to_string()),
            CliError::Io(m) => Failure::Runs(m),
        }
    }
}

impl From<parclust_core::Error> for Failure {
    fn from(e: parclust_core::Error) -> Self {
        match e {
            parclust_core::Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runs(e.to_string()),
        }
    }
}

/// Binary CSR when the path ends in `.bin`, text edge list otherwise.
fn save_graph(g: &Graph, path: &Path) -> Result<(), Failure> {
    if path.extension().is_some_and(|e| e == "bin") {
        save_binary(g, path)?;
    } else {
        write_atomic(path, |w| write_edge_list(g, w))?;
    }
    Ok(())
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t);
    }
    b.build().map_err(|e| Failure::Runs(e.to_string()))
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Bench { config, stats, deterministic, seed, parallel_runs, subprocess } => {
            let cfg = load_bench_config(&config).map_err(CliError::from)?;
            let stats = stats.map(|p| load_stats_config(&p)).transpose().map_err(CliError::from)?;
            let opts = ExecOptions {
                run: RunOptions { deterministic, seed },
                parallel_runs,
                subprocess: if subprocess {
                    Some(std::env::current_exe().map_err(|e| Failure::Runs(e.to_string()))?)
                } else {
                    None
                },
            };
            let records = execute(&cfg, stats.as_ref(), &opts)?;
            let mut failed = 0;
            for r in &records {
                if r.status != Status::Ok {
                    failed += 1;
                    eprintln!(
                        "{} {} round {}: {}{}",
                        r.graph,
                        r.clusterer,
                        r.round,
                        r.status.as_str(),
                        r.message.as_deref().map(|m| format!(" ({m})")).unwrap_or_default()
                    );
                }
            }
            eprintln!("{} runs, {} failed", records.len(), failed);
            if failed > 0 {
                return Err(Failure::Runs(format!("{failed} runs did not complete")));
            }
            Ok(())
        }
        Cmd::Cluster { algo, graph, weighted, binary, params, out, threads, deterministic, seed } => {
            if !registry::is_known(&algo) {
                return Err(Failure::Usage(format!("unknown clusterer `{algo}`")));
            }
            let params = params_from_pairs(&params).map_err(Failure::Usage)?;
            let algorithm = configure(&algo, &params, &RunOptions { deterministic, seed }).map_err(|m| {
                if registry::is_external(&algo) {
                    Failure::Runs(m)
                } else {
                    Failure::Usage(m)
                }
            })?;
            let g = load_graph(&graph, binary, weighted)?;
            let pool = pool(threads)?;
            let start = Instant::now();
            let output = pool.install(|| algorithm.run(&g, &CancelToken::never()))?;
            eprintln!("clustered in {:.6} s: {} clusters", start.elapsed().as_secs_f64(), output.clustering.num_clusters());
            write_atomic(&out, |w| output.clustering.write(w))?;
            Ok(())
        }
        Cmd::Eval {
            clustering,
            graph,
            weighted,
            binary,
            communities,
            pairs,
            pair_threshold,
            f_beta,
            lambda_cc,
            modularity_gamma,
            diameter,
        } => {
            let g = load_graph(&graph, binary, weighted)?;
            let c = Clustering::load(&clustering, Some(g.num_vertices()))?;
            let truth = communities.map(GroundTruth::load).transpose()?;
            let pairs = pairs.map(|p| PairLabels::load(p, pair_threshold)).transpose()?;
            let sel = MetricSelection {
                precision_recall: truth.is_some(),
                f_score_param: f_beta,
                ari: truth.is_some(),
                nmi: truth.is_some(),
                edge_density: true,
                triangle_density: true,
                cluster_stats: true,
                diameter,
                pair_precision_recall: pairs.is_some(),
                lambda_cc_resolution: lambda_cc,
                modularity_gamma: (g.num_edges() > 0).then_some(modularity_gamma),
            };
            let report = evaluate(&g, &c, &sel, EvalInputs { ground_truth: truth.as_ref(), pairs: pairs.as_ref() })?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Runs(e.to_string()))?;
            println!("{text}");
            Ok(())
        }
        Cmd::Frontier { csv, x, y, orientation, auc, auc_rule } => {
            let mut reader = csv::Reader::from_path(&csv).map_err(|e| Failure::Usage(format!("{}: {e}", csv.display())))?;
            let headers = reader.headers().map_err(|e| Failure::Usage(e.to_string()))?.clone();
            let col = |name: &str| {
                headers
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| Failure::Usage(format!("no column `{name}` in {}", csv.display())))
            };
            let (xi, yi) = (col(&x)?, col(&y)?);
            let mut points = Vec::new();
            for (row, rec) in reader.records().enumerate() {
                let rec = rec.map_err(|e| Failure::Usage(e.to_string()))?;
                let value = |i: usize| rec.get(i).and_then(|s| s.trim().parse::<f64>().ok());
                // rows without values (timeouts, errors) are not candidates
                if let (Some(px), Some(py)) = (value(xi), value(yi)) {
                    points.push(FrontierPoint { x: px, y: py, run_id: row });
                }
            }
            let orientation = match orientation {
                OrientationArg::MaxMax => Orientation::MaxMax,
                OrientationArg::MinMax => Orientation::MinXMaxY,
            };
            let front = pareto_frontier(&points, orientation).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{x},{y},row");
            for p in &front {
                println!("{},{},{}", p.x, p.y, p.run_id);
            }
            if auc {
                let rule = match auc_rule {
                    AucArg::Staircase => AucRule::Staircase,
                    AucArg::Trapezoid => AucRule::Trapezoid,
                };
                eprintln!("auc {}", auc_high_precision_with(&front, rule));
            }
            Ok(())
        }
        Cmd::Knn { vectors, k, metric, out } => {
            let v = VectorSet::load(&vectors)?;
            let metric = match metric {
                MetricArg::Euclidean => Metric::EuclideanInverse,
                MetricArg::Cosine => Metric::Cosine,
            };
            let g = build_knn_graph(&v, k, metric)?;
            save_graph(&g, &out)
        }
        Cmd::Rmat { log2n, edge_factor, seed, out } => {
            let p = RmatParams { log2_n: log2n, edge_factor, seed, ..Default::default() };
            let g = generate_rmat(&p)?;
            save_graph(&g, &out)
        }
        Cmd::RunOne { job } => {
            let job: ChildJob = serde_json::from_str(&job).map_err(|e| Failure::Usage(e.to_string()))?;
            let report = run_child(&job);
            println!("{}", serde_json::to_string(&report).map_err(|e| Failure::Runs(e.to_string()))?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runs(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
