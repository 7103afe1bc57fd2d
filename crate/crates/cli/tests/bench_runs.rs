use std::fs;
use std::path::{Path, PathBuf};

use parclust::config::{parse_bench_config, parse_stats_config, BenchConfig};
use parclust::execute::{execute, ExecOptions, Status};
use parclust::registry::RunOptions;
use parclust_core::dataset::{generate_rmat, RmatParams};
use parclust_core::graph::write_edge_list;

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir_all(dir.path().join("in")).unwrap();
        fs::write(dir.path().join("in/tiny.txt"), "0 1\n1 2\n0 2\n3 4\n").unwrap();
        fs::write(dir.path().join("in/tiny.cmty"), "0 1 2\n3 4\n").unwrap();
        Workspace { dir }
    }

    fn path(&self, p: &str) -> PathBuf {
        self.dir.path().join(p)
    }

    fn config(&self, body: &str) -> BenchConfig {
        let text = format!(
            "Input directory: {}\nOutput directory: {}\nCSV output directory: {}\n{body}",
            self.path("in").display(),
            self.path("out").display(),
            self.path("csv").display()
        );
        parse_bench_config(&text).unwrap()
    }

    fn cluster_files(&self) -> Vec<String> {
        let mut names: Vec<String> = fs::read_dir(self.path("out"))
            .map(|d| d.map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect())
            .unwrap_or_default();
        names.retain(|n| n.ends_with(".cluster"));
        names.sort();
        names
    }
}

fn csv_rows(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().map(str::to_string).collect()
}

const CONNECTIVITY: &str = "\
Clusterers: ConnectivityClusterer
Graphs: tiny.txt
Number of threads: 1
Number of rounds: 1

ConnectivityClusterer:
  config:
    threshold: 0; 1.5
";

#[test]
fn two_thresholds_give_two_runs() {
    let ws = Workspace::new();
    let records = execute(&ws.config(CONNECTIVITY), None, &ExecOptions::default()).unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r.status == Status::Ok && r.seconds >= 0.0));
    assert_eq!(ws.cluster_files().len(), 2);
    let rows = csv_rows(&ws.path("csv/runs.csv"));
    assert_eq!(rows[0], "graph,clusterer,params_json,round,threads,cluster_time_s,status");
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("tiny.txt,ConnectivityClusterer,\"{\"\"threshold\"\":0}\",0,1,"));
    // threshold 0 keeps both components; 1.5 cuts every edge
    let by_threshold: Vec<usize> = records
        .iter()
        .map(|r| fs::read_to_string(r.cluster_path.as_ref().unwrap()).unwrap().lines().count())
        .collect();
    assert_eq!(by_threshold, [2, 5]);
    assert!(!ws.path("csv/metrics.csv").exists());
}

#[test]
fn cluster_files_are_named_by_graph_clusterer_hash_and_round() {
    let ws = Workspace::new();
    let records = execute(&ws.config(&CONNECTIVITY.replace("rounds: 1", "rounds: 2")), None, &ExecOptions::default()).unwrap();
    for r in &records {
        let name = r.cluster_path.as_ref().unwrap().file_name().unwrap().to_string_lossy().into_owned();
        let parts: Vec<&str> = name.split('.').collect();
        assert_eq!(parts.len(), 6, "{name}");
        assert_eq!(&parts[..2], ["tiny", "txt"]);
        assert_eq!(parts[2], "ConnectivityClusterer");
        assert_eq!(parts[3].len(), 12);
        assert_eq!(parts[4], r.round.to_string());
    }
    assert_eq!(ws.cluster_files().len(), 4);
}

#[test]
fn stats_add_exactly_the_enabled_columns() {
    let ws = Workspace::new();
    let stats = parse_stats_config(
        "Input communities: tiny.cmty\n\nstatistics_config:\n  compute_nmi: true\n  compute_cluster_size: true\n  compute_diameter: true\n",
    )
    .unwrap();
    let records = execute(&ws.config(CONNECTIVITY), Some(&stats), &ExecOptions::default()).unwrap();
    let rows = csv_rows(&ws.path("csv/metrics.csv"));
    assert_eq!(
        rows[0],
        "graph,clusterer,params_json,round,threads,cluster_time_s,status,nmi,cluster_count,\
         cluster_size_min,cluster_size_max,cluster_size_mean,diameter_min,diameter_max,diameter_mean"
    );
    assert_eq!(rows.len(), 3);
    assert!(rows[1].ends_with(",ok,1,2,2,3,2.5,1,1,1"), "{}", rows[1]);
    let m = records[0].metrics.as_ref().unwrap();
    assert_eq!(m.nmi, Some(1.0));
    let json_path = records[0].cluster_path.as_ref().unwrap().with_extension("metrics.json");
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(doc["metrics"]["cluster_count"], 2);
    assert_eq!(doc["params"]["threshold"], 0);
}

#[test]
fn failures_are_recorded_not_raised() {
    let ws = Workspace::new();
    let cfg = ws.config(
        "Clusterers: ConnectivityClusterer; TigerGraphLouvain\nGraphs: tiny.txt; missing.txt\nNumber of rounds: 1\n\n\
         TigerGraphLouvain:\n  config:\n    maxIterations: 10; 20\n",
    );
    let records = execute(&cfg, None, &ExecOptions::default()).unwrap();
    assert_eq!(records.len(), 6);
    let status: Vec<Status> = records.iter().map(|r| r.status).collect();
    use Status::*;
    assert_eq!(status, [Ok, Error, Error, Error, Error, Error]);
    assert!(records[1].message.as_deref().unwrap().contains("backend not supported"));
    assert!(records[3].message.as_deref().unwrap().contains("graph failed to load"));
    assert!(records.iter().filter(|r| r.status != Ok).all(|r| r.cluster_path.is_none()));
    assert_eq!(csv_rows(&ws.path("csv/runs.csv")).len(), 7);
}

fn big_graph(ws: &Workspace) {
    let g = generate_rmat(&RmatParams { log2_n: 15, edge_factor: 16, seed: 2, ..Default::default() }).unwrap();
    let mut text = Vec::new();
    write_edge_list(&g, &mut text).unwrap();
    fs::write(ws.path("in/big.txt"), text).unwrap();
}

const SLOW: &str = "\
Clusterers: CorrelationClusterer
Graphs: big.txt
Number of threads: 1
Number of rounds: 1
Timeout: 1ms
";

#[test]
fn timeouts_leave_no_cluster_file() {
    let ws = Workspace::new();
    big_graph(&ws);
    let records = execute(&ws.config(SLOW), None, &ExecOptions::default()).unwrap();
    assert_eq!(records[0].status, Status::Timeout);
    assert!(records[0].cluster_path.is_none());
    assert!(ws.cluster_files().is_empty());
    let rows = csv_rows(&ws.path("csv/runs.csv"));
    assert!(rows[1].ends_with(",timeout"));
}

#[test]
fn subprocess_runs_match_in_process_runs() {
    let ws = Workspace::new();
    let body = "Clusterers: LDDClusterer; CorrelationClusterer\nGraphs: tiny.txt\nNumber of rounds: 2\n\n\
                LDDClusterer:\n  config:\n    beta: 0.2; 0.5\n";
    let opts = ExecOptions { run: RunOptions { deterministic: true, seed: Some(4) }, ..Default::default() };
    let inline = execute(&ws.config(body), None, &opts).unwrap();
    let inline_files: Vec<Vec<u8>> = inline.iter().map(|r| fs::read(r.cluster_path.as_ref().unwrap()).unwrap()).collect();
    fs::remove_dir_all(ws.path("out")).unwrap();
    let child = ExecOptions { subprocess: Some(PathBuf::from(env!("CARGO_BIN_EXE_parclust"))), ..opts };
    let forked = execute(&ws.config(body), None, &child).unwrap();
    assert!(forked.iter().all(|r| r.status == Status::Ok), "{:?}", forked[0].message);
    let forked_files: Vec<Vec<u8>> = forked.iter().map(|r| fs::read(r.cluster_path.as_ref().unwrap()).unwrap()).collect();
    assert_eq!(inline_files, forked_files);
}

#[test]
fn subprocess_timeouts_are_reported() {
    let ws = Workspace::new();
    big_graph(&ws);
    let opts = ExecOptions { subprocess: Some(PathBuf::from(env!("CARGO_BIN_EXE_parclust"))), ..Default::default() };
    let records = execute(&ws.config(SLOW), None, &opts).unwrap();
    assert_eq!(records[0].status, Status::Timeout);
    assert!(ws.cluster_files().is_empty());
}

#[test]
fn concurrent_runs_preserve_order_and_outputs() {
    let ws = Workspace::new();
    let body = "Clusterers: LabelPropagationClusterer; SLPAClusterer; ScanClusterer\nGraphs: tiny.txt\nNumber of rounds: 3\n\n\
                ScanClusterer:\n  config:\n    epsilon: 0.3; 0.6; 0.9\n";
    let opts = ExecOptions { run: RunOptions { deterministic: true, seed: Some(1) }, ..Default::default() };
    let seq = execute(&ws.config(body), None, &opts).unwrap();
    let seq_csv = fs::read_to_string(ws.path("csv/runs.csv")).unwrap();
    let seq_files: Vec<Vec<u8>> = seq.iter().map(|r| fs::read(r.cluster_path.as_ref().unwrap()).unwrap()).collect();
    let par = execute(&ws.config(body), None, &ExecOptions { parallel_runs: 4, ..opts }).unwrap();
    let par_files: Vec<Vec<u8>> = par.iter().map(|r| fs::read(r.cluster_path.as_ref().unwrap()).unwrap()).collect();
    assert_eq!(seq_files, par_files);
    let strip = |csv: &str| -> Vec<String> {
        csv.lines().map(|l| l.rsplitn(3, ',').skip(2).chain(l.rsplit(',').take(1)).collect::<Vec<_>>().join(",")).collect()
    };
    assert_eq!(strip(&seq_csv), strip(&fs::read_to_string(ws.path("csv/runs.csv")).unwrap()));
    assert_eq!(seq.len(), 15);
}
