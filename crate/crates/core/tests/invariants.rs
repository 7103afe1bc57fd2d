mod common;

use common::*;
use parclust_core::analysis::{auc_high_precision, pareto_frontier, FrontierPoint, Orientation};
use parclust_core::graph::{parse_edge_list, read_binary, write_edge_list};
use parclust_core::metrics::{
    ari, f_beta, nmi, pair_confusion, precision_recall, weighted_edge_density, GroundTruth, PairLabels,
};
use parclust_core::unweighted::*;
use parclust_core::weighted::*;
use parclust_core::{CancelToken, Clustering, Graph};
use parclust_oracles as oracle;
use proptest::prelude::*;
use std::path::Path;

fn assert_valid_flat(c: &Clustering, n: usize) -> Result<(), TestCaseError> {
    let labels = c.labels().ok_or_else(|| TestCaseError::fail("not flat"))?;
    prop_assert_eq!(labels.len(), n);
    let k = c.num_clusters();
    let mut used = vec![false; k];
    for &l in labels {
        prop_assert!((l as usize) < k);
        used[l as usize] = true;
    }
    prop_assert!(used.iter().all(|&u| u));
    Ok(())
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_construction_invariants((n, edges) in graph_strategy(80, true)) {
        let (g, _) = build(n, &edges, true);
        g.validate().unwrap();
        for u in 0..g.num_vertices() as u32 {
            let row = g.neighbors(u);
            prop_assert!(row.windows(2).all(|w| w[0] < w[1]));
            for (v, w) in g.edges_of(u) {
                prop_assert!(v != u);
                prop_assert_eq!(g.edge_weight(v, u), Some(w));
            }
        }
        prop_assert_eq!(*g.offsets().last().unwrap(), 2 * g.num_edges());
    }

    #[test]
    fn edge_list_and_binary_round_trip((n, edges) in graph_strategy(80, true)) {
        let (g, _) = build(n, &edges, true);
        let mut text = Vec::new();
        write_edge_list(&g, &mut text).unwrap();
        let again = parse_edge_list(&text[..], Path::new("mem"), true).unwrap();
        prop_assert_eq!(&again, &g);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.bin");
        parclust_core::graph::save_binary(&g, &path).unwrap();
        let bin = read_binary(std::fs::File::open(&path).unwrap()).unwrap();
        prop_assert_eq!(bin, g);
    }

    #[test]
    fn flat_clusterers_return_valid_partitions((n, edges) in graph_strategy(60, true), seed in 0u64..1000) {
        let (g, _) = build(n, &edges, true);
        let outputs = vec![
            cluster_connectivity(&g, 0.5),
            cluster_correlation(&g, &LambdaCCParams { resolution: 0.2, seed, ..Default::default() }).unwrap(),
            cluster_parhac(&g, &ParHacParams { weight_threshold: 0.2, seed, ..Default::default() }).unwrap().0,
            cluster_affinity(&g, &AffinityParams::default()).unwrap().0,
            cluster_ldd(&g, &LddParams { beta: 0.3, seed }).unwrap(),
            cluster_kcore(&g, 2),
            cluster_scan(&g, &ScanParams::default()).unwrap(),
            cluster_tectonic(&g, &TectonicParams { theta: 0.1 }).unwrap(),
            cluster_label_prop(&g, &LabelPropParams { seed, ..Default::default() }).unwrap(),
        ];
        for c in &outputs {
            assert_valid_flat(c, n)?;
        }
    }

    #[test]
    fn kcore_clusters_have_min_degree((n, edges) in graph_strategy(80, false), k in 0u32..6) {
        let (g, _) = build(n, &edges, false);
        let c = cluster_kcore(&g, k);
        let labels = labels_of(&c);
        for members in c.clusters().iter().filter(|m| m.len() > 1) {
            for &u in members {
                let inside = g.neighbors(u).iter().filter(|&&v| labels[v as usize] == labels[u as usize]).count();
                prop_assert!(inside as u32 >= k);
            }
        }
    }

    #[test]
    fn correlation_is_locally_optimal(
        (n, edges) in graph_strategy(100, true),
        lambda in 0.0f64..0.8,
        deterministic: bool,
        seed in 0u64..100,
    ) {
        let (g, _) = build(n, &edges, true);
        let p = LambdaCCParams { resolution: lambda, deterministic, seed, ..Default::default() };
        let c = cluster_correlation(&g, &p).unwrap();
        let labels = labels_of(&c);
        let k = p.vertex_weight_mode.vertex_weights(&g);
        for v in 0..n as u32 {
            let mut targets: Vec<Option<u32>> = g.neighbors(v).iter().map(|&u| Some(labels[u as usize])).collect();
            targets.push(None);
            for t in targets {
                let gain = single_move_gain(&g, &labels, &k, lambda, v, t);
                prop_assert!(gain <= 1e-9, "vertex {} to {:?} gains {}", v, t, gain);
            }
        }
    }

    #[test]
    fn modularity_and_lambda_cc_order_agree((n, edges) in graph_strategy(12, true), seeds in proptest::collection::vec(any::<u64>(), 2..12)) {
        let (g, _) = build(n, &edges, true);
        prop_assume!(g.num_edges() > 0);
        let p = modularity_params(&g, 1.0, &LambdaCCParams::default()).unwrap();
        let scored: Vec<(f64, f64)> = seeds.iter().map(|&s| {
            let labels: Vec<u32> = (0..n as u64).map(|v| ((s ^ v.wrapping_mul(0x9e37)) % 4) as u32).collect();
            let c = Clustering::from_labels(labels);
            (modularity(&g, &c, 1.0).unwrap(), lambda_cc_objective(&g, &c, &p).unwrap())
        }).collect();
        for a in &scored {
            for b in &scored {
                if (a.0 - b.0).abs() > 1e-9 {
                    prop_assert_eq!(a.0 > b.0, a.1 > b.1);
                }
            }
        }
    }

    #[test]
    fn parhac_contract_and_cut_refinement((n, edges) in graph_strategy(60, true), eps in prop::sample::select(vec![0.01, 0.1, 1.0])) {
        let (g, adj) = build(n, &edges, true);
        let (_, d) = cluster_parhac(&g, &ParHacParams { epsilon: eps, ..Default::default() }).unwrap();
        let triples: Vec<(u32, u32, f64)> = d.merges().iter().map(|m| (m.left, m.right, m.similarity)).collect();
        for r in oracle::replay_merges(&adj, &triples) {
            prop_assert!((r.recorded - r.actual).abs() <= 1e-9 * (1.0 + r.actual));
            prop_assert!(r.recorded >= r.global_max / (1.0 + eps) - 1e-12);
        }
        let mut seen = std::collections::HashSet::new();
        for m in d.merges() {
            prop_assert!(seen.insert(m.left) && seen.insert(m.right));
        }
        for (hi, lo) in [(1.0, 0.5), (0.5, 0.1), (0.1, 0.0)] {
            prop_assert!(d.cut(hi).refines(&d.cut(lo)));
        }
    }

    #[test]
    fn exact_parhac_matches_sequential_hac((n, edges) in graph_strategy(50, true)) {
        let (g, adj) = build(n, &edges, true);
        let (_, d) = cluster_parhac(&g, &ParHacParams { epsilon: 0.0, ..Default::default() }).unwrap();
        let mut got: Vec<f64> = d.merges().iter().map(|m| m.similarity).collect();
        let mut want = oracle::exact_hac(&adj);
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        prop_assert_eq!(got.len(), want.len());
        for (a, b) in got.iter().zip(&want) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{} vs {}", a, b);
        }
    }

    #[test]
    fn affinity_completes_to_components((n, edges) in graph_strategy(60, true)) {
        let (g, adj) = build(n, &edges, true);
        let p = AffinityParams { num_rounds: 64, initial_threshold: 0.0, decay: 1.0 };
        let (c, d) = cluster_affinity(&g, &p).unwrap();
        let comps = oracle::components(&adj, |_, _, _| true);
        prop_assert_eq!(labels_of(&c), oracle::canonical(&comps));
        let k = c.num_clusters();
        prop_assert_eq!(d.merges().len(), n - k);
    }

    #[test]
    fn deterministic_outputs_ignore_thread_count((n, edges) in graph_strategy(60, true), seed in 0u64..50) {
        let (g, _) = build(n, &edges, true);
        let run = || {
            let p = LambdaCCParams { resolution: 0.1, deterministic: true, seed, ..Default::default() };
            (
                cluster_correlation(&g, &p).unwrap(),
                cluster_parhac(&g, &ParHacParams::default()).unwrap(),
                cluster_affinity(&g, &AffinityParams::default()).unwrap(),
                cluster_label_prop(&g, &LabelPropParams::deterministic()).unwrap(),
                cluster_ldd(&g, &LddParams { beta: 0.2, seed }).unwrap(),
                cluster_slpa(&g, &SlpaParams { seed, ..Default::default() }).unwrap(),
            )
        };
        let one = pool(1).install(run);
        let four = pool(4).install(run);
        prop_assert_eq!(one, four);
    }

    #[test]
    fn ldd_clusters_are_connected((n, edges) in graph_strategy(80, false), beta in 0.05f64..1.0, seed in 0u64..1000) {
        let (g, adj) = build(n, &edges, false);
        let c = cluster_ldd(&g, &LddParams { beta, seed }).unwrap();
        let labels = labels_of(&c);
        let within = oracle::components(&adj, |u, v, _| labels[u as usize] == labels[v as usize]);
        prop_assert_eq!(oracle::canonical(&within), labels);
    }

    #[test]
    fn label_prop_converged_sweep_is_stable((n, edges) in graph_strategy(60, false)) {
        let (g, _) = build(n, &edges, false);
        let p = LabelPropParams { max_iters: 400, ..LabelPropParams::deterministic() };
        let a = cluster_label_prop(&g, &p).unwrap();
        let b = cluster_label_prop(&g, &LabelPropParams { max_iters: 401, ..p.clone() }).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn slpa_memory_accounting((n, edges) in graph_strategy(40, false), rounds in 1usize..15, seed: u64) {
        let (g, _) = build(n, &edges, false);
        let p = SlpaParams { rounds, threshold: 0.3, seed };
        let m = slpa_memories(&g, &p, &CancelToken::never()).unwrap();
        for u in 0..n as u32 {
            let expected = if g.degree(u) > 0 { 1 + rounds } else { 1 };
            prop_assert_eq!(m[u as usize].len(), expected);
        }
        let c = cluster_slpa(&g, &p).unwrap();
        let sets = c.clusters();
        prop_assert!(sets.iter().all(|s| !s.is_empty()));
        let unique: std::collections::BTreeSet<_> = sets.iter().collect();
        prop_assert_eq!(unique.len(), sets.len());
    }

    #[test]
    fn tectonic_threshold_zero_is_components((n, edges) in graph_strategy(60, false)) {
        let (g, adj) = build(n, &edges, false);
        let c = cluster_tectonic(&g, &TectonicParams { theta: 0.0 }).unwrap();
        prop_assert_eq!(labels_of(&c), oracle::canonical(&oracle::components(&adj, |_, _, _| true)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn f_beta_is_monotone(p in 0.0f64..1.0, r in 0.0f64..1.0, dp in 0.0f64..0.5, dr in 0.0f64..0.5, beta in 0.1f64..3.0) {
        let base = f_beta(p, r, beta).unwrap();
        prop_assert!(f_beta((p + dp).min(1.0), r, beta).unwrap() >= base - 1e-12);
        prop_assert!(f_beta(p, (r + dr).min(1.0), beta).unwrap() >= base - 1e-12);
    }

    #[test]
    fn agreement_symmetry_and_relabeling(a in proptest::collection::vec(0u32..5, 1..40), shift in 1u32..9) {
        let b: Vec<u32> = a.iter().enumerate().map(|(i, &x)| (x + i as u32 % 3) % 4).collect();
        let (ca, cb) = (Clustering::from_labels(a.clone()), Clustering::from_labels(b));
        let relabeled = Clustering::from_labels(a.iter().map(|&x| x * 7 + shift).collect::<Vec<_>>());
        prop_assert!((ari(&ca, &cb).unwrap() - ari(&cb, &ca).unwrap()).abs() < 1e-12);
        prop_assert!((nmi(&ca, &cb).unwrap() - nmi(&cb, &ca).unwrap()).abs() < 1e-12);
        prop_assert!((ari(&relabeled, &cb).unwrap() - ari(&ca, &cb).unwrap()).abs() < 1e-12);
        let v = nmi(&ca, &cb).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn precision_recall_bounds(labels in proptest::collection::vec(0u32..4, 2..30), gt_labels in proptest::collection::vec(0u32..4, 2..30)) {
        let n = labels.len().min(gt_labels.len());
        let c = Clustering::from_labels(labels[..n].to_vec());
        let truth = Clustering::from_labels(gt_labels[..n].to_vec());
        let gt = GroundTruth::new(truth.clusters());
        let (p, r) = precision_recall(&c, &gt).unwrap();
        prop_assert!((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&r));
        let exact = gt.communities().iter().all(|com| c.clusters().contains(com));
        prop_assert_eq!(exact, p == 1.0 && r == 1.0);
        prop_assert_eq!(precision_recall(&truth, &gt).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn edge_density_extremes((n, edges) in graph_strategy(40, false)) {
        let (g, _) = build(n, &edges, false);
        prop_assert_eq!(weighted_edge_density(&g, &Clustering::singletons(n)).unwrap(), 1.0);
        if n >= 2 {
            let global = g.num_edges() as f64 / (n as f64 * (n as f64 - 1.0) / 2.0);
            let d = weighted_edge_density(&g, &Clustering::single_cluster(n)).unwrap();
            prop_assert!((d - global).abs() < 1e-12);
        }
    }

    #[test]
    fn pair_counts_are_consistent(labels in proptest::collection::vec(0u32..3, 4..20), pairs in proptest::collection::vec((0u32..4, 0u32..4, 0.0f64..1.0), 1..30)) {
        let c = Clustering::from_labels(labels);
        let tuples: Vec<_> = pairs.into_iter().filter(|p| p.0 != p.1).collect();
        let pl = PairLabels::new(tuples, 0.5).unwrap();
        let m = pair_confusion(&c, &pl).unwrap();
        let tp = m.true_positive as f64;
        if m.true_positive + m.false_positive > 0 {
            prop_assert!((m.precision() * (m.true_positive + m.false_positive) as f64 - tp).abs() < 1e-9);
        }
        if m.true_positive + m.false_negative > 0 {
            prop_assert!((m.recall() * (m.true_positive + m.false_negative) as f64 - tp).abs() < 1e-9);
        }
    }

    #[test]
    fn frontier_shape_and_auc(pts in proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..60), extra in (0.0f64..1.0, 0.0f64..1.0)) {
        let fp: Vec<FrontierPoint> = pts.iter().enumerate().map(|(i, &(x, y))| FrontierPoint { x, y, run_id: i }).collect();
        let f = pareto_frontier(&fp, Orientation::MaxMax).unwrap();
        for w in f.windows(2) {
            prop_assert!(w[0].x < w[1].x && w[0].y > w[1].y);
        }
        let auc = auc_high_precision(&f);
        prop_assert!((0.0..=1.0).contains(&auc));
        // a point dominating an existing one cannot lower the area
        let base = fp[0];
        let dom = FrontierPoint { x: base.x.max(extra.0), y: base.y.max(extra.1), run_id: fp.len() };
        let mut more = fp.clone();
        more.push(dom);
        let g = pareto_frontier(&more, Orientation::MaxMax).unwrap();
        prop_assert!(auc_high_precision(&g) >= auc - 1e-12);
    }

    #[test]
    fn clustering_file_round_trip(labels in proptest::collection::vec(0u32..6, 1..40)) {
        let c = Clustering::from_labels(labels);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.cluster");
        c.save(&path).unwrap();
        prop_assert_eq!(Clustering::load(&path, Some(c.num_vertices())).unwrap(), c);
    }
}

#[test]
fn slpa_reaches_consensus_on_triangle() {
    let g = Graph::from_edges(0, vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], false).unwrap();
    let hits = (0..20)
        .filter(|&seed| {
            let p = SlpaParams { rounds: 50, threshold: 0.5, seed };
            cluster_slpa(&g, &p).unwrap().clusters() == vec![vec![0, 1, 2]]
        })
        .count();
    assert!(hits >= 15, "{hits}/20 seeds");
}
