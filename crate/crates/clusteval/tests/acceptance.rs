//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clusteval::compare::{self, ComparisonMetric};
use clusteval::detect::{self, Algorithm, DetectionSpec};
use clusteval::pipeline::{self, spearman, GraphJob, PipelineConfig};
use clusteval::quality::{self, QualityMetric, SamplingPlan, VertexMetric};
use clusteval::{Cover, Graph};

fn criterion(id: usize, name: &str, body: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(body);
    match &outcome {
        Ok(()) => println!("criterion {id:02} ({name}): PASS"),
        Err(_) => println!("criterion {id:02} ({name}): FAIL"),
    }
    if let Err(payload) = outcome {
        resume_unwind(payload);
    }
}

fn assert_within(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: got {actual}, expected {expected} (tol {tol})"
    );
}

#[test]
fn criterion_01_barbell_oracle_suite() {
    criterion(1, "barbell oracle suite", || {
        let started = Instant::now();
        let g = common::barbell();
        let cover = common::barbell_triangles();
        let tol = 1e-9;

        let expected: &[(QualityMetric, f64)] = &[
            (QualityMetric::Modularity, 5.0 / 14.0),
            (QualityMetric::Conductance, 6.0 / 7.0),
            (QualityMetric::CutRatio, 8.0 / 9.0),
            (QualityMetric::Compactness, 6.0),
            (QualityMetric::Permanence, 8.0 / 9.0),
            (QualityMetric::ClusteringCoefficient, 1.0),
            (QualityMetric::FlakeOdf, 1.0),
            (QualityMetric::Fomd, 0.0),
            (QualityMetric::Significance, 6.0 * (15.0f64 / 7.0).ln()),
            (
                QualityMetric::Surprise,
                // D(6/7 || 6/15), written out directly.
                (6.0 / 7.0) * ((6.0f64 / 7.0) / (6.0 / 15.0)).ln()
                    + (1.0 / 7.0) * ((1.0f64 / 7.0) / (9.0 / 15.0)).ln(),
            ),
        ];
        for &(metric, value) in expected {
            let score = quality::evaluate(&g, &cover, metric).unwrap();
            assert_within(score.value, value, tol, metric.name());
        }
        assert!(started.elapsed() < Duration::from_secs(1), "took too long");
    });
}

#[test]
fn criterion_02_brute_force_equivalence() {
    criterion(2, "brute-force equivalence n<=5", || {
        let started = Instant::now();
        let tol = 1e-12;

        // Modularity against the double-sum oracle on every partition of
        // every connected labeled graph, 2 <= n <= 5.
        for n in 2..=5usize {
            let partitions = common::partitions(n);
            for g in common::connected_graphs(n) {
                for labels in &partitions {
                    let cover = Cover::from_partition_labels(labels).unwrap();
                    let lib = quality::modularity(&g, &cover).unwrap().value;
                    let oracle = common::modularity_double_sum(&g, labels);
                    assert_within(lib, oracle, tol, "modularity vs double sum");
                    assert!(
                        (-0.5..1.0).contains(&lib),
                        "modularity {lib} outside [-1/2, 1)"
                    );
                }
            }
        }

        // fb3 against the ordered-pair enumeration oracle on every pair of
        // partitions of up to 5 elements.
        for n in 2..=5usize {
            let covers: Vec<Cover> = common::partitions(n)
                .iter()
                .map(|labels| Cover::from_partition_labels(labels).unwrap())
                .collect();
            for c in &covers {
                for l in &covers {
                    let lib = compare::fb3(c, l).unwrap();
                    let (p, r, f) = common::fb3_pair_enumeration(c, l);
                    assert_within(lib.precision.unwrap(), p, tol, "fb3 precision");
                    assert_within(lib.recall.unwrap(), r, tol, "fb3 recall");
                    assert_within(lib.value, f, tol, "fb3 value");
                }
            }
        }
        assert!(started.elapsed() < Duration::from_secs(60), "took too long");
    });
}

#[test]
fn criterion_03_identity_extremes() {
    criterion(3, "identity extremes", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..100 {
            let n = rng.random_range(4..40);
            let x = common::random_cover(&mut rng, n, trial % 2 == 0);
            assert_eq!(compare::fb3(&x, &x).unwrap().value, 1.0, "fb3 identity");
            assert_eq!(compare::onmi(&x, &x).unwrap().value, 1.0, "onmi identity");

            // Eq-style symmetry: recall(C, L) = precision(L, C), exactly.
            let y = common::random_cover(&mut rng, n, trial % 3 == 0);
            let xy = compare::fb3(&x, &y).unwrap();
            let yx = compare::fb3(&y, &x).unwrap();
            assert_eq!(xy.recall, yx.precision);
            assert_eq!(xy.precision, yx.recall);
        }
    });
}

#[test]
fn criterion_04_hoeffding_sampling() {
    criterion(4, "hoeffding bound and sampled averages", || {
        let needed = quality::hoeffding_sample_size(0.02, 0.05).unwrap();
        assert!(needed <= 5000, "bound {needed} exceeds 5000");
        assert_eq!(needed, 4612);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (g, cover) = common::planted_partition(&mut rng, 40, 500, 5, 40_000);
        assert_eq!(g.n(), 20_000);

        let metrics = [
            VertexMetric::ClusteringCoefficient,
            VertexMetric::Permanence,
            VertexMetric::FlakeOdf,
            VertexMetric::Fomd,
        ];
        for metric in metrics {
            let exact = quality::evaluate(&g, &cover, metric.into()).unwrap().value;
            for seed in 0..20u64 {
                let plan = SamplingPlan::with_samples(5000, 0.02, 0.05, seed).unwrap();
                let sampled = quality::sampled_vertex_average(&g, &cover, metric, &plan);
                assert!(
                    (sampled.value - exact).abs() <= 0.02,
                    "{:?} seed {seed}: sampled {} vs exact {exact}",
                    metric,
                    sampled.value
                );
            }
        }
    });
}

#[test]
fn criterion_05_football_end_to_end() {
    criterion(5, "football end-to-end", || {
        let g = Graph::load_edge_list(common::data("football.edges")).unwrap();
        let truth = Cover::load(common::data("football.cmty"), &g).unwrap().cover;
        let (filtered, _) = g.induce_ground_truth_subgraph(&truth).unwrap();
        assert_eq!((filtered.n(), filtered.m()), (115, 613));

        let out_dir = std::env::temp_dir().join(format!(
            "clusteval-acc5-{}",
            std::process::id()
        ));
        let cfg = PipelineConfig {
            graphs: vec![GraphJob {
                id: "football".into(),
                edges: common::data("football.edges"),
                truth: common::data("football.cmty"),
                imports: vec![],
            }],
            detections: vec![
                DetectionSpec::new(Algorithm::Louvain),
                DetectionSpec::new(Algorithm::Cnm),
                DetectionSpec::new(Algorithm::LabelPropagation),
                DetectionSpec::new(Algorithm::KCore),
            ],
            sampling: SamplingPlan::default(),
            include_truth: true,
            out_dir: out_dir.clone(),
            jobs: 1,
        };

        let started = Instant::now();
        let report = pipeline::run_pipeline(&cfg).unwrap();
        let elapsed = started.elapsed();
        assert!(elapsed < Duration::from_secs(10), "pipeline took {elapsed:?}");
        assert_eq!(report.processed, vec!["football".to_string()]);
        // A single graph cannot produce a context matrix; the run says so.
        assert!(!report.context_written);
        assert!(report
            .warnings
            .iter()
            .any(|w| w.contains("context matrix skipped")));
        assert!(!out_dir.join("context_matrix_fb3.csv").exists());

        let manifest = std::fs::read_to_string(out_dir.join("manifest.txt")).unwrap();
        assert!(manifest.contains("graph football: ok n=115 m=613"));

        // The injected ground truth scores 1.0 under both metrics.
        let gold = std::fs::read_to_string(out_dir.join("gold.csv")).unwrap();
        assert!(gold.contains("football,ground_truth,fb3,1,1,1"));
        assert!(gold.contains("football,ground_truth,onmi,1,,"));

        // The comparison metric's own column is identically 1.
        let correlations =
            std::fs::read_to_string(out_dir.join("quality_correlations.csv")).unwrap();
        let mut lines = correlations.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let mut row_count = 0;
        for line in lines {
            let cells: Vec<&str> = line.split(',').collect();
            let own = cells[1];
            let column = header.iter().position(|h| h == &own).unwrap();
            assert_eq!(cells[column], "1", "self column of {own} not 1: {line}");
            row_count += 1;
        }
        assert_eq!(row_count, 2);

        std::fs::remove_dir_all(&out_dir).ok();
    });
}

#[test]
fn criterion_06_spearman_correctness() {
    criterion(6, "spearman correctness", || {
        assert_eq!(spearman(&[3.0, 1.0, 2.0], &[3.0, 1.0, 2.0]).unwrap(), 1.0);
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), -1.0);
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[2.0, 1.0, 3.0]).unwrap(), 0.5);

        // Strictly increasing transforms preserve integer-valued inputs'
        // rank structure exactly, so the coefficient is bit-identical.
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut checked = 0;
        while checked < 1000 {
            let len = rng.random_range(3..20);
            let a: Vec<f64> = (0..len).map(|_| rng.random_range(-50..50) as f64).collect();
            let b: Vec<f64> = (0..len).map(|_| rng.random_range(-50..50) as f64).collect();
            let Ok(base) = spearman(&a, &b) else {
                continue; // constant vector drawn, try again
            };
            let transformed: Vec<f64> = a.iter().map(|&x| x * x * x + 2.0 * x).collect();
            assert_eq!(spearman(&transformed, &b).unwrap(), base);
            let exp: Vec<f64> = b.iter().map(|&x| (x / 25.0).exp()).collect();
            assert_eq!(spearman(&a, &exp).unwrap(), base);
            checked += 1;
        }
    });
}

#[test]
fn criterion_07_context_matrix_structure() {
    criterion(7, "context matrix structure", || {
        // Structural properties on a batch of synthetic rows.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rows: Vec<pipeline::QualityCorrelationRow> = (0..6)
            .map(|i| pipeline::QualityCorrelationRow {
                graph_id: format!("g{i}"),
                comparison: ComparisonMetric::Fb3,
                columns: (0..10)
                    .map(|q| {
                        (
                            format!("q{q}"),
                            Some(rng.random_range(-100..100) as f64 / 100.0),
                        )
                    })
                    .chain([("fb3".to_string(), Some(1.0))])
                    .collect(),
            })
            .collect();
        let ctx = pipeline::context_matrix(&rows).unwrap();
        for i in 0..rows.len() {
            assert_eq!(ctx.cells[i][i], Some(1.0));
            for j in 0..rows.len() {
                assert_eq!(ctx.cells[i][j], ctx.cells[j][i], "symmetry");
                if let Some(v) = ctx.cells[i][j] {
                    assert!((-1.0..=1.0).contains(&v));
                }
            }
        }

        // Two graphs with identical clusterings and scores: off-diagonal 1.
        let out_dir = std::env::temp_dir().join(format!(
            "clusteval-acc7-{}",
            std::process::id()
        ));
        let job = |id: &str| GraphJob {
            id: id.into(),
            edges: common::data("football.edges"),
            truth: common::data("football.cmty"),
            imports: vec![],
        };
        let cfg = PipelineConfig {
            graphs: vec![job("copy_a"), job("copy_b")],
            detections: vec![
                DetectionSpec::new(Algorithm::Louvain),
                DetectionSpec::new(Algorithm::Cnm),
                DetectionSpec::new(Algorithm::LabelPropagation),
                DetectionSpec::new(Algorithm::KCore),
            ],
            sampling: SamplingPlan::default(),
            include_truth: true,
            out_dir: out_dir.clone(),
            jobs: 1,
        };
        pipeline::run_pipeline(&cfg).unwrap();
        for metric in ["fb3", "onmi"] {
            let text = std::fs::read_to_string(
                out_dir.join(format!("context_matrix_{metric}.csv")),
            )
            .unwrap();
            let mut lines = text.lines();
            assert_eq!(lines.next().unwrap(), "graph_id,copy_a,copy_b");
            assert_eq!(lines.next().unwrap(), "copy_a,1,1");
            assert_eq!(lines.next().unwrap(), "copy_b,1,1");
        }
        std::fs::remove_dir_all(&out_dir).ok();
    });
}

#[test]
fn criterion_08_pipeline_determinism() {
    criterion(8, "pipeline determinism", || {
        let run = |suffix: &str| {
            let out_dir = std::env::temp_dir().join(format!(
                "clusteval-acc8-{suffix}-{}",
                std::process::id()
            ));
            let cfg = PipelineConfig {
                graphs: vec![
                    GraphJob {
                        id: "football".into(),
                        edges: common::data("football.edges"),
                        truth: common::data("football.cmty"),
                        imports: vec![],
                    },
                    GraphJob {
                        id: "cliquering".into(),
                        edges: common::data("cliquering.edges"),
                        truth: common::data("cliquering.cmty"),
                        imports: vec![],
                    },
                ],
                detections: vec![
                    DetectionSpec::new(Algorithm::Louvain),
                    DetectionSpec::new(Algorithm::Cnm),
                    DetectionSpec::new(Algorithm::LabelPropagation),
                    DetectionSpec::new(Algorithm::KCore),
                ],
                sampling: SamplingPlan::default(),
                include_truth: true,
                out_dir: out_dir.clone(),
                jobs: 2,
            };
            pipeline::run_pipeline(&cfg).unwrap();
            out_dir
        };

        let first = run("a");
        let second = run("b");
        let mut names: Vec<String> = std::fs::read_dir(&first)
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .collect();
        names.sort();
        assert!(names.contains(&"scores.csv".to_string()));
        assert!(names.contains(&"context_matrix_fb3.csv".to_string()));
        for name in &names {
            let a = std::fs::read(first.join(name)).unwrap();
            let b = std::fs::read(second.join(name)).unwrap();
            assert_eq!(a, b, "{name} differs between identical runs");
        }
        std::fs::remove_dir_all(&first).ok();
        std::fs::remove_dir_all(&second).ok();
    });
}

#[test]
fn criterion_09_diameter_approximation() {
    criterion(9, "diameter approximation", || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);

        // Exact on trees up to 64 nodes: random trees plus the extreme
        // shapes (path, star) at every size.
        for n in 2..=64usize {
            let mut trees = vec![
                Graph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>()).unwrap(),
                Graph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>()).unwrap(),
            ];
            for _ in 0..3 {
                trees.push(common::random_tree(&mut rng, n));
            }
            for tree in &trees {
                let whole = Cover::from_clusters(n, vec![(0..n).collect()]).unwrap();
                let approx = quality::approx_diameter(tree, &whole, 0);
                assert_eq!(approx, common::exact_diameter(tree), "tree n={n}");
            }
        }

        // Never above the exact diameter (and at least half of it) on 200
        // random connected graphs with up to 12 nodes.
        for _ in 0..200 {
            let n = rng.random_range(2..=12);
            let extra = rng.random_range(0..2 * n);
            let g = common::random_connected_graph(&mut rng, n, extra);
            let whole = Cover::from_clusters(n, vec![(0..n).collect()]).unwrap();
            let approx = quality::approx_diameter(&g, &whole, 0);
            let exact = common::exact_diameter(&g);
            assert!(approx <= exact, "approx {approx} > exact {exact}");
            assert!(2 * approx >= exact, "approx {approx} below half of {exact}");
        }
    });
}

#[test]
fn criterion_10_detection_sanity() {
    criterion(10, "detection sanity", || {
        let g = common::barbell();
        let triangles = common::barbell_triangles();

        // The two-triangle partition is the exhaustive-search optimum.
        let mut best_q = f64::NEG_INFINITY;
        let mut best_labels = Vec::new();
        for labels in common::partitions(6) {
            let q = common::modularity_double_sum(&g, &labels);
            if q > best_q {
                best_q = q;
                best_labels = labels;
            }
        }
        let best_cover = Cover::from_partition_labels(&best_labels).unwrap();
        assert!(best_cover.same_clustering(&triangles));
        assert_within(best_q, 5.0 / 14.0, 1e-12, "optimal modularity");

        let louvain = detect::run(&g, &DetectionSpec::new(Algorithm::Louvain)).unwrap();
        assert!(louvain.same_clustering(&triangles), "louvain missed optimum");
        let cnm = detect::run(&g, &DetectionSpec::new(Algorithm::Cnm)).unwrap();
        assert!(cnm.same_clustering(&triangles), "cnm missed optimum");

        let kcore = detect::run(&g, &DetectionSpec::new(Algorithm::KCore)).unwrap();
        assert_eq!(kcore.len(), 6, "3-core of the barbell must unravel");
        assert!((0..6).all(|c| kcore.cluster(c).len() == 1));

        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let lp = detect::run(&two_triangles, &DetectionSpec::new(Algorithm::LabelPropagation))
            .unwrap();
        assert_eq!(lp.len(), 2, "label propagation must find both triangles");
    });
}
