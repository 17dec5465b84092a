//! The end-to-end methodology. For every graph with ground truth:
//!
//! 1. apply the detection algorithms (plus optional imported clusterings),
//! 2. score every clustering with the ten quality functions,
//! 3. compare every clustering to the ground truth, producing one gold
//!    standard value per clustering and comparison metric,
//! 4. rank-correlate the gold ranking with each quality ranking
//!    (Spearman), giving one coefficient row per graph,
//! 5. rank-correlate those rows across graphs, giving a graph-by-graph
//!    context matrix per comparison metric.
//!
//! Both comparison metrics run in every invocation. Everything is
//! deterministic under fixed seeds, including the emitted CSV bytes.

mod config;
mod report;
mod spearman;

use std::path::PathBuf;

use rayon::prelude::*;

use crate::compare::{self, ComparisonMetric, ComparisonResult};
use crate::cover::Cover;
use crate::detect::{self, DetectionSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quality::{self, QualityMetric, QualityScore, SamplingPlan};

pub use config::{GraphJob, PipelineConfig};
pub use report::format_significant;
pub use spearman::spearman;

/// A clustering with its provenance label, unique within one graph run.
#[derive(Debug, Clone)]
pub struct LabeledCover {
    pub id: String,
    pub cover: Cover,
}

/// Clusterings x quality functions. One row per clustering, one column per
/// metric, in [`QualityMetric::ALL`] order.
#[derive(Debug, Clone)]
pub struct ScoreMatrix {
    pub clustering_ids: Vec<String>,
    pub metrics: Vec<QualityMetric>,
    pub rows: Vec<Vec<QualityScore>>,
}

impl ScoreMatrix {
    /// Values of one metric column, aligned with `clustering_ids`.
    pub fn column(&self, metric: QualityMetric) -> Vec<f64> {
        let idx = self
            .metrics
            .iter()
            .position(|&m| m == metric)
            .expect("metric not in matrix");
        self.rows.iter().map(|r| r[idx].value).collect()
    }
}

/// Comparison value of every clustering against the ground truth under one
/// metric, aligned with the clustering list that produced it.
#[derive(Debug, Clone)]
pub struct GoldVector {
    pub metric: ComparisonMetric,
    pub clustering_ids: Vec<String>,
    pub results: Vec<ComparisonResult>,
}

impl GoldVector {
    pub fn values(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.value).collect()
    }
}

/// Step-4 output for one graph and one comparison metric: the Spearman
/// coefficient between the gold ranking and each quality ranking, plus the
/// two comparison-metric columns (the metric's own column is 1 by
/// definition). `None` marks cells where the coefficient is undefined.
#[derive(Debug, Clone)]
pub struct QualityCorrelationRow {
    pub graph_id: String,
    pub comparison: ComparisonMetric,
    pub columns: Vec<(String, Option<f64>)>,
}

/// Step-5 output: symmetric graph-by-graph Spearman matrix of the step-4
/// rows, unit diagonal, one per comparison metric.
#[derive(Debug, Clone)]
pub struct ContextMatrix {
    pub comparison: ComparisonMetric,
    pub graph_ids: Vec<String>,
    pub cells: Vec<Vec<Option<f64>>>,
}

/// Step 1: run every detection spec, then load every import. Labels are
/// made unique with a numeric suffix; duplicates are kept (identical
/// clusterings are legitimate rank ties). At least three clusterings are
/// required for the rankings of step 4 to mean anything.
pub fn run_detections(
    g: &Graph,
    specs: &[DetectionSpec],
    imports: &[PathBuf],
) -> Result<(Vec<LabeledCover>, Vec<String>)> {
    let mut covers: Vec<LabeledCover> = Vec::new();
    let mut warnings = Vec::new();
    let push = |id: String, cover: Cover, covers: &mut Vec<LabeledCover>| {
        let mut unique = id.clone();
        let mut k = 1;
        while covers.iter().any(|c| c.id == unique) {
            k += 1;
            unique = format!("{id}_{k}");
        }
        covers.push(LabeledCover { id: unique, cover });
    };

    for spec in specs {
        let cover = detect::run(g, spec)?;
        if covers.iter().any(|c| c.cover.same_clustering(&cover)) {
            warnings.push(format!(
                "detection {} duplicates an earlier clustering",
                spec.label()
            ));
        }
        push(spec.label(), cover, &mut covers);
    }
    for path in imports {
        let load = detect::import_clustering(path, g)?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "clustering".into());
        if load.unknown_labels > 0 {
            warnings.push(format!(
                "import {}: {} unknown labels skipped",
                path.display(),
                load.unknown_labels
            ));
        }
        if load.completed_singletons > 0 {
            warnings.push(format!(
                "import {}: {} uncovered nodes completed as singletons",
                path.display(),
                load.completed_singletons
            ));
        }
        push(format!("import_{stem}"), load.cover, &mut covers);
    }

    if covers.len() < 3 {
        return Err(Error::TooFewClusterings {
            found: covers.len(),
            need: 3,
        });
    }
    Ok((covers, warnings))
}

/// Step 2: evaluate all ten quality functions on every clustering.
/// Vertex-level functions go through the sampling plan (exact whenever the
/// graph is no larger than the sample budget).
pub fn score_matrix(
    g: &Graph,
    covers: &[LabeledCover],
    plan: &SamplingPlan,
) -> Result<ScoreMatrix> {
    let metrics = QualityMetric::ALL.to_vec();
    let mut rows = Vec::with_capacity(covers.len());
    for labeled in covers {
        let row = metrics
            .iter()
            .map(|&m| quality::evaluate_with_plan(g, &labeled.cover, m, plan))
            .collect::<Result<Vec<QualityScore>>>()?;
        rows.push(row);
    }
    Ok(ScoreMatrix {
        clustering_ids: covers.iter().map(|c| c.id.clone()).collect(),
        metrics,
        rows,
    })
}

/// Step 3: gold standard value of every clustering against the truth.
pub fn gold_standard(
    truth: &Cover,
    covers: &[LabeledCover],
    metric: ComparisonMetric,
) -> Result<GoldVector> {
    let results = covers
        .iter()
        .map(|c| compare::compare(&c.cover, truth, metric))
        .collect::<Result<Vec<ComparisonResult>>>()?;
    Ok(GoldVector {
        metric,
        clustering_ids: covers.iter().map(|c| c.id.clone()).collect(),
        results,
    })
}

/// Step 4: Spearman of the gold ranking against each quality ranking and
/// against the other comparison metric's gold ranking. The gold metric's
/// own column is 1 by definition. Cells where the coefficient is undefined
/// (a constant ranking) come back as `None`.
pub fn quality_correlation_row(
    graph_id: &str,
    gold: &GoldVector,
    other_gold: &GoldVector,
    scores: &ScoreMatrix,
) -> QualityCorrelationRow {
    let gold_values = gold.values();
    let mut columns: Vec<(String, Option<f64>)> = Vec::new();
    for &metric in &scores.metrics {
        let coeff = spearman(&gold_values, &scores.column(metric)).ok();
        columns.push((metric.name().to_string(), coeff));
    }
    for metric in ComparisonMetric::ALL {
        let coeff = if metric == gold.metric {
            Some(1.0)
        } else {
            debug_assert_eq!(metric, other_gold.metric);
            spearman(&gold_values, &other_gold.values()).ok()
        };
        columns.push((metric.name().to_string(), coeff));
    }
    QualityCorrelationRow {
        graph_id: graph_id.to_string(),
        comparison: gold.metric,
        columns,
    }
}

/// Step 5: Spearman between the step-4 rows of every pair of graphs. The
/// comparison metric's own column (constant 1) is excluded; cells missing
/// in either row are dropped pairwise; a pair without enough defined
/// columns yields `None`.
pub fn context_matrix(rows: &[QualityCorrelationRow]) -> Result<ContextMatrix> {
    if rows.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "context matrix needs at least 2 graphs, got {}",
            rows.len()
        )));
    }
    let comparison = rows[0].comparison;
    let names: Vec<&String> = rows[0].columns.iter().map(|(n, _)| n).collect();
    for row in rows {
        if row.comparison != comparison
            || row.columns.len() != names.len()
            || row.columns.iter().zip(&names).any(|((n, _), e)| n != *e)
        {
            return Err(Error::InvalidParameter(
                "context matrix rows must share comparison metric and columns".into(),
            ));
        }
    }

    let own = comparison.name();
    let n = rows.len();
    let mut cells = vec![vec![None; n]; n];
    for i in 0..n {
        cells[i][i] = Some(1.0);
        for j in (i + 1)..n {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (idx, (name, left)) in rows[i].columns.iter().enumerate() {
                if name == own {
                    continue;
                }
                if let (Some(x), Some(y)) = (left, rows[j].columns[idx].1) {
                    a.push(*x);
                    b.push(y);
                }
            }
            let coeff = spearman(&a, &b).ok();
            cells[i][j] = coeff;
            cells[j][i] = coeff;
        }
    }
    Ok(ContextMatrix {
        comparison,
        graph_ids: rows.iter().map(|r| r.graph_id.clone()).collect(),
        cells,
    })
}

/// Everything the pipeline produced for one graph.
#[derive(Debug)]
pub struct GraphRun {
    pub graph_id: String,
    pub nodes: usize,
    pub edges: usize,
    pub scores: ScoreMatrix,
    pub golds: Vec<GoldVector>,
    pub rows: Vec<QualityCorrelationRow>,
    pub warnings: Vec<String>,
}

/// Summary of a whole pipeline invocation.
#[derive(Debug)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub processed: Vec<String>,
    pub skipped: Vec<(String, String)>,
    pub context_written: bool,
    pub warnings: Vec<String>,
}

fn process_graph(job: &GraphJob, cfg: &PipelineConfig) -> Result<GraphRun> {
    let mut warnings = Vec::new();

    let raw_graph = Graph::load_edge_list(&job.edges)?;
    let truth_load = Cover::load(&job.truth, &raw_graph)?;
    if truth_load.unknown_labels > 0 {
        warnings.push(format!(
            "truth: {} unknown labels skipped",
            truth_load.unknown_labels
        ));
    }
    let (graph, truth) = raw_graph.induce_ground_truth_subgraph(&truth_load.cover)?;
    if graph.n() < raw_graph.n() {
        warnings.push(format!(
            "preprocessing dropped {} of {} nodes",
            raw_graph.n() - graph.n(),
            raw_graph.n()
        ));
    }

    let (mut covers, detection_warnings) =
        run_detections(&graph, &cfg.detections, &job.imports)?;
    warnings.extend(detection_warnings);
    if cfg.include_truth {
        covers.push(LabeledCover {
            id: "ground_truth".into(),
            cover: truth.clone(),
        });
    }

    for labeled in &covers {
        let disconnected = labeled.cover.disconnected_cluster_count(&graph);
        if disconnected > 0 {
            warnings.push(format!(
                "clustering {}: {disconnected} clusters induce disconnected subgraphs \
                 (diameter measured on the first member's component)",
                labeled.id
            ));
        }
    }

    let scores = score_matrix(&graph, &covers, &cfg.sampling)?;
    let golds: Vec<GoldVector> = ComparisonMetric::ALL
        .into_iter()
        .map(|m| gold_standard(&truth, &covers, m))
        .collect::<Result<_>>()?;
    let rows = vec![
        quality_correlation_row(&job.id, &golds[0], &golds[1], &scores),
        quality_correlation_row(&job.id, &golds[1], &golds[0], &scores),
    ];

    Ok(GraphRun {
        graph_id: job.id.clone(),
        nodes: graph.n(),
        edges: graph.m(),
        scores,
        golds,
        rows,
        warnings,
    })
}

/// Runs the whole methodology and writes the report bundle: scores.csv,
/// gold.csv, quality_correlations.csv, one context_matrix_<metric>.csv per
/// comparison metric (when at least two graphs survived), and
/// manifest.txt. Graph-level failures skip the graph and keep going.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<RunReport> {
    if cfg.graphs.is_empty() {
        return Err(Error::InvalidParameter("no graphs configured".into()));
    }
    if cfg.jobs < 1 {
        return Err(Error::InvalidParameter("jobs must be at least 1".into()));
    }

    let outcomes: Vec<(String, Result<GraphRun>)> = if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| {
            cfg.graphs
                .par_iter()
                .map(|job| (job.id.clone(), process_graph(job, cfg)))
                .collect()
        })
    } else {
        cfg.graphs
            .iter()
            .map(|job| (job.id.clone(), process_graph(job, cfg)))
            .collect()
    };

    // Deterministic aggregation order regardless of scheduling.
    let mut runs: Vec<GraphRun> = Vec::new();
    let mut skipped: Vec<(String, String)> = Vec::new();
    for (id, outcome) in outcomes {
        match outcome {
            Ok(run) => runs.push(run),
            Err(e) => skipped.push((id, e.to_string())),
        }
    }
    runs.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
    skipped.sort();
    if runs.is_empty() {
        let reasons: Vec<String> = skipped
            .iter()
            .map(|(id, reason)| format!("{id}: {reason}"))
            .collect();
        return Err(Error::InvalidParameter(format!(
            "every graph failed: {}",
            reasons.join("; ")
        )));
    }

    let mut warnings: Vec<String> = Vec::new();
    for run in &runs {
        for w in &run.warnings {
            warnings.push(format!("{}: {w}", run.graph_id));
        }
    }

    let contexts: Vec<ContextMatrix> = if runs.len() >= 2 {
        ComparisonMetric::ALL
            .into_iter()
            .map(|metric| {
                let rows: Vec<QualityCorrelationRow> = runs
                    .iter()
                    .flat_map(|r| r.rows.iter())
                    .filter(|row| row.comparison == metric)
                    .cloned()
                    .collect();
                context_matrix(&rows)
            })
            .collect::<Result<_>>()?
    } else {
        warnings.push("context matrix skipped: fewer than 2 graphs processed".into());
        Vec::new()
    };

    report::write_bundle(cfg, &runs, &contexts, &skipped, &warnings)?;

    Ok(RunReport {
        out_dir: cfg.out_dir.clone(),
        processed: runs.iter().map(|r| r.graph_id.clone()).collect(),
        skipped,
        context_written: !contexts.is_empty(),
        warnings,
    })
}
