//! Report bundle writers. All numbers are formatted with 12 significant
//! digits and a '.' decimal separator; reruns with the same config and
//! seeds produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::quality::EvalMode;

use super::{ContextMatrix, GraphRun, PipelineConfig};

/// `value` with 12 significant digits, shortest representation that
/// round-trips. Infinities print as `inf`/`-inf`.
pub fn format_significant(value: f64) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf".into() } else { "-inf".into() };
    }
    debug_assert!(!value.is_nan());
    let magnitude = value.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - magnitude);
    let rounded = (value * scale).round() / scale;
    format!("{rounded}")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .map_err(|e| Error::Io {
            path: path.into(),
            source: e,
        })
}

/// Ids land in unquoted CSV cells; anything that would break a cell is
/// replaced.
fn sanitize(id: &str) -> String {
    id.replace([',', '\n', '\r'], "_")
}

fn scores_csv(runs: &[GraphRun]) -> String {
    let mut out = String::from("graph_id,clustering_id,metric_name,value,mode,sample_count,seed\n");
    for run in runs {
        for (row, id) in run.scores.rows.iter().zip(&run.scores.clustering_ids) {
            for score in row {
                let (mode, samples, seed) = match score.mode {
                    EvalMode::Exact => ("exact", String::new(), String::new()),
                    EvalMode::Sampled { samples, seed } => {
                        ("sampled", samples.to_string(), seed.to_string())
                    }
                };
                out.push_str(&format!(
                    "{},{},{},{},{mode},{samples},{seed}\n",
                    sanitize(&run.graph_id),
                    sanitize(id),
                    score.metric.name(),
                    format_significant(score.value),
                ));
            }
        }
    }
    out
}

fn gold_csv(runs: &[GraphRun]) -> String {
    let mut out = String::from("graph_id,clustering_id,metric,value,precision,recall\n");
    for run in runs {
        for gold in &run.golds {
            for (result, id) in gold.results.iter().zip(&gold.clustering_ids) {
                let fmt_opt = |v: Option<f64>| v.map(format_significant).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    sanitize(&run.graph_id),
                    sanitize(id),
                    gold.metric.name(),
                    format_significant(result.value),
                    fmt_opt(result.precision),
                    fmt_opt(result.recall),
                ));
            }
        }
    }
    out
}

fn correlations_csv(runs: &[GraphRun]) -> String {
    let mut out = String::new();
    let mut header_done = false;
    for run in runs {
        for row in &run.rows {
            if !header_done {
                out.push_str("graph_id,comparison");
                for (name, _) in &row.columns {
                    out.push(',');
                    out.push_str(name);
                }
                out.push('\n');
                header_done = true;
            }
            out.push_str(&sanitize(&row.graph_id));
            out.push(',');
            out.push_str(row.comparison.name());
            for (_, coeff) in &row.columns {
                out.push(',');
                if let Some(c) = coeff {
                    out.push_str(&format_significant(*c));
                }
            }
            out.push('\n');
        }
    }
    out
}

fn context_csv(ctx: &ContextMatrix) -> String {
    let mut out = String::from("graph_id");
    for id in &ctx.graph_ids {
        out.push(',');
        out.push_str(&sanitize(id));
    }
    out.push('\n');
    for (i, id) in ctx.graph_ids.iter().enumerate() {
        out.push_str(&sanitize(id));
        for cell in &ctx.cells[i] {
            out.push(',');
            if let Some(c) = cell {
                out.push_str(&format_significant(*c));
            }
        }
        out.push('\n');
    }
    out
}

fn manifest(
    cfg: &PipelineConfig,
    runs: &[GraphRun],
    contexts: &[ContextMatrix],
    skipped: &[(String, String)],
    warnings: &[String],
) -> String {
    let mut out = String::new();
    out.push_str(&format!("clusteval {}\n", env!("CARGO_PKG_VERSION")));
    out.push_str(&format!(
        "sampling: epsilon={} p={} samples={} seed={}\n",
        cfg.sampling.epsilon, cfg.sampling.confidence_p, cfg.sampling.samples, cfg.sampling.seed
    ));
    out.push_str(&format!("include_truth: {}\n", cfg.include_truth));
    out.push_str(&format!("jobs: {}\n", cfg.jobs));
    let detections: Vec<String> = cfg.detections.iter().map(|d| d.label()).collect();
    out.push_str(&format!("detections: {}\n", detections.join(" ")));
    for run in runs {
        out.push_str(&format!(
            "graph {}: ok n={} m={} clusterings={}\n",
            run.graph_id,
            run.nodes,
            run.edges,
            run.scores.clustering_ids.len()
        ));
    }
    for (id, reason) in skipped {
        out.push_str(&format!("graph {id}: skipped ({reason})\n"));
    }
    if contexts.is_empty() {
        out.push_str("context_matrix: not written\n");
    } else {
        for ctx in contexts {
            out.push_str(&format!(
                "context_matrix_{}: {} graphs\n",
                ctx.comparison.name(),
                ctx.graph_ids.len()
            ));
        }
    }
    for w in warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

pub(super) fn write_bundle(
    cfg: &PipelineConfig,
    runs: &[GraphRun],
    contexts: &[ContextMatrix],
    skipped: &[(String, String)],
    warnings: &[String],
) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::Io {
        path: cfg.out_dir.clone(),
        source: e,
    })?;
    write_file(&cfg.out_dir.join("scores.csv"), &scores_csv(runs))?;
    write_file(&cfg.out_dir.join("gold.csv"), &gold_csv(runs))?;
    write_file(
        &cfg.out_dir.join("quality_correlations.csv"),
        &correlations_csv(runs),
    )?;
    for ctx in contexts {
        let name = format!("context_matrix_{}.csv", ctx.comparison.name());
        write_file(&cfg.out_dir.join(name), &context_csv(ctx))?;
    }
    write_file(
        &cfg.out_dir.join("manifest.txt"),
        &manifest(cfg, runs, contexts, skipped, warnings),
    )?;
    Ok(())
}
