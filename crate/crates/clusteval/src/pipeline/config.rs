//! Plain-text pipeline configuration: key = value pairs with `[section]`
//! headers. Paths are resolved relative to the config file.
//!
//! ```text
//! out_dir = results
//! include_truth = true
//!
//! [sampling]
//! epsilon = 0.02
//! p = 0.05
//! samples = 5000
//! seed = 7
//!
//! [detect]
//! louvain seed=1
//! cnm
//! label_propagation seed=2
//! k_core k=3
//!
//! [graph football]
//! edges = data/football.edges
//! truth = data/football.cmty
//! import = data/football_mcl.cmty
//! ```

use std::path::{Path, PathBuf};

use crate::detect::DetectionSpec;
use crate::error::{Error, Result};
use crate::quality::SamplingPlan;

/// One graph job: its edge list, ground truth, and optional imported
/// clusterings.
#[derive(Debug, Clone)]
pub struct GraphJob {
    pub id: String,
    pub edges: PathBuf,
    pub truth: PathBuf,
    pub imports: Vec<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub graphs: Vec<GraphJob>,
    pub detections: Vec<DetectionSpec>,
    pub sampling: SamplingPlan,
    /// Inject the ground truth itself as one of the scored clusterings.
    pub include_truth: bool,
    pub out_dir: PathBuf,
    /// Per-graph parallelism; 1 means sequential.
    pub jobs: usize,
}

impl Default for PipelineConfig {
    fn default() -> PipelineConfig {
        PipelineConfig {
            graphs: Vec::new(),
            detections: Vec::new(),
            sampling: SamplingPlan::default(),
            include_truth: false,
            out_dir: PathBuf::from("results"),
            jobs: 1,
        }
    }
}

enum Section {
    Top,
    Sampling,
    Detect,
    Graph(usize),
}

impl PipelineConfig {
    pub fn from_file(path: impl AsRef<Path>) -> Result<PipelineConfig> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.into(),
            source: e,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base, path)
    }

    fn parse(text: &str, base: &Path, path: &Path) -> Result<PipelineConfig> {
        let fail = |line: usize, message: String| Error::Parse {
            path: path.into(),
            line,
            message,
        };
        let mut cfg = PipelineConfig::default();
        let mut sampling: (f64, f64, Option<usize>, u64) = (0.02, 0.05, Some(5000), 7);
        let mut section = Section::Top;

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(header) = line.strip_prefix('[') {
                let header = header
                    .strip_suffix(']')
                    .ok_or_else(|| fail(lineno, "unterminated section header".into()))?
                    .trim();
                section = match header {
                    "sampling" => Section::Sampling,
                    "detect" => Section::Detect,
                    _ => match header.strip_prefix("graph ") {
                        Some(id) => {
                            let id = id.trim().to_string();
                            if id.is_empty() {
                                return Err(fail(lineno, "graph section needs an id".into()));
                            }
                            if cfg.graphs.iter().any(|g| g.id == id) {
                                return Err(fail(lineno, format!("duplicate graph id {id:?}")));
                            }
                            cfg.graphs.push(GraphJob {
                                id,
                                edges: PathBuf::new(),
                                truth: PathBuf::new(),
                                imports: Vec::new(),
                            });
                            Section::Graph(cfg.graphs.len() - 1)
                        }
                        None => return Err(fail(lineno, format!("unknown section {header:?}"))),
                    },
                };
                continue;
            }

            match section {
                Section::Detect => {
                    let spec = DetectionSpec::parse(line)
                        .map_err(|e| fail(lineno, e.to_string()))?;
                    cfg.detections.push(spec);
                }
                Section::Top | Section::Sampling | Section::Graph(_) => {
                    let (key, value) = line
                        .split_once('=')
                        .map(|(k, v)| (k.trim(), v.trim()))
                        .ok_or_else(|| fail(lineno, format!("expected key = value, got {line:?}")))?;
                    if value.is_empty() {
                        return Err(fail(lineno, format!("empty value for {key:?}")));
                    }
                    match (&section, key) {
                        (Section::Top, "out_dir") => cfg.out_dir = base.join(value),
                        (Section::Top, "include_truth") => {
                            cfg.include_truth = parse_bool(value)
                                .ok_or_else(|| fail(lineno, format!("bad bool {value:?}")))?
                        }
                        (Section::Top, "jobs") => {
                            cfg.jobs = value
                                .parse()
                                .ok()
                                .filter(|&j| j >= 1)
                                .ok_or_else(|| fail(lineno, format!("bad jobs {value:?}")))?
                        }
                        (Section::Sampling, "epsilon") => {
                            sampling.0 = parse_f64(value)
                                .ok_or_else(|| fail(lineno, format!("bad epsilon {value:?}")))?
                        }
                        (Section::Sampling, "p") => {
                            sampling.1 = parse_f64(value)
                                .ok_or_else(|| fail(lineno, format!("bad p {value:?}")))?
                        }
                        (Section::Sampling, "samples") => {
                            sampling.2 = Some(value.parse().map_err(|_| {
                                fail(lineno, format!("bad samples {value:?}"))
                            })?)
                        }
                        (Section::Sampling, "seed") => {
                            sampling.3 = value
                                .parse()
                                .map_err(|_| fail(lineno, format!("bad seed {value:?}")))?
                        }
                        (Section::Graph(i), "edges") => cfg.graphs[*i].edges = base.join(value),
                        (Section::Graph(i), "truth") => cfg.graphs[*i].truth = base.join(value),
                        (Section::Graph(i), "import") => {
                            cfg.graphs[*i].imports.push(base.join(value))
                        }
                        _ => return Err(fail(lineno, format!("unknown key {key:?} here"))),
                    }
                }
            }
        }

        cfg.sampling = match sampling.2 {
            Some(samples) => SamplingPlan::with_samples(samples, sampling.0, sampling.1, sampling.3),
            None => SamplingPlan::new(sampling.0, sampling.1, sampling.3),
        }?;
        if cfg.graphs.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "{}: config lists no [graph <id>] section",
                path.display()
            )));
        }
        for job in &cfg.graphs {
            if job.edges.as_os_str().is_empty() || job.truth.as_os_str().is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "graph {:?} needs both edges and truth paths",
                    job.id
                )));
            }
        }
        Ok(cfg)
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

fn parse_f64(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}
