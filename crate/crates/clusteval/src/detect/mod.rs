//! Community detection: four in-process algorithms plus import of covers
//! computed by external tools. Every algorithm is deterministic for a
//! fixed seed and returns a cover spanning all nodes.

mod cnm;
mod kcore;
mod label_prop;
mod louvain;

use std::path::Path;

use crate::cover::{Cover, CoverLoad};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use cnm::cnm_greedy;
pub use kcore::k_core_communities;
pub use label_prop::label_propagation;
pub use louvain::louvain;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Louvain,
    Cnm,
    LabelPropagation,
    KCore,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Louvain => "louvain",
            Algorithm::Cnm => "cnm",
            Algorithm::LabelPropagation => "label_propagation",
            Algorithm::KCore => "k_core",
        }
    }

    pub fn parse(s: &str) -> Option<Algorithm> {
        match s.replace('-', "_").as_str() {
            "louvain" => Some(Algorithm::Louvain),
            "cnm" => Some(Algorithm::Cnm),
            "label_propagation" | "lp" => Some(Algorithm::LabelPropagation),
            "k_core" | "kcore" => Some(Algorithm::KCore),
            _ => None,
        }
    }
}

/// One detection run: which algorithm, its seed, and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectionSpec {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Core order for `k_core`; at least 2.
    pub k: usize,
    /// Sweep cap for `label_propagation`; at least 1.
    pub max_sweeps: usize,
}

impl DetectionSpec {
    pub fn new(algorithm: Algorithm) -> DetectionSpec {
        DetectionSpec {
            algorithm,
            seed: 0,
            k: 3,
            max_sweeps: 100,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!(
                "k_core order must be at least 2, got {}",
                self.k
            )));
        }
        if self.max_sweeps < 1 {
            return Err(Error::InvalidParameter(
                "label propagation needs at least one sweep".into(),
            ));
        }
        Ok(())
    }

    /// Stable identifier used as a clustering id in reports, e.g.
    /// `louvain_s1` or `k_core_k3`.
    pub fn label(&self) -> String {
        match self.algorithm {
            Algorithm::Louvain => format!("louvain_s{}", self.seed),
            Algorithm::Cnm => "cnm".to_string(),
            Algorithm::LabelPropagation => format!("label_propagation_s{}", self.seed),
            Algorithm::KCore => format!("k_core_k{}", self.k),
        }
    }

    /// Parses a config line such as `louvain seed=3` or `k_core k=4`.
    pub fn parse(line: &str) -> Result<DetectionSpec> {
        let mut tokens = line.split_whitespace();
        let name = tokens
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty detection spec".into()))?;
        let algorithm = Algorithm::parse(name).ok_or_else(|| {
            Error::InvalidParameter(format!("unknown detection algorithm {name:?}"))
        })?;
        let mut spec = DetectionSpec::new(algorithm);
        for token in tokens {
            let (key, value) = token.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("expected key=value in detection spec: {token:?}"))
            })?;
            let parse_usize = || {
                value.parse::<usize>().map_err(|_| {
                    Error::InvalidParameter(format!("bad value for {key}: {value:?}"))
                })
            };
            match key {
                "seed" => {
                    spec.seed = value.parse::<u64>().map_err(|_| {
                        Error::InvalidParameter(format!("bad value for seed: {value:?}"))
                    })?
                }
                "k" => spec.k = parse_usize()?,
                "max_sweeps" => spec.max_sweeps = parse_usize()?,
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown detection option {key:?}"
                    )))
                }
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Runs the algorithm described by `spec`.
pub fn run(g: &Graph, spec: &DetectionSpec) -> Result<Cover> {
    spec.validate()?;
    match spec.algorithm {
        Algorithm::Louvain => louvain(g, spec.seed),
        Algorithm::Cnm => cnm_greedy(g),
        Algorithm::LabelPropagation => label_propagation(g, spec.seed, spec.max_sweeps),
        Algorithm::KCore => k_core_communities(g, spec.k),
    }
}

/// Loads an externally computed clustering (MCL, Infomap, LexDFS, ...)
/// from a community file over the graph's labels.
pub fn import_clustering(path: impl AsRef<Path>, g: &Graph) -> Result<CoverLoad> {
    Cover::load(path, g)
}
