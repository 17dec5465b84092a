//! Graph-clustering evaluation: quality functions, extrinsic comparison
//! metrics, detection algorithms, and a rank-correlation pipeline that
//! relates them across graphs.
//!
//! The crate is organized around six building blocks:
//!
//! - [`graph`] — undirected simple graphs: loading, preprocessing against a
//!   ground truth, components, degree statistics.
//! - [`cover`] — clusterings (partitions and overlapping covers) and
//!   per-cluster structural statistics.
//! - [`quality`] — ten intrinsic quality functions with exact and sampled
//!   evaluation.
//! - [`compare`] — extrinsic comparison of two covers: overlapping
//!   F-BCubed and overlapping NMI.
//! - [`detect`] — Louvain, CNM, label propagation, k-core, plus import of
//!   externally computed clusterings.
//! - [`pipeline`] — the end-to-end methodology: detect, score, compare to
//!   ground truth, rank-correlate, and cross-correlate graphs.
//!
//! Each capability has a runnable example:
//!
//! ```bash
//! cargo run --example load_and_stats
//! cargo run --example quality_metrics
//! cargo run --example detect_communities
//! cargo run --example compare_covers
//! cargo run --example sampled_metrics
//! cargo run --example rank_correlation
//! cargo run --example full_pipeline
//! ```
//!
//! Everything is deterministic for fixed seeds: detection algorithms,
//! sampling, and the pipeline reports.

pub mod compare;
pub mod cover;
pub mod detect;
pub mod error;
pub mod graph;
pub mod pipeline;
pub mod quality;

pub use compare::{ComparisonMetric, ComparisonResult};
pub use cover::{Cover, CoverLoad};
pub use error::{Error, Result};
pub use graph::{Graph, GraphStats};
pub use quality::{QualityMetric, QualityScore, SamplingPlan};
