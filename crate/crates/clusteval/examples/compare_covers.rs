//! Compare detected clusterings against the ground truth with the two
//! extrinsic metrics: overlapping F-BCubed and overlapping NMI.
//!
//! ```bash
//! cargo run --example compare_covers
//! ```

use clusteval::compare::{self, ComparisonMetric};
use clusteval::detect::{Algorithm, DetectionSpec};
use clusteval::{Cover, Graph};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn main() -> clusteval::Result<()> {
    let graph = Graph::load_edge_list(data("football.edges"))?;
    let truth = Cover::load(data("football.cmty"), &graph)?.cover;

    println!(
        "{:<22} {:>8} {:>8} {:>11} {:>8}",
        "clustering", "fb3", "onmi", "precision", "recall"
    );

    // The truth against itself scores 1 under both metrics.
    let mut candidates = vec![("ground_truth".to_string(), truth.clone())];
    for algorithm in [
        Algorithm::Louvain,
        Algorithm::Cnm,
        Algorithm::LabelPropagation,
        Algorithm::KCore,
    ] {
        let spec = DetectionSpec::new(algorithm);
        candidates.push((spec.label(), clusteval::detect::run(&graph, &spec)?));
    }

    for (label, cover) in &candidates {
        let fb3 = compare::fb3(cover, &truth)?;
        let onmi = compare::onmi(cover, &truth)?;
        println!(
            "{label:<22} {:>8.4} {:>8.4} {:>11.4} {:>8.4}",
            fb3.value,
            onmi.value,
            fb3.precision.unwrap(),
            fb3.recall.unwrap(),
        );
    }

    // recall(C, L) is precision(L, C) by definition.
    let lv = &candidates[1].1;
    let ab = compare::compare(lv, &truth, ComparisonMetric::Fb3)?;
    let ba = compare::compare(&truth, lv, ComparisonMetric::Fb3)?;
    println!(
        "\nrecall(C,L) == precision(L,C): {}",
        ab.recall == ba.precision
    );
    Ok(())
}
