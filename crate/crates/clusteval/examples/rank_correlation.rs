//! The rank-correlation machinery on its own: Spearman's coefficient with
//! tie handling, quality-vs-gold correlation rows, and the graph-context
//! matrix built from them.
//!
//! ```bash
//! cargo run --example rank_correlation
//! ```

use clusteval::compare::ComparisonMetric;
use clusteval::detect::{Algorithm, DetectionSpec};
use clusteval::pipeline::{self, spearman};
use clusteval::{Cover, Graph};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn main() -> clusteval::Result<()> {
    println!("spearman([3,1,2], [3,1,2]) = {:?}", spearman(&[3.0, 1.0, 2.0], &[3.0, 1.0, 2.0])?);
    println!("spearman([1,2,3], [3,2,1]) = {:?}", spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0])?);
    println!("spearman([1,2,3], [2,1,3]) = {:?}", spearman(&[1.0, 2.0, 3.0], &[2.0, 1.0, 3.0])?);

    let graph = Graph::load_edge_list(data("football.edges"))?;
    let truth = Cover::load(data("football.cmty"), &graph)?.cover;

    let specs: Vec<DetectionSpec> = [
        Algorithm::Louvain,
        Algorithm::Cnm,
        Algorithm::LabelPropagation,
        Algorithm::KCore,
    ]
    .map(DetectionSpec::new)
    .to_vec();
    let (covers, _) = pipeline::run_detections(&graph, &specs, &[])?;

    let scores = pipeline::score_matrix(&graph, &covers, &Default::default())?;
    let gold_fb3 = pipeline::gold_standard(&truth, &covers, ComparisonMetric::Fb3)?;
    let gold_onmi = pipeline::gold_standard(&truth, &covers, ComparisonMetric::Onmi)?;

    let row = pipeline::quality_correlation_row("football", &gold_fb3, &gold_onmi, &scores);
    println!("\nfb3-gold correlation row (one coefficient per quality ranking):");
    for (name, coeff) in &row.columns {
        match coeff {
            Some(c) => println!("  {name:<24} {c:>7.3}"),
            None => println!("  {name:<24} missing (constant ranking)"),
        }
    }

    // Two graphs with identical rows correlate at 1; a reversed row at -1.
    let mut mirrored = row.clone();
    mirrored.graph_id = "football_copy".into();
    let ctx = pipeline::context_matrix(&[row, mirrored])?;
    println!(
        "\ncontext matrix of two identical rows: off-diagonal = {:?}",
        ctx.cells[0][1]
    );
    Ok(())
}
