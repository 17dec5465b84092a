//! Evaluate all ten quality functions on a small graph with a known
//! structure: two triangles joined by a bridge, clustered as the two
//! triangles.
//!
//! ```bash
//! cargo run --example quality_metrics
//! ```

use clusteval::quality::{self, QualityMetric};
use clusteval::{Cover, Graph};

fn main() -> clusteval::Result<()> {
    let graph = Graph::from_edges(
        6,
        &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)],
    )?;
    let triangles = Cover::from_clusters(6, vec![vec![0, 1, 2], vec![3, 4, 5]])?;
    let everything = Cover::from_clusters(6, vec![(0..6).collect()])?;
    let singletons = Cover::from_clusters(6, (0..6).map(|v| vec![v]).collect())?;

    println!("{:<24} {:>14} {:>14} {:>14}", "metric", "triangles", "one cluster", "singletons");
    for metric in QualityMetric::ALL {
        let mut cells = Vec::new();
        for cover in [&triangles, &everything, &singletons] {
            match quality::evaluate(&graph, cover, metric) {
                Ok(score) => cells.push(format!("{:>14.6}", score.value)),
                Err(e) => cells.push(format!("{:>14}", format!("({e})"))),
            }
        }
        println!("{:<24} {} {} {}", metric.name(), cells[0], cells[1], cells[2]);
    }

    // The two-point KL divergence behind surprise and significance.
    println!();
    println!("kl_two_point(0.5, 0.5) = {}", quality::kl_two_point(0.5, 0.5));
    println!(
        "kl_two_point(1.0, 7/15) = {:.6} (= ln(15/7))",
        quality::kl_two_point(1.0, 7.0 / 15.0)
    );
    println!("kl_two_point(0.3, 0.0) = {}", quality::kl_two_point(0.3, 0.0));
    Ok(())
}
