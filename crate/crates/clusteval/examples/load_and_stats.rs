//! Load a graph and its ground truth, preprocess, and print structure.
//!
//! ```bash
//! cargo run --example load_and_stats
//! ```

use clusteval::{Cover, Graph};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn main() -> clusteval::Result<()> {
    let graph = Graph::load_edge_list(data("football.edges"))?;
    println!("loaded: n={} m={}", graph.n(), graph.m());

    let stats = graph.stats();
    println!(
        "degrees: min={} median={} max={}",
        stats.degree_sequence.iter().min().unwrap(),
        stats.median_degree,
        stats.degree_sequence.iter().max().unwrap(),
    );
    println!("components: {}", graph.connected_components().len());

    let truth = Cover::load(data("football.cmty"), &graph)?;
    println!(
        "truth: {} communities ({} unknown labels, {} singleton completions)",
        truth.cover.len(),
        truth.unknown_labels,
        truth.completed_singletons
    );

    // Keep only ground-truth-covered nodes, then the largest connected
    // component. This graph is fully covered and connected, so nothing
    // changes; on partially labeled corpora this is the step that shrinks
    // the graph.
    let (filtered, restricted) = graph.induce_ground_truth_subgraph(&truth.cover)?;
    println!(
        "after preprocessing: n={} m={} communities={}",
        filtered.n(),
        filtered.m(),
        restricted.len()
    );

    for c in 0..restricted.len().min(3) {
        let view = restricted.cluster_view(&filtered, c);
        println!(
            "community {c}: size={} internal={} cut={} volume={} diameter={}",
            view.size, view.internal_edges, view.cut, view.volume, view.diameter
        );
    }
    Ok(())
}
