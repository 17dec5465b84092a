//! Command-line front door. Every subcommand is a thin wrapper over the
//! library; values printed here equal the library-call values exactly.
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use clusteval::compare::{self, ComparisonMetric};
use clusteval::detect::{Algorithm, DetectionSpec};
use clusteval::pipeline::{self, format_significant, PipelineConfig};
use clusteval::quality::{self, EvalMode, QualityMetric, SamplingPlan};
use clusteval::{Cover, Graph};

#[derive(Parser)]
#[command(name = "clusteval", version, about = "Graph-clustering evaluation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Filter a graph to its ground-truth-covered largest connected
    /// component and write the preprocessed pair back out.
    Prep(PrepArgs),
    /// Run one community detection algorithm and write the clustering.
    Detect(DetectArgs),
    /// Score a clustering with quality functions; CSV on stdout or --out.
    Quality(QualityArgs),
    /// Compare a clustering against a reference clustering.
    Compare(CompareArgs),
    /// Run the full methodology over a config file.
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct PrepArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    #[arg(long)]
    out_graph: PathBuf,
    #[arg(long)]
    out_truth: PathBuf,
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long)]
    graph: PathBuf,
    /// louvain, cnm, label_propagation, or k_core.
    #[arg(long)]
    algo: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Core order for k_core.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Sweep cap for label_propagation.
    #[arg(long, default_value_t = 100)]
    max_sweeps: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct QualityArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    clusters: PathBuf,
    /// Comma-separated metric names, or "all".
    #[arg(long, default_value = "all")]
    metrics: String,
    /// Node-sample budget for the vertex-level metrics.
    #[arg(long, default_value_t = 5000)]
    samples: usize,
    #[arg(long, default_value_t = 0.02)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.05)]
    p: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Force exact evaluation regardless of graph size.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    clusters: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    /// Comma-separated: fb3, onmi, or "all".
    #[arg(long, default_value = "all")]
    metrics: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's out_dir.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Overrides the config's per-graph parallelism.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> clusteval::Result<()> {
    match cli.command {
        Command::Prep(args) => prep(args),
        Command::Detect(args) => detect(args),
        Command::Quality(args) => quality_cmd(args),
        Command::Compare(args) => compare_cmd(args),
        Command::Pipeline(args) => pipeline_cmd(args),
    }
}

fn prep(args: PrepArgs) -> clusteval::Result<()> {
    let graph = Graph::load_edge_list(&args.graph)?;
    let truth = Cover::load(&args.truth, &graph)?;
    if truth.unknown_labels > 0 {
        eprintln!("warning: {} unknown truth labels skipped", truth.unknown_labels);
    }
    let (filtered, restricted) = graph.induce_ground_truth_subgraph(&truth.cover)?;
    filtered.write_edge_list(&args.out_graph)?;
    restricted.write(&filtered, &args.out_truth)?;
    eprintln!(
        "kept {} of {} nodes, {} of {} edges",
        filtered.n(),
        graph.n(),
        filtered.m(),
        graph.m()
    );
    Ok(())
}

fn detect(args: DetectArgs) -> clusteval::Result<()> {
    let graph = Graph::load_edge_list(&args.graph)?;
    let algorithm = Algorithm::parse(&args.algo).ok_or_else(|| {
        clusteval::Error::InvalidParameter(format!("unknown algorithm {:?}", args.algo))
    })?;
    let spec = DetectionSpec {
        algorithm,
        seed: args.seed,
        k: args.k,
        max_sweeps: args.max_sweeps,
    };
    let cover = clusteval::detect::run(&graph, &spec)?;
    cover.write(&graph, &args.out)?;
    eprintln!("{}: {} clusters", spec.label(), cover.len());
    Ok(())
}

fn parse_metric_list<T>(
    spec: &str,
    all: &[T],
    parse: impl Fn(&str) -> Option<T>,
) -> clusteval::Result<Vec<T>>
where
    T: Copy,
{
    if spec == "all" {
        return Ok(all.to_vec());
    }
    spec.split(',')
        .map(str::trim)
        .map(|name| {
            parse(name).ok_or_else(|| {
                clusteval::Error::InvalidParameter(format!("unknown metric {name:?}"))
            })
        })
        .collect()
}

fn emit(out: Option<&PathBuf>, contents: &str) -> clusteval::Result<()> {
    match out {
        Some(path) => std::fs::write(path, contents).map_err(|e| clusteval::Error::Io {
            path: path.clone(),
            source: e,
        }),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn quality_cmd(args: QualityArgs) -> clusteval::Result<()> {
    let graph = Graph::load_edge_list(&args.graph)?;
    let load = Cover::load(&args.clusters, &graph)?;
    let metrics = parse_metric_list(&args.metrics, &QualityMetric::ALL, QualityMetric::parse)?;
    let plan = SamplingPlan::with_samples(args.samples, args.epsilon, args.p, args.seed)?;
    let clustering_id = args
        .clusters
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "clustering".into());

    let mut csv = String::from("clustering_id,metric_name,value,mode,sample_count,seed\n");
    for metric in metrics {
        let score = if args.exact {
            quality::evaluate(&graph, &load.cover, metric)?
        } else {
            quality::evaluate_with_plan(&graph, &load.cover, metric, &plan)?
        };
        let (mode, samples, seed) = match score.mode {
            EvalMode::Exact => ("exact", String::new(), String::new()),
            EvalMode::Sampled { samples, seed } => {
                ("sampled", samples.to_string(), seed.to_string())
            }
        };
        csv.push_str(&format!(
            "{clustering_id},{},{},{mode},{samples},{seed}\n",
            metric.name(),
            format_significant(score.value),
        ));
    }
    emit(args.out.as_ref(), &csv)
}

fn compare_cmd(args: CompareArgs) -> clusteval::Result<()> {
    let graph = Graph::load_edge_list(&args.graph)?;
    let clusters = Cover::load(&args.clusters, &graph)?;
    let truth = Cover::load(&args.truth, &graph)?;
    let metrics =
        parse_metric_list(&args.metrics, &ComparisonMetric::ALL, ComparisonMetric::parse)?;
    let clustering_id = args
        .clusters
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "clustering".into());

    let mut csv = String::from("clustering_id,metric,value,precision,recall\n");
    for metric in metrics {
        let result = compare::compare(&clusters.cover, &truth.cover, metric)?;
        let fmt_opt = |v: Option<f64>| v.map(format_significant).unwrap_or_default();
        csv.push_str(&format!(
            "{clustering_id},{},{},{},{}\n",
            metric.name(),
            format_significant(result.value),
            fmt_opt(result.precision),
            fmt_opt(result.recall),
        ));
    }
    emit(args.out.as_ref(), &csv)
}

fn pipeline_cmd(args: PipelineArgs) -> clusteval::Result<()> {
    let mut cfg = PipelineConfig::from_file(&args.config)?;
    if let Some(out_dir) = args.out_dir {
        cfg.out_dir = out_dir;
    }
    if let Some(jobs) = args.jobs {
        cfg.jobs = jobs;
    }
    let report = pipeline::run_pipeline(&cfg)?;
    eprintln!(
        "processed {} graphs ({} skipped), report in {}",
        report.processed.len(),
        report.skipped.len(),
        report.out_dir.display()
    );
    for (id, reason) in &report.skipped {
        eprintln!("skipped {id}: {reason}");
    }
    Ok(())
}
