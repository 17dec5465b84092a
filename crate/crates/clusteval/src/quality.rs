//! The ten clustering quality functions, in exact and sampled form.
//!
//! Vertex-level functions (clustering coefficient, permanence, flake-odf,
//! fomd) score each (node, community) membership; a node's score is the
//! mean over its memberships and the clustering score is the mean over
//! nodes. Community-level functions (cut ratio, conductance, compactness,
//! modularity) sum one term per cluster. Surprise and significance are
//! graph-level KL-divergence scores. Higher is better for all ten.

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{sorted_intersection_count, Cover};
use crate::error::{Error, Result};
use crate::graph::{double_bfs_diameter, Graph};

/// The ten quality functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QualityMetric {
    ClusteringCoefficient,
    Permanence,
    FlakeOdf,
    Fomd,
    CutRatio,
    Conductance,
    Compactness,
    Modularity,
    Surprise,
    Significance,
}

impl QualityMetric {
    pub const ALL: [QualityMetric; 10] = [
        QualityMetric::ClusteringCoefficient,
        QualityMetric::Permanence,
        QualityMetric::FlakeOdf,
        QualityMetric::Fomd,
        QualityMetric::CutRatio,
        QualityMetric::Conductance,
        QualityMetric::Compactness,
        QualityMetric::Modularity,
        QualityMetric::Surprise,
        QualityMetric::Significance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QualityMetric::ClusteringCoefficient => "clustering_coefficient",
            QualityMetric::Permanence => "permanence",
            QualityMetric::FlakeOdf => "flake_odf",
            QualityMetric::Fomd => "fomd",
            QualityMetric::CutRatio => "cut_ratio",
            QualityMetric::Conductance => "conductance",
            QualityMetric::Compactness => "compactness",
            QualityMetric::Modularity => "modularity",
            QualityMetric::Surprise => "surprise",
            QualityMetric::Significance => "significance",
        }
    }

    pub fn parse(s: &str) -> Option<QualityMetric> {
        QualityMetric::ALL.into_iter().find(|m| m.name() == s)
    }

    /// The sampled-evaluation form, for the four vertex-level functions.
    pub fn vertex_level(self) -> Option<VertexMetric> {
        match self {
            QualityMetric::ClusteringCoefficient => Some(VertexMetric::ClusteringCoefficient),
            QualityMetric::Permanence => Some(VertexMetric::Permanence),
            QualityMetric::FlakeOdf => Some(VertexMetric::FlakeOdf),
            QualityMetric::Fomd => Some(VertexMetric::Fomd),
            _ => None,
        }
    }
}

/// The vertex-level subset, the only functions eligible for node sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexMetric {
    ClusteringCoefficient,
    Permanence,
    FlakeOdf,
    Fomd,
}

impl From<VertexMetric> for QualityMetric {
    fn from(v: VertexMetric) -> QualityMetric {
        match v {
            VertexMetric::ClusteringCoefficient => QualityMetric::ClusteringCoefficient,
            VertexMetric::Permanence => QualityMetric::Permanence,
            VertexMetric::FlakeOdf => QualityMetric::FlakeOdf,
            VertexMetric::Fomd => QualityMetric::Fomd,
        }
    }
}

/// How a score was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

/// One quality-function evaluation. `value` may be `f64::INFINITY` for the
/// degenerate divergence cases of surprise; it is never NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityScore {
    pub metric: QualityMetric,
    pub value: f64,
    pub mode: EvalMode,
}

/// Node-sampling parameters. `samples` always satisfies the Hoeffding
/// bound for `(epsilon, confidence_p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingPlan {
    pub samples: usize,
    pub epsilon: f64,
    pub confidence_p: f64,
    pub seed: u64,
}

impl SamplingPlan {
    /// Plan with exactly the sample count the bound requires.
    pub fn new(epsilon: f64, confidence_p: f64, seed: u64) -> Result<SamplingPlan> {
        let samples = hoeffding_sample_size(epsilon, confidence_p)?;
        Ok(SamplingPlan {
            samples,
            epsilon,
            confidence_p,
            seed,
        })
    }

    /// Plan with an explicit sample count, validated against the bound.
    pub fn with_samples(
        samples: usize,
        epsilon: f64,
        confidence_p: f64,
        seed: u64,
    ) -> Result<SamplingPlan> {
        let need = hoeffding_sample_size(epsilon, confidence_p)?;
        if samples < need {
            return Err(Error::InvalidParameter(format!(
                "{samples} samples do not meet the Hoeffding bound of {need} \
                 for epsilon={epsilon}, p={confidence_p}"
            )));
        }
        Ok(SamplingPlan {
            samples,
            epsilon,
            confidence_p,
            seed,
        })
    }
}

impl Default for SamplingPlan {
    /// 5000 samples cover epsilon 0.02 at confidence 0.05 with room to
    /// spare (the bound asks for 4612).
    fn default() -> SamplingPlan {
        SamplingPlan {
            samples: 5000,
            epsilon: 0.02,
            confidence_p: 0.05,
            seed: 7,
        }
    }
}

/// Two-point Kullback-Leibler divergence between Bernoulli(x) and
/// Bernoulli(y), natural log, with 0*log(0) = 0. Degenerate references
/// (y in {0,1} while x differs) yield +infinity.
pub fn kl_two_point(x: f64, y: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x), "x out of range: {x}");
    debug_assert!((0.0..=1.0).contains(&y), "y out of range: {y}");
    fn term(a: f64, b: f64) -> f64 {
        if a == 0.0 {
            0.0
        } else if b == 0.0 {
            f64::INFINITY
        } else {
            a * (a / b).ln()
        }
    }
    // Non-negative by Gibbs' inequality; the max guards against rounding.
    (term(x, y) + term(1.0 - x, 1.0 - y)).max(0.0)
}

/// Smallest i.i.d. sample count such that the mean of [0,1] samples is
/// within `epsilon` of the expectation except with probability `p`:
/// ceil(ln(p/2) / (-2 epsilon^2)), floored at one sample.
///
/// `p` up to 2 is accepted; the bound degenerates to a single sample as
/// `p` approaches 2.
pub fn hoeffding_sample_size(epsilon: f64, p: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    if !(p > 0.0 && p < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "confidence p must lie in (0, 2), got {p}"
        )));
    }
    let bound = (p / 2.0).ln() / (-2.0 * epsilon * epsilon);
    Ok(bound.ceil().max(1.0) as usize)
}

/// Double-BFS diameter estimate for cluster `c` of the cover.
pub fn approx_diameter(g: &Graph, cover: &Cover, c: usize) -> usize {
    double_bfs_diameter(g, cover.cluster(c))
}

// ---------------------------------------------------------------------------
// Vertex-level functions
// ---------------------------------------------------------------------------

/// Internal degree m(v, C): neighbors of `v` inside cluster `c`, excluding
/// `v` itself.
fn internal_degree(g: &Graph, cover: &Cover, v: usize, c: usize) -> usize {
    sorted_intersection_count(g.neighbors(v), cover.cluster(c))
}

/// Local clustering coefficient of `v` restricted to cluster `c`: the
/// fraction of pairs of internal neighbors that are themselves adjacent.
/// Zero when fewer than two internal neighbors exist.
fn f_clus(g: &Graph, cover: &Cover, v: usize, c: usize) -> f64 {
    let members = cover.cluster(c);
    let internal: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| members.binary_search(&u).is_ok())
        .collect();
    let d = internal.len();
    if d < 2 {
        return 0.0;
    }
    let mut linked = 0usize; // counts ordered pairs, i.e. twice the edges
    for &u in &internal {
        linked += sorted_intersection_count(g.neighbors(u), &internal);
    }
    linked as f64 / (d * (d - 1)) as f64
}

fn vertex_node_score(g: &Graph, cover: &Cover, v: usize, metric: VertexMetric, k_m: f64) -> f64 {
    let memberships = cover.membership(v);
    debug_assert!(!memberships.is_empty());
    let mut acc = 0.0;
    match metric {
        VertexMetric::ClusteringCoefficient => {
            for &c in memberships {
                acc += f_clus(g, cover, v, c);
            }
        }
        VertexMetric::Permanence => {
            // m(v, C') for every cluster touching the neighborhood of v.
            let mut tally: std::collections::BTreeMap<usize, usize> =
                std::collections::BTreeMap::new();
            for &u in g.neighbors(v) {
                for &c in cover.membership(u) {
                    *tally.entry(c).or_insert(0) += 1;
                }
            }
            let k_v = g.degree(v);
            for &c in memberships {
                let internal = tally.get(&c).copied().unwrap_or(0);
                let e_max = tally
                    .iter()
                    .filter(|&(&cluster, _)| cluster != c)
                    .map(|(_, &count)| count)
                    .max()
                    .unwrap_or(0)
                    .max(1);
                let pull = if k_v == 0 {
                    0.0
                } else {
                    internal as f64 / (e_max as f64 * k_v as f64)
                };
                acc += pull + f_clus(g, cover, v, c) - 1.0;
            }
        }
        VertexMetric::FlakeOdf => {
            for &c in memberships {
                let internal = internal_degree(g, cover, v, c);
                // internal > external  <=>  2*internal > degree
                if 2 * internal > g.degree(v) {
                    acc += 1.0;
                }
            }
        }
        VertexMetric::Fomd => {
            for &c in memberships {
                if internal_degree(g, cover, v, c) as f64 > k_m {
                    acc += 1.0;
                }
            }
        }
    }
    acc / memberships.len() as f64
}

fn exact_vertex_average(g: &Graph, cover: &Cover, metric: VertexMetric) -> f64 {
    let k_m = match metric {
        VertexMetric::Fomd => g.stats().median_degree,
        _ => 0.0,
    };
    let total: f64 = (0..g.n())
        .map(|v| vertex_node_score(g, cover, v, metric, k_m))
        .sum();
    total / g.n() as f64
}

fn vertex_score(g: &Graph, cover: &Cover, metric: VertexMetric) -> QualityScore {
    QualityScore {
        metric: metric.into(),
        value: exact_vertex_average(g, cover, metric),
        mode: EvalMode::Exact,
    }
}

pub fn clustering_coefficient(g: &Graph, cover: &Cover) -> QualityScore {
    vertex_score(g, cover, VertexMetric::ClusteringCoefficient)
}

pub fn permanence(g: &Graph, cover: &Cover) -> QualityScore {
    vertex_score(g, cover, VertexMetric::Permanence)
}

pub fn flake_odf(g: &Graph, cover: &Cover) -> QualityScore {
    vertex_score(g, cover, VertexMetric::FlakeOdf)
}

pub fn fomd(g: &Graph, cover: &Cover) -> QualityScore {
    vertex_score(g, cover, VertexMetric::Fomd)
}

/// Mean of the vertex-level function over `plan.samples` nodes drawn
/// uniformly with replacement, or the exact mean when the graph has no
/// more nodes than the plan asks for.
pub fn sampled_vertex_average(
    g: &Graph,
    cover: &Cover,
    metric: VertexMetric,
    plan: &SamplingPlan,
) -> QualityScore {
    if g.n() <= plan.samples {
        return vertex_score(g, cover, metric);
    }
    let k_m = match metric {
        VertexMetric::Fomd => g.stats().median_degree,
        _ => 0.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut total = 0.0;
    for _ in 0..plan.samples {
        let v = rng.random_range(0..g.n());
        total += vertex_node_score(g, cover, v, metric, k_m);
    }
    QualityScore {
        metric: metric.into(),
        value: total / plan.samples as f64,
        mode: EvalMode::Sampled {
            samples: plan.samples,
            seed: plan.seed,
        },
    }
}

// ---------------------------------------------------------------------------
// Community-level functions
// ---------------------------------------------------------------------------

/// Complemented cut ratio, weighted by cluster size share:
/// sum over C of (1 - cut(C) / (k_C (n - k_C))) * k_C / n.
/// A cluster equal to the whole node set contributes its full share.
pub fn cut_ratio(g: &Graph, cover: &Cover) -> QualityScore {
    let n = g.n() as f64;
    let mut total = 0.0;
    for c in 0..cover.len() {
        let (size, _, cut, _) = cover.cluster_counts(g, c);
        let k = size as f64;
        let term = if size == g.n() {
            1.0 // no external pair exists
        } else {
            1.0 - cut as f64 / (k * (n - k))
        };
        total += term * (k / n);
    }
    QualityScore {
        metric: QualityMetric::CutRatio,
        value: total,
        mode: EvalMode::Exact,
    }
}

/// Complemented conductance, weighted by cluster size share:
/// sum over C of (1 - cut(C) / Vol(C)) * k_C / n. Zero-volume clusters
/// contribute nothing.
pub fn conductance(g: &Graph, cover: &Cover) -> QualityScore {
    let n = g.n() as f64;
    let mut total = 0.0;
    for c in 0..cover.len() {
        let (size, _, cut, volume) = cover.cluster_counts(g, c);
        if volume == 0 {
            continue;
        }
        total += (1.0 - cut as f64 / volume as f64) * (size as f64 / n);
    }
    QualityScore {
        metric: QualityMetric::Conductance,
        value: total,
        mode: EvalMode::Exact,
    }
}

/// Internal edges per hop of diameter, summed over clusters; a proxy for
/// how fast diffusion saturates each community.
pub fn compactness(g: &Graph, cover: &Cover) -> QualityScore {
    let mut total = 0.0;
    for c in 0..cover.len() {
        let (_, internal, _, _) = cover.cluster_counts(g, c);
        let diam = double_bfs_diameter(g, cover.cluster(c)).max(1);
        total += internal as f64 / diam as f64;
    }
    QualityScore {
        metric: QualityMetric::Compactness,
        value: total,
        mode: EvalMode::Exact,
    }
}

/// Newman modularity: sum over C of m(C)/m - (Vol(C)/2m)^2.
pub fn modularity(g: &Graph, cover: &Cover) -> Result<QualityScore> {
    if g.m() == 0 {
        return Err(Error::UndefinedInput(
            "modularity needs at least one edge".into(),
        ));
    }
    let m = g.m() as f64;
    let mut total = 0.0;
    for c in 0..cover.len() {
        let (_, internal, _, volume) = cover.cluster_counts(g, c);
        let frac = volume as f64 / (2.0 * m);
        total += internal as f64 / m - frac * frac;
    }
    Ok(QualityScore {
        metric: QualityMetric::Modularity,
        value: total,
        mode: EvalMode::Exact,
    })
}

fn pairs(k: usize) -> u64 {
    let k = k as u64;
    k * (k - 1) / 2
}

/// Asymptotic surprise: D(q || q_hat) where q is the fraction of edges
/// internal to some cluster and q_hat the fraction of node pairs internal
/// to some cluster. Overlapping covers can push either ratio past one;
/// both saturate at one.
pub fn surprise(g: &Graph, cover: &Cover) -> Result<QualityScore> {
    if g.n() < 2 || g.m() == 0 {
        return Err(Error::UndefinedInput(
            "surprise needs at least two nodes and one edge".into(),
        ));
    }
    let mut internal = 0u64;
    let mut internal_pairs = 0u64;
    for c in 0..cover.len() {
        let (size, edges, _, _) = cover.cluster_counts(g, c);
        internal += edges as u64;
        internal_pairs += pairs(size);
    }
    let q = (internal as f64 / g.m() as f64).min(1.0);
    let q_hat = (internal_pairs as f64 / pairs(g.n()) as f64).min(1.0);
    Ok(QualityScore {
        metric: QualityMetric::Surprise,
        value: kl_two_point(q, q_hat),
        mode: EvalMode::Exact,
    })
}

/// Significance: sum over C of binom(k_C, 2) * D(density(C) || density(G)).
/// Clusters smaller than two nodes contribute nothing.
pub fn significance(g: &Graph, cover: &Cover) -> Result<QualityScore> {
    if g.n() < 2 || g.m() == 0 {
        return Err(Error::UndefinedInput(
            "significance needs at least two nodes and one edge".into(),
        ));
    }
    let graph_density = g.m() as f64 / pairs(g.n()) as f64;
    let mut total = 0.0;
    for c in 0..cover.len() {
        let (size, internal, _, _) = cover.cluster_counts(g, c);
        if size < 2 {
            continue;
        }
        let cluster_pairs = pairs(size) as f64;
        total += cluster_pairs * kl_two_point(internal as f64 / cluster_pairs, graph_density);
    }
    Ok(QualityScore {
        metric: QualityMetric::Significance,
        value: total,
        mode: EvalMode::Exact,
    })
}

/// Evaluates one metric exactly.
pub fn evaluate(g: &Graph, cover: &Cover, metric: QualityMetric) -> Result<QualityScore> {
    Ok(match metric {
        QualityMetric::ClusteringCoefficient => clustering_coefficient(g, cover),
        QualityMetric::Permanence => permanence(g, cover),
        QualityMetric::FlakeOdf => flake_odf(g, cover),
        QualityMetric::Fomd => fomd(g, cover),
        QualityMetric::CutRatio => cut_ratio(g, cover),
        QualityMetric::Conductance => conductance(g, cover),
        QualityMetric::Compactness => compactness(g, cover),
        QualityMetric::Modularity => modularity(g, cover)?,
        QualityMetric::Surprise => surprise(g, cover)?,
        QualityMetric::Significance => significance(g, cover)?,
    })
}

/// Evaluates one metric, sampling the vertex-level ones per `plan`.
/// Community- and graph-level metrics are always exact.
pub fn evaluate_with_plan(
    g: &Graph,
    cover: &Cover,
    metric: QualityMetric,
    plan: &SamplingPlan,
) -> Result<QualityScore> {
    match metric.vertex_level() {
        Some(v) => Ok(sampled_vertex_average(g, cover, v, plan)),
        None => evaluate(g, cover, metric),
    }
}
