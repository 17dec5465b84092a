//! Fixtures and independent oracles shared by the integration suites.
//! Oracles are literal transcriptions of the defining formulas, kept free
//! of the library's computation shortcuts.

#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use clusteval::{Cover, Graph};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR")))
}

/// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
pub fn barbell() -> Graph {
    Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]).unwrap()
}

pub fn barbell_triangles() -> Cover {
    Cover::from_clusters(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap()
}

/// All set partitions of {0..n} as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn recurse(i: usize, used: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for v in 0..=used {
            labels[i] = v;
            recurse(i + 1, used.max(v + 1), labels, out);
        }
    }
    recurse(0, 0, &mut labels, &mut out);
    out
}

/// Every connected labeled graph on n nodes, enumerated by edge subset.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let all_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << all_pairs.len()) {
        let edges: Vec<(usize, usize)> = all_pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        if edge_list_connected(n, &edges) {
            out.push(Graph::from_edges(n, &edges).unwrap());
        }
    }
    out
}

fn edge_list_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

/// Modularity by the classical double sum over ordered node pairs
/// (including i = j): sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j) / 2m.
pub fn modularity_double_sum(g: &Graph, labels: &[usize]) -> f64 {
    let m2 = 2.0 * g.m() as f64;
    let mut q = 0.0;
    for i in 0..g.n() {
        for j in 0..g.n() {
            if labels[i] != labels[j] {
                continue;
            }
            let adjacency = if g.has_edge(i, j) { 1.0 } else { 0.0 };
            q += adjacency - (g.degree(i) * g.degree(j)) as f64 / m2;
        }
    }
    q / m2
}

/// BCubed by enumerating every ordered element pair, straight from the
/// defining averages; returns (precision, recall, f).
pub fn fb3_pair_enumeration(c: &Cover, l: &Cover) -> (f64, f64, f64) {
    let n = c.node_count();
    let shared = |cover: &Cover, a: usize, b: usize| -> usize {
        cover
            .membership(a)
            .iter()
            .filter(|ci| cover.membership(b).contains(ci))
            .count()
    };
    let precision_of = |a: &Cover, b: &Cover| -> f64 {
        let mut outer = 0.0;
        for e in 0..n {
            let mut inner = 0.0;
            let mut associates = 0usize;
            for e2 in 0..n {
                let in_a = shared(a, e, e2);
                if in_a == 0 {
                    continue;
                }
                let in_b = shared(b, e, e2);
                inner += in_b.min(in_a) as f64 / in_a as f64;
                associates += 1;
            }
            outer += inner / associates as f64;
        }
        outer / n as f64
    };
    let p = precision_of(c, l);
    let r = precision_of(l, c);
    (p, r, 1.0 / (1.0 / (2.0 * p) + 1.0 / (2.0 * r)))
}

/// Overlapping NMI without the candidate pruning: every cluster pair is
/// examined directly from the four joint membership probabilities.
pub fn onmi_all_pairs(x: &Cover, y: &Cover) -> f64 {
    let n = x.node_count() as f64;
    fn h(p: f64) -> f64 {
        if p <= 0.0 {
            0.0
        } else {
            -p * p.log2()
        }
    }
    let entropy = |c: &Cover, k: usize| {
        let p = c.cluster(k).len() as f64 / n;
        h(p) + h(1.0 - p)
    };
    let side = |a: &Cover, b: &Cover| -> f64 {
        let mut total = 0.0;
        for k in 0..a.len() {
            let ha = entropy(a, k);
            if ha == 0.0 {
                continue;
            }
            let mut best = ha;
            for l in 0..b.len() {
                let both = a
                    .cluster(k)
                    .iter()
                    .filter(|v| b.cluster(l).binary_search(v).is_ok())
                    .count() as f64
                    / n;
                let only_a = a.cluster(k).len() as f64 / n - both;
                let only_b = b.cluster(l).len() as f64 / n - both;
                let neither = 1.0 - both - only_a - only_b;
                if h(both) + h(neither) < h(only_a) + h(only_b) {
                    continue;
                }
                let joint = h(both) + h(only_a) + h(only_b) + h(neither);
                let conditional = joint - entropy(b, l);
                if conditional < best {
                    best = conditional;
                }
            }
            total += (best / ha).clamp(0.0, 1.0);
        }
        total / a.len() as f64
    };
    1.0 - 0.5 * (side(x, y) + side(y, x))
}

/// Exact diameter of the whole graph via BFS from every node. The graph
/// must be connected.
pub fn exact_diameter(g: &Graph) -> usize {
    let mut best = 0;
    for start in 0..g.n() {
        let mut dist = vec![usize::MAX; g.n()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        best = best.max(dist.iter().copied().filter(|&d| d != usize::MAX).max().unwrap());
    }
    best
}

/// Random tree on n nodes: each node attaches to a uniformly random
/// earlier node.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random connected graph: a random tree plus extra random edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random cover over n nodes; with `allow_overlap` some nodes join two
/// clusters. Every node is assigned, so normalization adds nothing.
pub fn random_cover(rng: &mut ChaCha8Rng, n: usize, allow_overlap: bool) -> Cover {
    let k = rng.random_range(1..=n.min(6));
    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        let first = rng.random_range(0..k);
        clusters[first].push(v);
        if allow_overlap && k > 1 && rng.random_range(0..4) == 0 {
            let second = rng.random_range(0..k);
            if second != first {
                clusters[second].push(v);
            }
        }
    }
    clusters.retain(|c| !c.is_empty());
    Cover::from_clusters(n, clusters).unwrap()
}

/// Planted partition: `blocks` communities of `size` nodes, a ring inside
/// each block for connectivity, seeded random intra and inter edges.
pub fn planted_partition(
    rng: &mut ChaCha8Rng,
    blocks: usize,
    size: usize,
    intra_per_node: usize,
    inter_total: usize,
) -> (Graph, Cover) {
    let n = blocks * size;
    let mut edges = Vec::new();
    for b in 0..blocks {
        let base = b * size;
        for i in 0..size {
            edges.push((base + i, base + (i + 1) % size));
        }
        for _ in 0..size * intra_per_node {
            let u = base + rng.random_range(0..size);
            let v = base + rng.random_range(0..size);
            if u != v {
                edges.push((u, v));
            }
        }
    }
    for _ in 0..inter_total {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u / size != v / size {
            edges.push((u, v));
        }
    }
    let graph = Graph::from_edges(n, &edges).unwrap();
    let clusters = (0..blocks)
        .map(|b| (b * size..(b + 1) * size).collect())
        .collect();
    let cover = Cover::from_clusters(n, clusters).unwrap();
    (graph, cover)
}
