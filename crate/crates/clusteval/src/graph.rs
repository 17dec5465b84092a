//! Undirected simple graphs: loading, validation, preprocessing.
//!
//! Node labels from input files are arbitrary strings; they are mapped to
//! dense ids `0..n` in order of first appearance so that repeated runs over
//! the same file produce identical graphs. Adjacency lists are kept sorted,
//! which makes edge queries and neighborhood intersections cheap.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::cover::Cover;
use crate::error::{Error, Result};

/// Immutable undirected simple graph. No self-loops, no duplicate edges,
/// symmetric sorted adjacency. `m` counts each undirected edge once.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    label_ids: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

/// Degree summary of a whole graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// Degree of every node, indexed by node id.
    pub degree_sequence: Vec<usize>,
    /// Median of the degree sequence; mean of the two middle values when
    /// the node count is even.
    pub median_degree: f64,
}

impl Graph {
    /// Reads a whitespace-separated edge list. Lines starting with `#` and
    /// blank lines are skipped. Directed inputs collapse to undirected
    /// edges; self-loops and duplicates are dropped.
    pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.into(),
            source: e,
        })?;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => pairs.push((a.to_string(), b.to_string())),
                _ => {
                    return Err(Error::Parse {
                        path: path.into(),
                        line: idx + 1,
                        message: format!(
                            "expected two whitespace-separated node labels, got {line:?}"
                        ),
                    })
                }
            }
        }
        Self::from_labeled_edges(pairs)
    }

    /// Builds a graph from labeled edge pairs; ids are assigned by first
    /// appearance. Errors when no edges remain.
    pub fn from_labeled_edges(pairs: impl IntoIterator<Item = (String, String)>) -> Result<Graph> {
        let mut labels: Vec<String> = Vec::new();
        let mut label_ids: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        for (a, b) in pairs {
            let u = intern(&mut labels, &mut label_ids, a);
            let v = intern(&mut labels, &mut label_ids, b);
            edges.push((u, v));
        }
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let g = Self::assemble(labels, label_ids, edges)?;
        if g.edge_count == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(g)
    }

    /// Builds a graph over `n` nodes labeled `0..n` from integer edges.
    /// Unlike the file loader this accepts isolated nodes and zero edges,
    /// which some tests and degenerate metrics need to express.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        let label_ids = labels
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Self::assemble(labels, label_ids, edges.to_vec())
    }

    fn assemble(
        labels: Vec<String>,
        label_ids: HashMap<String, usize>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Graph> {
        let n = labels.len();
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n {
                return Err(Error::NodeOutOfRange { node: u, n });
            }
            if v >= n {
                return Err(Error::NodeOutOfRange { node: v, n });
            }
            if u == v {
                continue; // self-loop
            }
            canon.push(if u < v { (u, v) } else { (v, u) });
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            labels,
            label_ids,
            adj,
            edge_count: canon.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.label_ids.get(label).copied()
    }

    pub fn stats(&self) -> GraphStats {
        let degree_sequence: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut sorted = degree_sequence.clone();
        sorted.sort_unstable();
        let n = sorted.len();
        let median_degree = if n % 2 == 1 {
            sorted[n / 2] as f64
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
        };
        GraphStats {
            n,
            m: self.edge_count,
            degree_sequence,
            median_degree,
        }
    }

    /// Maximal connected node sets, each sorted ascending, ordered by
    /// smallest contained id.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut components = Vec::new();
        for root in 0..self.n() {
            if seen[root] {
                continue;
            }
            let mut queue = VecDeque::from([root]);
            seen[root] = true;
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Drops nodes outside every real ground-truth community, keeps the
    /// largest connected component of the remainder (ties broken by the
    /// component containing the smallest original id), restricts the truth
    /// cover to the survivors and re-densifies ids.
    ///
    /// Singleton clusters that were added by cover normalization do not
    /// count as coverage here; they stand for nodes the ground truth never
    /// mentioned.
    pub fn induce_ground_truth_subgraph(&self, truth: &Cover) -> Result<(Graph, Cover)> {
        if truth.node_count() != self.n() {
            return Err(Error::NodeSetMismatch {
                left: self.n(),
                right: truth.node_count(),
            });
        }
        let mut covered = vec![false; self.n()];
        for c in 0..truth.len() {
            if truth.is_synthetic(c) {
                continue;
            }
            for &v in truth.cluster(c) {
                covered[v] = true;
            }
        }
        if !covered.iter().any(|&c| c) {
            return Err(Error::EmptyGraph);
        }

        // Largest component of the covered-induced subgraph. Scanning roots
        // in ascending id order makes "first maximum" the tie-break rule.
        let mut seen = vec![false; self.n()];
        let mut best: Vec<usize> = Vec::new();
        for root in 0..self.n() {
            if !covered[root] || seen[root] {
                continue;
            }
            let mut queue = VecDeque::from([root]);
            seen[root] = true;
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if covered[u] && !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best.sort_unstable();

        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in best.iter().enumerate() {
            new_id[v] = i;
        }
        let labels: Vec<String> = best.iter().map(|&v| self.labels[v].clone()).collect();
        let label_ids = labels
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut edges = Vec::new();
        for &u in &best {
            for &v in &self.adj[u] {
                if v > u && new_id[v] != usize::MAX {
                    edges.push((new_id[u], new_id[v]));
                }
            }
        }
        let graph = Graph::assemble(labels, label_ids, edges)?;

        let mut clusters = Vec::new();
        for c in 0..truth.len() {
            if truth.is_synthetic(c) {
                continue;
            }
            let members: Vec<usize> = truth
                .cluster(c)
                .iter()
                .filter(|&&v| new_id[v] != usize::MAX).map(|&v| new_id[v])
                .collect();
            if !members.is_empty() {
                clusters.push(members);
            }
        }
        let cover = Cover::from_clusters(graph.n(), clusters)?;
        Ok((graph, cover))
    }

    /// Writes the edge list back out, one `u v` line per edge, labels as
    /// loaded. Inverse of [`Graph::load_edge_list`] up to line order.
    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = String::new();
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if v > u {
                    out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
                }
            }
        }
        fs::File::create(path)
            .and_then(|mut f| f.write_all(out.as_bytes()))
            .map_err(|e| Error::Io {
                path: path.into(),
                source: e,
            })
    }
}

fn intern(labels: &mut Vec<String>, ids: &mut HashMap<String, usize>, label: String) -> usize {
    if let Some(&id) = ids.get(&label) {
        return id;
    }
    let id = labels.len();
    labels.push(label.clone());
    ids.insert(label, id);
    id
}

/// Double-BFS diameter estimate of the subgraph induced by `members`
/// (sorted): BFS from the smallest member, then BFS again from the farthest
/// node found; the second eccentricity is returned. Exact on trees and on
/// clusters of at most two nodes; never above the true diameter. On a
/// disconnected induced subgraph only the first member's component is
/// measured.
pub(crate) fn double_bfs_diameter(g: &Graph, members: &[usize]) -> usize {
    if members.len() <= 1 {
        return 0;
    }
    let (far, _) = induced_bfs(g, members, members[0]);
    let (_, ecc) = induced_bfs(g, members, far);
    ecc
}

/// BFS inside the induced subgraph; returns the farthest reached node
/// (smallest id on ties) and its distance.
fn induced_bfs(g: &Graph, members: &[usize], start: usize) -> (usize, usize) {
    let mut dist: HashMap<usize, usize> = HashMap::with_capacity(members.len());
    dist.insert(start, 0);
    let mut queue = VecDeque::from([start]);
    let mut far = start;
    let mut far_dist = 0;
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d > far_dist || (d == far_dist && v < far) {
            far = v;
            far_dist = d;
        }
        for &u in g.neighbors(v) {
            if members.binary_search(&u).is_ok() && !dist.contains_key(&u) {
                dist.insert(u, d + 1);
                queue.push_back(u);
            }
        }
    }
    (far, far_dist)
}

/// True whether the subgraph induced by `members` is connected.
pub(crate) fn induced_connected(g: &Graph, members: &[usize]) -> bool {
    if members.len() <= 1 {
        return true;
    }
    let mut dist: HashMap<usize, usize> = HashMap::with_capacity(members.len());
    dist.insert(members[0], 0);
    let mut queue = VecDeque::from([members[0]]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if members.binary_search(&u).is_ok() && !dist.contains_key(&u) {
                dist.insert(u, 0);
                queue.push_back(u);
            }
        }
    }
    dist.len() == members.len()
}
