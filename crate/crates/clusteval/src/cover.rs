//! Clusterings: partitions and overlapping covers over a graph's node set,
//! plus per-cluster structural statistics.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{double_bfs_diameter, induced_connected, Graph};

/// A clustering: non-empty node sets whose union is the whole node set.
/// Nodes left out by the source (a file or a detection algorithm) are
/// completed as singleton clusters so that every quality function stays
/// total; those singletons are flagged as synthetic and preprocessing
/// treats them as "not covered".
#[derive(Debug, Clone)]
pub struct Cover {
    n: usize,
    clusters: Vec<Vec<usize>>,
    membership: Vec<Vec<usize>>,
    synthetic: Vec<bool>,
    overlapping: bool,
}

/// A cover loaded from a file, with counts for whatever had to be repaired.
#[derive(Debug)]
pub struct CoverLoad {
    pub cover: Cover,
    /// Labels that did not name any node of the host graph.
    pub unknown_labels: usize,
    /// Singleton clusters added to reach full node coverage.
    pub completed_singletons: usize,
}

/// Structural statistics of one cluster against the full graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterView {
    pub size: usize,
    pub internal_edges: usize,
    /// Edges with exactly one endpoint in the cluster.
    pub cut: usize,
    /// Sum of full-graph degrees of the members.
    pub volume: usize,
    /// Double-BFS estimate; exact for clusters of at most two nodes. On a
    /// disconnected cluster this measures the first member's component.
    pub diameter: usize,
}

impl Cover {
    /// Normalizing constructor: deduplicates members, collapses duplicate
    /// clusters, rejects explicitly empty clusters, and completes uncovered
    /// nodes as synthetic singletons.
    pub fn from_clusters(n: usize, clusters: Vec<Vec<usize>>) -> Result<Cover> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(clusters.len());
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for mut cluster in clusters {
            if cluster.is_empty() {
                return Err(Error::EmptyCluster);
            }
            cluster.sort_unstable();
            cluster.dedup();
            if let Some(&node) = cluster.iter().find(|&&v| v >= n) {
                return Err(Error::NodeOutOfRange { node, n });
            }
            if seen.insert(cluster.clone()) {
                canon.push(cluster);
            }
        }
        let mut synthetic = vec![false; canon.len()];
        let mut covered = vec![false; n];
        for cluster in &canon {
            for &v in cluster {
                covered[v] = true;
            }
        }
        for (v, &is_covered) in covered.iter().enumerate() {
            if !is_covered {
                canon.push(vec![v]);
                synthetic.push(true);
            }
        }
        let mut membership = vec![Vec::new(); n];
        for (c, cluster) in canon.iter().enumerate() {
            for &v in cluster {
                membership[v].push(c);
            }
        }
        let overlapping = membership.iter().any(|m| m.len() > 1);
        Ok(Cover {
            n,
            clusters: canon,
            membership,
            synthetic,
            overlapping,
        })
    }

    /// Builds a partition from one label per node.
    pub fn from_partition_labels(labels: &[usize]) -> Result<Cover> {
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut order: Vec<usize> = Vec::new();
        let mut groups: std::collections::HashMap<usize, Vec<usize>> =
            std::collections::HashMap::new();
        for (v, &l) in labels.iter().enumerate() {
            let entry = groups.entry(l).or_default();
            if entry.is_empty() {
                order.push(l);
            }
            entry.push(v);
        }
        let clusters = order.into_iter().map(|l| groups.remove(&l).unwrap()).collect();
        Cover::from_clusters(labels.len(), clusters)
    }

    /// Reads a SNAP-style community file: one community per line, member
    /// labels separated by whitespace. Unknown labels are skipped and
    /// counted; blank and `#` lines are ignored.
    pub fn load(path: impl AsRef<Path>, g: &Graph) -> Result<CoverLoad> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.into(),
            source: e,
        })?;
        let mut unknown_labels = 0usize;
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut members = Vec::new();
            for token in line.split_whitespace() {
                match g.id_of(token) {
                    Some(v) => members.push(v),
                    None => unknown_labels += 1,
                }
            }
            if !members.is_empty() {
                clusters.push(members);
            }
        }
        if clusters.is_empty() {
            return Err(Error::EmptyCover { path: path.into() });
        }
        let cover = Cover::from_clusters(g.n(), clusters)?;
        let completed_singletons = cover.synthetic.iter().filter(|&&s| s).count();
        Ok(CoverLoad {
            cover,
            unknown_labels,
            completed_singletons,
        })
    }

    /// Writes one community per line, members as graph labels separated by
    /// tabs. Round-trips through [`Cover::load`] as a set of sets.
    pub fn write(&self, g: &Graph, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = String::new();
        for cluster in &self.clusters {
            let line: Vec<&str> = cluster.iter().map(|&v| g.label(v)).collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        fs::File::create(path)
            .and_then(|mut f| f.write_all(out.as_bytes()))
            .map_err(|e| Error::Io {
                path: path.into(),
                source: e,
            })
    }

    /// Number of nodes of the host graph.
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of clusters.
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Members of cluster `c`, sorted ascending.
    pub fn cluster(&self, c: usize) -> &[usize] {
        &self.clusters[c]
    }

    pub fn clusters(&self) -> impl Iterator<Item = &[usize]> {
        self.clusters.iter().map(Vec::as_slice)
    }

    /// Indices of the clusters containing `v`, sorted ascending.
    pub fn membership(&self, v: usize) -> &[usize] {
        &self.membership[v]
    }

    pub fn contains(&self, c: usize, v: usize) -> bool {
        self.clusters[c].binary_search(&v).is_ok()
    }

    pub fn overlapping(&self) -> bool {
        self.overlapping
    }

    /// Whether cluster `c` was added by singleton completion rather than
    /// named by the source.
    pub fn is_synthetic(&self, c: usize) -> bool {
        self.synthetic[c]
    }

    /// Exact per-cluster counts; the diameter comes from the double-BFS
    /// estimate.
    pub fn cluster_view(&self, g: &Graph, c: usize) -> ClusterView {
        let (size, internal_edges, cut, volume) = self.cluster_counts(g, c);
        ClusterView {
            size,
            internal_edges,
            cut,
            volume,
            diameter: double_bfs_diameter(g, &self.clusters[c]),
        }
    }

    /// (size, internal edges, cut, volume) without the diameter BFS.
    pub(crate) fn cluster_counts(&self, g: &Graph, c: usize) -> (usize, usize, usize, usize) {
        let members = &self.clusters[c];
        let mut internal_x2 = 0usize;
        let mut volume = 0usize;
        for &v in members {
            volume += g.degree(v);
            internal_x2 += sorted_intersection_count(g.neighbors(v), members);
        }
        let internal = internal_x2 / 2;
        (members.len(), internal, volume - internal_x2, volume)
    }

    /// Clusters whose induced subgraph is disconnected; the pipeline
    /// surfaces this count as a warning.
    pub fn disconnected_cluster_count(&self, g: &Graph) -> usize {
        (0..self.len())
            .filter(|&c| !induced_connected(g, &self.clusters[c]))
            .count()
    }

    /// Set-of-sets equality, ignoring cluster order and synthetic flags.
    pub fn same_clustering(&self, other: &Cover) -> bool {
        if self.n != other.n || self.clusters.len() != other.clusters.len() {
            return false;
        }
        let mut a = self.clusters.clone();
        let mut b = other.clusters.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// Size of the intersection of a sorted neighbor list with a sorted member
/// list.
pub(crate) fn sorted_intersection_count(a: &[usize], b: &[usize]) -> usize {
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}
