//! k-core communities: prune nodes of degree below k until the maximal
//! k-core remains, then take each connected component of the core as a
//! community. Nodes outside the core end up as singletons through cover
//! normalization.

use std::collections::VecDeque;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn k_core_communities(g: &Graph, k: usize) -> Result<Cover> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k_core order must be at least 2, got {k}"
        )));
    }
    let core = k_core_members(g, k);

    // Components of the core-induced subgraph.
    let mut in_core = vec![false; g.n()];
    for &v in &core {
        in_core[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut clusters = Vec::new();
    for &root in &core {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if in_core[u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        clusters.push(comp);
    }
    Cover::from_clusters(g.n(), clusters)
}

/// Nodes of the maximal k-core, ascending.
pub(crate) fn k_core_members(g: &Graph, k: usize) -> Vec<usize> {
    let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut queue: VecDeque<usize> = (0..g.n()).filter(|&v| degree[v] < k).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                degree[u] -= 1;
                if degree[u] < k {
                    queue.push_back(u);
                }
            }
        }
    }
    (0..g.n()).filter(|&v| alive[v]).collect()
}
