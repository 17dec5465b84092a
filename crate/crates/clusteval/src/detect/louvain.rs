//! Louvain modularity optimization: local node moves in a seeded-random
//! order, accepting the best positive gain, followed by graph aggregation;
//! the two phases repeat until a level makes no move. The node order is
//! shuffled once per level from the seed, candidate communities are
//! scanned in sorted order, so the whole run is deterministic.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Weighted multigraph for the aggregation levels. `m2` is the total
/// weight counted from both endpoints (self-loops twice).
struct LevelGraph {
    adj: Vec<Vec<(usize, f64)>>,
    self_weight: Vec<f64>,
    m2: f64,
}

impl LevelGraph {
    fn from_graph(g: &Graph) -> LevelGraph {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().map(|&u| (u, 1.0)).collect())
            .collect();
        LevelGraph {
            adj,
            self_weight: vec![0.0; g.n()],
            m2: 2.0 * g.m() as f64,
        }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn weighted_degree(&self, v: usize) -> f64 {
        self.adj[v].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_weight[v]
    }
}

/// One level of local moves. Returns the community of each node (compacted
/// to 0..k in order of smallest member) and whether anything moved.
fn local_phase(lg: &LevelGraph, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
    let n = lg.n();
    let mut community: Vec<usize> = (0..n).collect();
    let degree: Vec<f64> = (0..n).map(|v| lg.weighted_degree(v)).collect();
    let mut sigma_tot: Vec<f64> = degree.clone();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut any_move = false;
    // Each accepted move strictly raises modularity, so this converges;
    // the cap only guards against floating-point move cycles.
    for _pass in 0..1000 {
        let mut moved_in_pass = false;
        for &v in &order {
            let old = community[v];

            // Weight from v to each neighbor community.
            let mut to_comm: BTreeMap<usize, f64> = BTreeMap::new();
            to_comm.insert(old, 0.0);
            for &(u, w) in &lg.adj[v] {
                if u != v {
                    *to_comm.entry(community[u]).or_insert(0.0) += w;
                }
            }

            sigma_tot[old] -= degree[v];
            let mut best_comm = old;
            let mut best_gain = to_comm[&old] - sigma_tot[old] * degree[v] / lg.m2;
            for (&c, &w) in &to_comm {
                if c == old {
                    continue;
                }
                let gain = w - sigma_tot[c] * degree[v] / lg.m2;
                if gain > best_gain {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            sigma_tot[best_comm] += degree[v];
            if best_comm != old {
                community[v] = best_comm;
                moved_in_pass = true;
                any_move = true;
            }
        }
        if !moved_in_pass {
            break;
        }
    }

    // Compact community ids.
    let mut ids: Vec<usize> = community.clone();
    ids.sort_unstable();
    ids.dedup();
    let remap: BTreeMap<usize, usize> = ids.into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    for c in &mut community {
        *c = remap[c];
    }
    (community, any_move)
}

/// Collapses communities into super-nodes, keeping total weight.
fn aggregate(lg: &LevelGraph, community: &[usize], k: usize) -> LevelGraph {
    let mut self_weight = vec![0.0; k];
    let mut cross: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for v in 0..lg.n() {
        let cv = community[v];
        self_weight[cv] += lg.self_weight[v];
        for &(u, w) in &lg.adj[v] {
            if u < v {
                continue; // each undirected edge once
            }
            let cu = community[u];
            if cu == cv {
                self_weight[cv] += w;
            } else {
                let key = (cv.min(cu), cv.max(cu));
                *cross.entry(key).or_insert(0.0) += w;
            }
        }
    }
    let mut adj = vec![Vec::new(); k];
    for (&(a, b), &w) in &cross {
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    for list in &mut adj {
        list.sort_by_key(|a| a.0);
    }
    LevelGraph {
        adj,
        self_weight,
        m2: lg.m2,
    }
}

/// Modularity of a community assignment on a level graph.
fn level_modularity(lg: &LevelGraph, community: &[usize], k: usize) -> f64 {
    let mut internal = vec![0.0; k]; // twice the internal weight
    let mut sigma_tot = vec![0.0; k];
    for v in 0..lg.n() {
        let cv = community[v];
        sigma_tot[cv] += lg.weighted_degree(v);
        internal[cv] += 2.0 * lg.self_weight[v];
        for &(u, w) in &lg.adj[v] {
            if u != v && community[u] == cv {
                internal[cv] += w;
            }
        }
    }
    (0..k)
        .map(|c| internal[c] / lg.m2 - (sigma_tot[c] / lg.m2) * (sigma_tot[c] / lg.m2))
        .sum()
}

pub fn louvain(g: &Graph, seed: u64) -> Result<Cover> {
    Ok(louvain_with_modularity(g, seed)?.0)
}

/// Louvain plus the modularity the internal bookkeeping arrives at;
/// exposed for consistency checks against the quality module.
pub(crate) fn louvain_with_modularity(g: &Graph, seed: u64) -> Result<(Cover, f64)> {
    if g.m() == 0 {
        return Err(Error::UndefinedInput(
            "modularity optimization needs at least one edge".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lg = LevelGraph::from_graph(g);

    // node -> community of the current level, composed level by level.
    let mut assignment: Vec<usize> = (0..g.n()).collect();
    let q = loop {
        let (community, moved) = local_phase(&lg, &mut rng);
        let k = community.iter().max().map_or(0, |&c| c + 1);
        let q_level = level_modularity(&lg, &community, k);
        if !moved {
            break q_level;
        }
        for slot in assignment.iter_mut() {
            *slot = community[*slot];
        }
        if k == lg.n() {
            break q_level; // nothing was merged
        }
        lg = aggregate(&lg, &community, k);
    };

    let cover = Cover::from_partition_labels(&assignment)?;
    Ok((cover, q))
}
