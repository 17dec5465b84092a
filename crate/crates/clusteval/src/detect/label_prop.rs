//! Asynchronous label propagation. Every node starts with its own label;
//! sweeps visit nodes in a seeded-random order and adopt the label held by
//! the majority of neighbors, breaking ties uniformly at random. The run
//! stops once a sweep changes nothing or the sweep cap is hit.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn label_propagation(g: &Graph, seed: u64, max_sweeps: usize) -> Result<Cover> {
    if max_sweeps < 1 {
        return Err(Error::InvalidParameter(
            "label propagation needs at least one sweep".into(),
        ));
    }
    let n = g.n();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..max_sweeps {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            if g.degree(v) == 0 {
                continue;
            }
            // BTreeMap keeps the winner scan deterministic.
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for &u in g.neighbors(v) {
                *counts.entry(labels[u]).or_insert(0) += 1;
            }
            let best = *counts.values().max().unwrap();
            let winners: Vec<usize> = counts
                .iter()
                .filter(|&(_, &c)| c == best)
                .map(|(&l, _)| l)
                .collect();
            if winners.contains(&labels[v]) {
                continue; // already holds a majority label
            }
            labels[v] = *winners.choose(&mut rng).unwrap();
            changed = true;
        }
        if !changed {
            break;
        }
    }
    Cover::from_partition_labels(&labels)
}
