//! Clauset-Newman-Moore greedy modularity agglomeration. Starting from
//! singletons, repeatedly merge the community pair with the largest
//! modularity gain while that gain is positive. Communities are keyed by
//! their smallest member id and ties fall to the lexicographically
//! smallest key pair, so the run is fully deterministic.

use std::collections::{BTreeMap, HashMap};

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn cnm_greedy(g: &Graph) -> Result<Cover> {
    if g.m() == 0 {
        return Err(Error::UndefinedInput(
            "greedy modularity needs at least one edge".into(),
        ));
    }
    let m = g.m() as f64;

    // Community state, keyed by smallest member id.
    let mut members: HashMap<usize, Vec<usize>> = (0..g.n()).map(|v| (v, vec![v])).collect();
    let mut volume: HashMap<usize, usize> = (0..g.n()).map(|v| (v, g.degree(v))).collect();
    let mut owner: Vec<usize> = (0..g.n()).collect();

    // Edge weight between community pairs, key (a, b) with a < b.
    let mut between: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for u in 0..g.n() {
        for &v in g.neighbors(u) {
            if v > u {
                *between.entry((u, v)).or_insert(0) += 1;
            }
        }
    }

    loop {
        // Gain of merging (a, b): e_ab/m - vol_a*vol_b/(2 m^2).
        let mut best: Option<((usize, usize), f64)> = None;
        for (&(a, b), &edges) in &between {
            let gain = edges as f64 / m
                - (volume[&a] as f64 * volume[&b] as f64) / (2.0 * m * m);
            if best.is_none_or(|(_, g0)| gain > g0) {
                best = Some(((a, b), gain));
            }
        }
        let Some(((a, b), gain)) = best else { break };
        if gain <= 0.0 {
            break;
        }

        // Merge b into a; a stays the smaller key.
        let moved = members.remove(&b).unwrap();
        for &v in &moved {
            owner[v] = a;
        }
        members.get_mut(&a).unwrap().extend(moved);
        let vol_b = volume.remove(&b).unwrap();
        *volume.get_mut(&a).unwrap() += vol_b;

        let stale: Vec<((usize, usize), usize)> = between
            .iter()
            .filter(|(&(x, y), _)| x == a || y == a || x == b || y == b)
            .map(|(&k, &w)| (k, w))
            .collect();
        for (key, _) in &stale {
            between.remove(key);
        }
        for ((x, y), w) in stale {
            let other = if x == a || x == b { y } else { x };
            if other == a || other == b {
                continue; // the merged pair itself
            }
            let key = if other < a { (other, a) } else { (a, other) };
            *between.entry(key).or_insert(0) += w;
        }
    }

    let mut clusters: Vec<Vec<usize>> = members.into_values().collect();
    clusters.sort();
    Cover::from_clusters(g.n(), clusters)
}
