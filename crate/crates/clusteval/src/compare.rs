//! Extrinsic comparison of two covers: overlapping F-BCubed and the
//! overlapping normalized mutual information of Lancichinetti, Fortunato
//! and Kertesz. Both return values in [0, 1], higher meaning closer.

use std::collections::BTreeSet;

use crate::cover::{sorted_intersection_count, Cover};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparisonMetric {
    Fb3,
    Onmi,
}

impl ComparisonMetric {
    pub const ALL: [ComparisonMetric; 2] = [ComparisonMetric::Fb3, ComparisonMetric::Onmi];

    pub fn name(self) -> &'static str {
        match self {
            ComparisonMetric::Fb3 => "fb3",
            ComparisonMetric::Onmi => "onmi",
        }
    }

    pub fn parse(s: &str) -> Option<ComparisonMetric> {
        ComparisonMetric::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Result of one comparison. Precision and recall are populated for fb3
/// only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonResult {
    pub metric: ComparisonMetric,
    pub value: f64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

fn check_node_sets(c: &Cover, l: &Cover) -> Result<()> {
    if c.node_count() != l.node_count() {
        return Err(Error::NodeSetMismatch {
            left: c.node_count(),
            right: l.node_count(),
        });
    }
    Ok(())
}

/// Evaluates one comparison metric.
pub fn compare(c: &Cover, l: &Cover, metric: ComparisonMetric) -> Result<ComparisonResult> {
    match metric {
        ComparisonMetric::Fb3 => fb3(c, l),
        ComparisonMetric::Onmi => onmi(c, l),
    }
}

// ---------------------------------------------------------------------------
// F-BCubed
// ---------------------------------------------------------------------------

/// Overlapping BCubed precision of `c` against `l`: for each element e,
/// average over the elements e' sharing at least one cluster with e in `c`
/// (including e itself) of min(shared_c, shared_l) / shared_c, then average
/// over elements.
fn bcubed_precision(c: &Cover, l: &Cover) -> f64 {
    let n = c.node_count();
    let mut shared = vec![0usize; n];
    let mut associates: Vec<usize> = Vec::new();
    let mut outer = 0.0;
    for e in 0..n {
        associates.clear();
        for &ci in c.membership(e) {
            for &other in c.cluster(ci) {
                if shared[other] == 0 {
                    associates.push(other);
                }
                shared[other] += 1;
            }
        }
        let mut inner = 0.0;
        for &other in &associates {
            let in_c = shared[other];
            let in_l = sorted_intersection_count(l.membership(e), l.membership(other));
            inner += in_l.min(in_c) as f64 / in_c as f64;
        }
        // e is always its own associate, so the list is never empty.
        outer += inner / associates.len() as f64;
        for &other in &associates {
            shared[other] = 0;
        }
    }
    outer / n as f64
}

/// Overlapping F-BCubed: harmonic mean of BCubed precision and recall,
/// where recall(C, L) = precision(L, C).
pub fn fb3(c: &Cover, l: &Cover) -> Result<ComparisonResult> {
    check_node_sets(c, l)?;
    let precision = bcubed_precision(c, l);
    let recall = bcubed_precision(l, c);
    // Both are strictly positive: the self-pair contributes 1 to every
    // inner average.
    let value = 2.0 * precision * recall / (precision + recall);
    Ok(ComparisonResult {
        metric: ComparisonMetric::Fb3,
        value,
        precision: Some(precision),
        recall: Some(recall),
    })
}

// ---------------------------------------------------------------------------
// Overlapping NMI
// ---------------------------------------------------------------------------

fn h(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Entropy of the Bernoulli membership variable of a cluster of `size`
/// nodes out of `n`.
fn cluster_entropy(size: usize, n: usize) -> f64 {
    let p = size as f64 / n as f64;
    h(p) + h(1.0 - p)
}

/// Average over the clusters X_k of `x` of the normalized conditional
/// entropy H(X_k | Y)/H(X_k), where Y ranges over the clusters of `y` and
/// a candidate Y_l counts only if h(both) + h(neither) >= h(only-X) +
/// h(only-Y); without any accepted candidate the term stays at H(X_k).
///
/// Candidate pairs are pruned to those that intersect or involve a cluster
/// larger than half the node set; no other pair can pass the condition.
fn normalized_conditional_entropy(x: &Cover, y: &Cover) -> f64 {
    let n = x.node_count();
    let nf = n as f64;

    let big_y: Vec<usize> = (0..y.len()).filter(|&l| 2 * y.cluster(l).len() > n).collect();

    let mut total = 0.0;
    for k in 0..x.len() {
        let xk = x.cluster(k);
        let hx = cluster_entropy(xk.len(), n);
        if hx == 0.0 {
            // X_k covers every node; matched perfectly by convention.
            continue;
        }

        let mut candidates: BTreeSet<usize> = BTreeSet::new();
        if 2 * xk.len() > n {
            candidates.extend(0..y.len());
        } else {
            for &v in xk {
                candidates.extend(y.membership(v).iter().copied());
            }
            candidates.extend(big_y.iter().copied());
        }

        let mut best = hx;
        for &l in &candidates {
            let yl = y.cluster(l);
            let both = sorted_intersection_count(xk, yl);
            let p11 = both as f64 / nf;
            let p10 = (xk.len() - both) as f64 / nf;
            let p01 = (yl.len() - both) as f64 / nf;
            let p00 = 1.0 - p11 - p10 - p01;
            if h(p11) + h(p00) < h(p10) + h(p01) {
                continue; // complement-like match, rejected
            }
            let joint = h(p11) + h(p10) + h(p01) + h(p00);
            let conditional = joint - cluster_entropy(yl.len(), n);
            if conditional < best {
                best = conditional;
            }
        }
        total += (best / hx).clamp(0.0, 1.0);
    }
    total / x.len() as f64
}

/// Overlapping NMI: 1 - (H(X|Y)_norm + H(Y|X)_norm) / 2.
pub fn onmi(c: &Cover, l: &Cover) -> Result<ComparisonResult> {
    check_node_sets(c, l)?;
    let hxy = normalized_conditional_entropy(c, l);
    let hyx = normalized_conditional_entropy(l, c);
    Ok(ComparisonResult {
        metric: ComparisonMetric::Onmi,
        value: 1.0 - 0.5 * (hxy + hyx),
        precision: None,
        recall: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(n: usize, clusters: &[&[usize]]) -> Cover {
        Cover::from_clusters(n, clusters.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn fb3_identity() {
        let x = cover(5, &[&[0, 1], &[2, 3, 4]]);
        let r = fb3(&x, &x).unwrap();
        assert_eq!(r.precision, Some(1.0));
        assert_eq!(r.recall, Some(1.0));
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn fb3_merged_pair_against_singletons() {
        // C = {{a,b},{c}}, L = {{a},{b},{c}}.
        let c = cover(3, &[&[0, 1], &[2]]);
        let l = cover(3, &[&[0], &[1], &[2]]);
        let r = fb3(&c, &l).unwrap();
        assert!((r.precision.unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.recall.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.value - 0.8).abs() < 1e-12);
    }

    #[test]
    fn fb3_recall_is_swapped_precision() {
        let c = cover(6, &[&[0, 1, 2], &[3, 4], &[5]]);
        let l = cover(6, &[&[0, 1], &[2, 3, 4, 5]]);
        let ab = fb3(&c, &l).unwrap();
        let ba = fb3(&l, &c).unwrap();
        assert_eq!(ab.recall, ba.precision);
        assert_eq!(ab.precision, ba.recall);
        assert_eq!(ab.value, ba.value);
    }

    #[test]
    fn fb3_rejects_mismatched_node_sets() {
        let c = cover(3, &[&[0, 1, 2]]);
        let l = cover(4, &[&[0, 1, 2, 3]]);
        assert!(matches!(fb3(&c, &l), Err(Error::NodeSetMismatch { .. })));
    }

    #[test]
    fn onmi_identity() {
        let x = cover(6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert_eq!(onmi(&x, &x).unwrap().value, 1.0);
        let overlapping = cover(6, &[&[0, 1, 2, 3], &[3, 4, 5]]);
        assert_eq!(onmi(&overlapping, &overlapping).unwrap().value, 1.0);
    }

    #[test]
    fn onmi_partition_vs_singletons_in_open_interval() {
        let p = cover(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let s = cover(6, &[&[0], &[1], &[2], &[3], &[4], &[5]]);
        let v = onmi(&p, &s).unwrap().value;
        assert!(v > 0.0 && v < 1.0, "onmi = {v}");
    }

    #[test]
    fn onmi_symmetric_and_order_invariant() {
        let a = cover(5, &[&[0, 1], &[2, 3, 4]]);
        let b = cover(5, &[&[0, 4], &[1, 2], &[3]]);
        assert_eq!(onmi(&a, &b).unwrap().value, onmi(&b, &a).unwrap().value);

        let a_reordered = cover(5, &[&[2, 3, 4], &[0, 1]]);
        assert_eq!(
            onmi(&a, &b).unwrap().value,
            onmi(&a_reordered, &b).unwrap().value
        );

        // Relabeling nodes through the permutation 0->4, 1->3, ... changes
        // nothing either.
        let relabel = |c: &[&[usize]]| -> Vec<Vec<usize>> {
            c.iter().map(|cl| cl.iter().map(|&v| 4 - v).collect()).collect()
        };
        let a_relabeled = Cover::from_clusters(5, relabel(&[&[0, 1], &[2, 3, 4]])).unwrap();
        let b_relabeled = Cover::from_clusters(5, relabel(&[&[0, 4], &[1, 2], &[3]])).unwrap();
        assert_eq!(
            onmi(&a, &b).unwrap().value,
            onmi(&a_relabeled, &b_relabeled).unwrap().value
        );
    }

    #[test]
    fn onmi_full_set_cluster_matches_by_convention() {
        let full = cover(4, &[&[0, 1, 2, 3]]);
        let halves = cover(4, &[&[0, 1], &[2, 3]]);
        let v = onmi(&full, &halves).unwrap().value;
        assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn values_stay_in_unit_interval() {
        let a = cover(7, &[&[0, 1, 2, 3], &[2, 3, 4], &[5, 6]]);
        let b = cover(7, &[&[0, 6], &[1, 2], &[3, 4, 5]]);
        for metric in ComparisonMetric::ALL {
            let r = compare(&a, &b, metric).unwrap();
            assert!((0.0..=1.0).contains(&r.value), "{metric:?} = {}", r.value);
        }
        let f = fb3(&a, &b).unwrap();
        assert!(f.value <= f.precision.unwrap().max(f.recall.unwrap()) + 1e-12);
    }
}
