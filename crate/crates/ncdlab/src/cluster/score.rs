//! The clustering-error measure and its summary statistics.

use std::collections::BTreeMap;

use super::tree::Dendrogram;
use super::{ClusterAssignment, ClusterError, Result, MAX_CLUSTER};
use crate::textops::Level;

/// Score of one dendrogram against a reference assignment.
#[derive(Clone, Debug)]
pub struct ClusteringReport {
    /// (doc a, doc b, leaf distance) for every intra-cluster pair.
    pub pair_distances: Vec<(String, String, usize)>,
    pub achieved_sum: u64,
    pub perfect_sum: u64,
    pub error: u64,
}

/// Minimal intra-cluster pairwise leaf-distance sum over all dendrograms,
/// assuming each cluster occupies a connected subtree with one outward
/// edge. Exhaustive over subtree shapes (memoized), capped at
/// [`MAX_CLUSTER`] leaves per cluster.
pub fn perfect_sum(cluster_sizes: &[usize]) -> Result<u64> {
    let mut total = 0u64;
    let table = pareto_table(MAX_CLUSTER);
    for &k in cluster_sizes {
        if k == 0 {
            return Err(ClusterError::BadAssignment("empty cluster".into()));
        }
        if k > MAX_CLUSTER {
            return Err(ClusterError::ClusterTooLarge(k));
        }
        total += table[k].iter().map(|&(p, _)| p).min().expect("non-empty set");
    }
    Ok(total)
}

/// Pareto-optimal (pairsum, depthsum) states for rooted full binary shapes
/// with k leaves, k = 0..=cap. Between two leaves with lowest common
/// ancestor `a`, the leaf distance is depth(x) + depth(y) − 2·depth(a) − 1,
/// so combining two subtrees under a new root adds
/// |L|·Σdepth(R) + |R|·Σdepth(L) + |L||R| (after the +1 depth shift,
/// minus one per cross pair).
fn pareto_table(cap: usize) -> Vec<Vec<(u64, u64)>> {
    let mut table: Vec<Vec<(u64, u64)>> = vec![Vec::new(); cap + 1];
    if cap >= 1 {
        table[1] = vec![(0, 0)];
    }
    for k in 2..=cap {
        let mut states = Vec::new();
        for i in 1..=k / 2 {
            let j = k - i;
            for li in 0..table[i].len() {
                let (pl, dl) = table[i][li];
                for rj in 0..table[j].len() {
                    let (pr, dr) = table[j][rj];
                    let dl1 = dl + i as u64; // depth shift under the new root
                    let dr1 = dr + j as u64;
                    let cross = j as u64 * dl1 + i as u64 * dr1 - (i * j) as u64;
                    states.push((pl + pr + cross, dl1 + dr1));
                }
            }
        }
        table[k] = pareto_min(states);
    }
    table
}

fn pareto_min(mut states: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    states.sort_unstable();
    let mut out: Vec<(u64, u64)> = Vec::new();
    let mut best_d = u64::MAX;
    for (p, d) in states {
        if d < best_d {
            out.push((p, d));
            best_d = d;
        }
    }
    out
}

/// Achieved-vs-perfect intra-cluster pairwise distance score.
pub fn clustering_error(tree: &Dendrogram, assignment: &ClusterAssignment) -> Result<ClusteringReport> {
    for leaf in tree.labels() {
        if assignment.cluster_of(leaf).is_none() {
            return Err(ClusterError::MissingLabel(leaf.clone()));
        }
    }
    let mut pair_distances = Vec::new();
    let mut achieved = 0u64;
    let mut sizes = Vec::new();
    for (_, members) in assignment.clusters() {
        let present: Vec<&str> =
            members.iter().copied().filter(|d| tree.labels().iter().any(|l| l == d)).collect();
        if present.is_empty() {
            continue;
        }
        sizes.push(present.len());
        for (ai, a) in present.iter().enumerate() {
            for b in present.iter().skip(ai + 1) {
                let d = tree.leaf_distance(a, b)?;
                achieved += d as u64;
                pair_distances.push((a.to_string(), b.to_string(), d));
            }
        }
    }
    let perfect = perfect_sum(&sizes)?;
    Ok(ClusteringReport {
        pair_distances,
        achieved_sum: achieved,
        perfect_sum: perfect,
        error: achieved.saturating_sub(perfect),
    })
}

/// Mean clustering error over exactly the ten distortion levels 0.1..1.0;
/// the undistorted level 0.0 is excluded by definition.
pub fn average_ce(errors: &BTreeMap<Level, f64>) -> Result<f64> {
    let mut sum = 0.0;
    for tenths in 1..=10u8 {
        let level = Level::from_tenths(tenths).expect("in range");
        let e = errors
            .get(&level)
            .ok_or_else(|| ClusterError::MissingLevel(format!("{level}")))?;
        sum += e;
    }
    Ok(sum / 10.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorSummary {
    /// Relative error Δe_k = e_k − e_0.
    pub delta: f64,
    /// Normalized average error E_k = e_k / e_0; None when e_0 = 0.
    pub normalized: Option<f64>,
}

pub fn error_summaries(e0: f64, ek: f64) -> ErrorSummary {
    ErrorSummary {
        delta: ek - e0,
        normalized: (e0 != 0.0).then(|| ek / e0),
    }
}
