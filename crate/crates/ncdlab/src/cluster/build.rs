//! Dendrogram builders: deterministic neighbour joining and a seeded
//! quartet hill climber.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tree::Dendrogram;
use super::{ClusterError, Result};
use crate::ncd::NcdMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMethod {
    Nj,
    Quartet,
}

impl std::str::FromStr for BuildMethod {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nj" => Ok(Self::Nj),
            "quartet" => Ok(Self::Quartet),
            other => Err(ClusterError::BadMatrix(format!("unknown build method '{other}'"))),
        }
    }
}

/// Proposals the quartet climber may make without improvement before
/// stopping, per leaf.
const STALL_BUDGET: usize = 2000;

pub fn build_dendrogram(matrix: &NcdMatrix, method: BuildMethod, seed: u64) -> Result<Dendrogram> {
    let n = matrix.labels.len();
    for i in 0..n {
        for j in 0..n {
            let v = matrix.get(i, j);
            if !v.is_finite() || !(0.0..crate::ncd::HARD_BOUND).contains(&v) {
                return Err(ClusterError::BadMatrix(format!(
                    "cell ({i},{j}) = {v} outside [0, {})",
                    crate::ncd::HARD_BOUND
                )));
            }
        }
    }
    match method {
        BuildMethod::Nj => {
            if n < 3 {
                return Err(ClusterError::TooFewLeaves { what: "neighbour joining", need: 3, got: n });
            }
            Ok(neighbor_joining(matrix))
        }
        BuildMethod::Quartet => {
            if n < 4 {
                return Err(ClusterError::TooFewLeaves { what: "the quartet method", need: 4, got: n });
            }
            Ok(quartet_climb(matrix, seed))
        }
    }
}

fn neighbor_joining(matrix: &NcdMatrix) -> Dendrogram {
    let n = matrix.labels.len();
    let labels = matrix.labels.to_vec();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let add_edge = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };

    // Active nodes and their pairwise working distances.
    let mut active: Vec<usize> = (0..n).collect();
    let mut dist: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| matrix.get(i, j)).collect())
        .collect();

    while active.len() > 3 {
        let r = active.len();
        let row_sums: Vec<f64> = (0..r).map(|i| (0..r).map(|j| dist[i][j]).sum()).collect();
        // Minimal Q with (value, i, j) tie-break for determinism.
        let mut best = (f64::INFINITY, 0usize, 1usize);
        for i in 0..r {
            for j in i + 1..r {
                let q = (r as f64 - 2.0) * dist[i][j] - row_sums[i] - row_sums[j];
                if q < best.0 {
                    best = (q, i, j);
                }
            }
        }
        let (_, i, j) = best;
        let u = adj.len();
        adj.push(Vec::new());
        add_edge(&mut adj, active[i], u);
        add_edge(&mut adj, active[j], u);

        let mut new_dist = vec![0.0; r - 1];
        let mut new_active = Vec::with_capacity(r - 1);
        let mut kept = Vec::with_capacity(r - 2);
        for k in 0..r {
            if k != i && k != j {
                kept.push(k);
            }
        }
        for (slot, &k) in kept.iter().enumerate() {
            new_dist[slot] = 0.5 * (dist[i][k] + dist[j][k] - dist[i][j]);
            new_active.push(active[k]);
        }
        new_active.push(u);
        let mut next: Vec<Vec<f64>> = vec![vec![0.0; r - 1]; r - 1];
        for (a, &ka) in kept.iter().enumerate() {
            for (b, &kb) in kept.iter().enumerate() {
                next[a][b] = dist[ka][kb];
            }
        }
        for (a, &d) in new_dist.iter().enumerate().take(r - 2) {
            next[a][r - 2] = d;
            next[r - 2][a] = d;
        }
        dist = next;
        active = new_active;
    }

    // Join the last three nodes on one internal node.
    let u = adj.len();
    adj.push(Vec::new());
    for &k in &active {
        add_edge(&mut adj, k, u);
    }
    Dendrogram::from_parts_unchecked(labels, adj)
}

/// Benefit score of a tree: over all leaf quartets, (Σ max-cost − Σ
/// realized-cost) / (Σ max-cost − Σ min-cost), in [0, 1], higher is better.
fn quartet_score(tree: &Dendrogram, matrix: &NcdMatrix) -> f64 {
    let n = tree.leaf_count();
    // Map tree leaf index -> matrix index (labels may be permuted).
    let index: Vec<usize> = tree
        .labels()
        .iter()
        .map(|l| matrix.labels.iter().position(|m| m == l).expect("label in matrix"))
        .collect();
    let topo: Vec<Vec<usize>> = (0..n).map(|a| tree.leaf_distances_from(a)).collect();
    let d = |a: usize, b: usize| matrix.get(index[a], index[b]);

    let (mut max_sum, mut min_sum, mut tree_sum) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let costs = [d(i, j) + d(k, l), d(i, k) + d(j, l), d(i, l) + d(j, k)];
                    let paths = [
                        topo[i][j] + topo[k][l],
                        topo[i][k] + topo[j][l],
                        topo[i][l] + topo[j][k],
                    ];
                    let realized = (0..3).min_by_key(|&t| paths[t]).unwrap();
                    max_sum += costs.iter().cloned().fold(f64::MIN, f64::max);
                    min_sum += costs.iter().cloned().fold(f64::MAX, f64::min);
                    tree_sum += costs[realized];
                }
            }
        }
    }
    if max_sum - min_sum < f64::EPSILON {
        return 1.0;
    }
    (max_sum - tree_sum) / (max_sum - min_sum)
}

/// Random binary tree over the matrix labels: leaves inserted in seeded
/// random order onto seeded random edges.
fn random_tree(matrix: &NcdMatrix, rng: &mut ChaCha8Rng) -> Dendrogram {
    let labels = matrix.labels.to_vec();
    let n = labels.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n - 2];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let first_internal = n;
    for (slot, &leaf) in order.iter().take(3).enumerate() {
        adj[leaf].push(first_internal);
        adj[first_internal].push(leaf);
        edges.push((leaf, first_internal));
        let _ = slot;
    }
    let mut next_internal = first_internal + 1;
    for &leaf in order.iter().skip(3) {
        let &(a, b) = edges.choose(rng).expect("non-empty edge list");
        let u = next_internal;
        next_internal += 1;
        adj[a].retain(|&x| x != b);
        adj[b].retain(|&x| x != a);
        for &(p, q) in &[(a, u), (b, u), (leaf, u)] {
            adj[p].push(q);
            adj[q].push(p);
        }
        edges.retain(|&e| e != (a, b) && e != (b, a));
        edges.extend([(a, u), (b, u), (leaf, u)]);
    }
    Dendrogram::from_parts_unchecked(labels, adj)
}

/// One subtree-prune-and-regraft move; returns None when the pick is
/// degenerate (regraft edge recreates the original tree is still fine).
fn spr_move(tree: &Dendrogram, rng: &mut ChaCha8Rng) -> Option<Dendrogram> {
    let n = tree.leaf_count();
    let mut adj = tree.adj().to_vec();
    // Directed prune edge: subtree root s, internal parent p.
    let internals: Vec<usize> = (n..adj.len()).collect();
    let &p = internals.as_slice().choose(rng)?;
    let s = *adj[p].as_slice().choose(rng)?;

    adj[p].retain(|&x| x != s);
    adj[s].retain(|&x| x != p);
    let (x, y) = (adj[p][0], adj[p][1]);
    adj[x].retain(|&v| v != p);
    adj[y].retain(|&v| v != p);
    adj[x].push(y);
    adj[y].push(x);
    adj[p].clear();

    // Edges of the component not containing s.
    let mut in_sub = vec![false; adj.len()];
    let mut stack = vec![s];
    in_sub[s] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !in_sub[v] {
                in_sub[v] = true;
                stack.push(v);
            }
        }
    }
    let mut host_edges = Vec::new();
    for (u, nb) in adj.iter().enumerate() {
        if u == p || in_sub[u] {
            continue;
        }
        for &v in nb {
            if u < v && !in_sub[v] {
                host_edges.push((u, v));
            }
        }
    }
    let &(a, b) = host_edges.as_slice().choose(rng)?;
    adj[a].retain(|&v| v != b);
    adj[b].retain(|&v| v != a);
    for &(u, v) in &[(a, p), (b, p), (s, p)] {
        adj[u].push(v);
        adj[v].push(u);
    }
    Some(Dendrogram::from_parts_unchecked(tree.labels().to_vec(), adj))
}

fn leaf_swap(tree: &Dendrogram, rng: &mut ChaCha8Rng) -> Dendrogram {
    let n = tree.leaf_count();
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    let mut labels = tree.labels().to_vec();
    labels.swap(a, b);
    Dendrogram::from_parts_unchecked(labels, tree.adj().to_vec())
}

fn quartet_climb(matrix: &NcdMatrix, seed: u64) -> Dendrogram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = matrix.labels.len();
    let mut tree = random_tree(matrix, &mut rng);
    let mut score = quartet_score(&tree, matrix);
    let budget = STALL_BUDGET * n;
    let mut stalled = 0;
    while stalled < budget && score < 1.0 {
        let candidate = if rng.gen_bool(0.5) {
            leaf_swap(&tree, &mut rng)
        } else {
            match spr_move(&tree, &mut rng) {
                Some(t) => t,
                None => continue,
            }
        };
        let cand_score = quartet_score(&candidate, matrix);
        if cand_score > score {
            tree = candidate;
            score = cand_score;
            stalled = 0;
        } else {
            stalled += 1;
        }
    }
    tree
}
