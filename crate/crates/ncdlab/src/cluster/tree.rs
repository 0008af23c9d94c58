//! The unrooted binary dendrogram and its traversals.

use std::collections::VecDeque;
use std::fmt::Write as _;

use super::{ClusterError, Result};

/// Unrooted binary tree: nodes `0..n_leaves` are leaves (index = position
/// in `labels`), the rest are unlabeled internal nodes of degree three.
#[derive(Clone, Debug)]
pub struct Dendrogram {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl Dendrogram {
    /// Builds and validates a tree from leaf labels and undirected edges
    /// over node ids (leaves first, then internals).
    pub fn from_edges(labels: Vec<String>, n_nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n_nodes];
        for &(a, b) in edges {
            if a >= n_nodes || b >= n_nodes {
                return Err(ClusterError::InvalidTree(format!("edge ({a},{b}) out of range")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let tree = Self { labels, adj };
        tree.validate()?;
        Ok(tree)
    }

    pub(super) fn from_parts_unchecked(labels: Vec<String>, adj: Vec<Vec<usize>>) -> Self {
        Self { labels, adj }
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    pub fn internal_count(&self) -> usize {
        self.adj.len() - self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        self.labels.as_slice()
    }

    pub(super) fn adj(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if n < 3 {
            return Err(ClusterError::TooFewLeaves { what: "a dendrogram", need: 3, got: n });
        }
        if self.adj.len() != 2 * n - 2 {
            return Err(ClusterError::InvalidTree(format!(
                "{n} leaves need {} internal nodes, found {}",
                n - 2,
                self.adj.len() as isize - n as isize
            )));
        }
        for (id, nb) in self.adj.iter().enumerate() {
            let want = if id < n { 1 } else { 3 };
            if nb.len() != want {
                return Err(ClusterError::InvalidTree(format!(
                    "node {id} has degree {}, expected {want}",
                    nb.len()
                )));
            }
        }
        // Connected + exactly n_nodes-1 edges implies acyclic.
        let edges: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if edges != self.adj.len() - 1 {
            return Err(ClusterError::InvalidTree(format!("{edges} edges in a tree")));
        }
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 0;
        while let Some(u) = queue.pop_front() {
            count += 1;
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if count != self.adj.len() {
            return Err(ClusterError::InvalidTree("tree is disconnected".into()));
        }
        Ok(())
    }

    fn leaf_id(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ClusterError::UnknownLeaf(label.into()))
    }

    /// Number of internal nodes on the unique path between two leaves; two
    /// leaves hanging off one internal node are at distance 1.
    pub fn leaf_distance(&self, a: &str, b: &str) -> Result<usize> {
        let (a, b) = (self.leaf_id(a)?, self.leaf_id(b)?);
        if a == b {
            return Err(ClusterError::InvalidTree(format!("leaf_distance of '{}' to itself", self.labels[a])));
        }
        Ok(self.leaf_distances_from(a)[b])
    }

    /// Internal-node path counts from leaf `a` to every leaf, by BFS.
    /// Entry `a` itself is 0.
    pub(super) fn leaf_distances_from(&self, a: usize) -> Vec<usize> {
        let n = self.labels.len();
        // hops[u] = edges from a to u; internal nodes on a leaf-leaf path =
        // edges - 1.
        let mut hops = vec![usize::MAX; self.adj.len()];
        hops[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if hops[v] == usize::MAX {
                    hops[v] = hops[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (0..n).map(|b| if b == a { 0 } else { hops[b] - 1 }).collect()
    }

    /// Newick serialization with unit branch lengths, rooted for output at
    /// the internal neighbour of leaf 0.
    pub fn newick(&self) -> String {
        let root = self.adj[0][0];
        let mut out = String::new();
        self.newick_node(root, usize::MAX, &mut out);
        out.push(';');
        out
    }

    fn newick_node(&self, u: usize, parent: usize, out: &mut String) {
        if u < self.labels.len() {
            write!(out, "{}:1", self.labels[u]).unwrap();
            return;
        }
        out.push('(');
        let mut first = true;
        for &v in &self.adj[u] {
            if v == parent {
                continue;
            }
            if !first {
                out.push(',');
            }
            first = false;
            self.newick_node(v, u, out);
        }
        out.push_str("):1");
        if parent == usize::MAX {
            out.truncate(out.len() - 2); // the root carries no branch
        }
    }

    /// Graphviz DOT rendering: labeled leaf boxes, point-shaped internals.
    pub fn dot(&self) -> String {
        let mut out = String::from("graph dendrogram {\n  node [shape=box];\n");
        for (i, label) in self.labels.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
        }
        for i in self.labels.len()..self.adj.len() {
            writeln!(out, "  n{i} [shape=point];").unwrap();
        }
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    writeln!(out, "  n{u} -- n{v};").unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
