//! Dendrogram construction from NCD matrices and the clustering-error
//! metric.
//!
//! A dendrogram here is an unrooted binary tree: leaves carry document ids,
//! internal nodes are unlabeled and have degree exactly three. Trees are
//! built either by deterministic neighbour joining or by a seeded quartet
//! hill climber, and scored against a reference [`ClusterAssignment`] with
//! the pairwise leaf-distance error measure.

mod build;
mod score;
mod tree;

pub use build::{build_dendrogram, BuildMethod};
pub use score::{
    average_ce, clustering_error, error_summaries, perfect_sum, ClusteringReport, ErrorSummary,
};
pub use tree::Dendrogram;

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClusterError {
    #[error("unknown leaf '{0}'")]
    UnknownLeaf(String),
    #[error("need at least {need} leaves for {what}, got {got}")]
    TooFewLeaves { what: &'static str, need: usize, got: usize },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("bad distance matrix: {0}")]
    BadMatrix(String),
    #[error("cluster size {0} exceeds the exhaustive-enumeration cap of {MAX_CLUSTER}")]
    ClusterTooLarge(usize),
    #[error("leaf '{0}' has no cluster label")]
    MissingLabel(String),
    #[error("distortion level {0} missing from the error map")]
    MissingLevel(String),
    #[error("cluster assignment: {0}")]
    BadAssignment(String),
}

pub type Result<T> = std::result::Result<T, ClusterError>;

/// Largest cluster size `perfect_sum` will enumerate.
pub const MAX_CLUSTER: usize = 12;

/// Reference clustering: document id → cluster label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterAssignment {
    labels: BTreeMap<String, String>,
}

impl ClusterAssignment {
    pub fn new(labels: BTreeMap<String, String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(ClusterError::BadAssignment("no documents".into()));
        }
        Ok(Self { labels })
    }

    /// Loads a JSON object mapping document ids to cluster labels.
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let raw = std::fs::read_to_string(path)?;
        let labels: BTreeMap<String, String> = serde_json::from_str(&raw)?;
        Ok(Self::new(labels)?)
    }

    pub fn cluster_of(&self, doc_id: &str) -> Option<&str> {
        self.labels.get(doc_id).map(String::as_str)
    }

    /// Cluster label → member document ids, sorted.
    pub fn clusters(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut out: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (doc, label) in &self.labels {
            out.entry(label).or_default().push(doc);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}
