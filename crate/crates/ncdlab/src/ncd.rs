//! Normalized compression distance.
//!
//! NCD(x,y) = max{C(xy) − C(x), C(yx) − C(y)} / max{C(x), C(y)}, where C is
//! a backend's compressed length and xy is raw byte concatenation with no
//! separator. Both concatenation orders are computed; no symmetry shortcut
//! is taken. Values land in [0, 1+ε] with ε rarely above 0.1; anything at
//! or past 1.5 is treated as a backend fault.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::compress::Backend;

/// Entries at or above this are rejected as backend faults.
pub const HARD_BOUND: f64 = 1.5;
/// Soft expectation for off-diagonal entries; exceeding it is only logged.
pub const SOFT_BOUND: f64 = 1.1;
/// Self-distance ceiling for documents of at least 1 KB.
pub const SELF_DISTANCE_BOUND: f64 = 0.1;

#[derive(Debug, Error)]
pub enum NcdError {
    #[error("empty input: NCD degenerates as length approaches 0")]
    EmptyInput,
    #[error("document '{0}' is empty")]
    EmptyDocument(String),
    #[error("need at least 2 documents, got {0}")]
    TooFewDocuments(usize),
    #[error("backend fault: NCD({a},{b}) = {value}, outside [0, {HARD_BOUND})")]
    OutOfRange { a: String, b: String, value: f64 },
}

pub type Result<T> = std::result::Result<T, NcdError>;

/// Shared compressed-length cache keyed by (backend config, content hash).
///
/// With it, an n-document matrix compresses each document once instead of
/// n−1 times. Safe to share across worker threads.
#[derive(Default)]
pub struct LenCache {
    map: Mutex<HashMap<(String, [u8; 32]), usize>>,
}

impl LenCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get_or_compute(&self, backend: &dyn Backend, data: &[u8]) -> usize {
        let key = (backend.config_id(), Sha256::digest(data).into());
        if let Some(&len) = self.map.lock().unwrap().get(&key) {
            return len;
        }
        let len = backend.compressed_len(data);
        self.map.lock().unwrap().insert(key, len);
        len
    }
}

fn ncd_cached(backend: &dyn Backend, x: &[u8], y: &[u8], cache: &LenCache) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(NcdError::EmptyInput);
    }
    let cx = cache.get_or_compute(backend, x) as f64;
    let cy = cache.get_or_compute(backend, y) as f64;
    let mut xy = Vec::with_capacity(x.len() + y.len());
    xy.extend_from_slice(x);
    xy.extend_from_slice(y);
    let cxy = backend.compressed_len(&xy) as f64;
    xy.clear();
    xy.extend_from_slice(y);
    xy.extend_from_slice(x);
    let cyx = backend.compressed_len(&xy) as f64;
    Ok(((cxy - cx).max(cyx - cy)).max(0.0) / cx.max(cy))
}

/// NCD between two byte sequences.
pub fn ncd(backend: &dyn Backend, x: &[u8], y: &[u8]) -> Result<f64> {
    ncd_cached(backend, x, y, &LenCache::new())
}

#[derive(Clone, Debug)]
pub struct NcdMatrix {
    pub labels: Vec<String>,
    pub backend_name: String,
    values: Vec<f64>,
    /// Largest |m[i][j] − m[j][i]| seen; 0 here since both concatenation
    /// orders already enter every cell, kept as a diagnostic field.
    pub max_asymmetry: f64,
    /// Cells that exceeded the soft bound, for logging.
    pub soft_violations: Vec<(String, String, f64)>,
}

impl NcdMatrix {
    /// Assembles a matrix from row-major values, e.g. for tests or external
    /// distance data. Panics when the shape is not n×n.
    pub fn from_values(labels: Vec<String>, backend_name: String, rows: Vec<Vec<f64>>) -> Self {
        let n = labels.len();
        assert!(rows.len() == n && rows.iter().all(|r| r.len() == n), "shape mismatch");
        Self {
            labels,
            backend_name,
            values: rows.into_iter().flatten().collect(),
            max_asymmetry: 0.0,
            soft_violations: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n() + j]
    }

    /// CSV with a header row of ids; each data row is label-prefixed.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for i in 0..self.n() {
            out.push_str(&self.labels[i]);
            for j in 0..self.n() {
                out.push_str(&format!(",{:.6}", self.get(i, j)));
            }
            out.push('\n');
        }
        out
    }

    /// The whitespace-separated square-matrix text format consumed by the
    /// clustering CLI: labels on the first line, then the rows.
    pub fn to_square_text(&self) -> String {
        let mut out = self.labels.join(" ");
        out.push('\n');
        for i in 0..self.n() {
            let row: Vec<String> = (0..self.n()).map(|j| format!("{:.6}", self.get(i, j))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_square_text(text: &str) -> Option<NcdMatrix> {
        let mut lines = text.lines();
        let labels: Vec<String> = lines.next()?.split_whitespace().map(str::to_string).collect();
        let n = labels.len();
        let mut values = Vec::with_capacity(n * n);
        for _ in 0..n {
            let row = lines.next()?;
            let cells: Vec<f64> = row
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .ok()?;
            if cells.len() != n {
                return None;
            }
            values.extend(cells);
        }
        Some(NcdMatrix {
            labels,
            backend_name: String::new(),
            values,
            max_asymmetry: 0.0,
            soft_violations: Vec::new(),
        })
    }
}

/// Full pairwise NCD matrix. Cells are independent and evaluated in
/// parallel; the result is identical for any worker count.
pub fn ncd_matrix(backend: &dyn Backend, docs: &[(String, Vec<u8>)]) -> Result<NcdMatrix> {
    if docs.len() < 2 {
        return Err(NcdError::TooFewDocuments(docs.len()));
    }
    for (id, bytes) in docs {
        if bytes.is_empty() {
            return Err(NcdError::EmptyDocument(id.clone()));
        }
    }
    let n = docs.len();
    let cache = LenCache::new();

    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let cells: Vec<((usize, usize), f64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let value = ncd_cached(backend, &docs[i].1, &docs[j].1, &cache)?;
            Ok(((i, j), value))
        })
        .collect::<Result<_>>()?;

    let mut values = vec![0.0; n * n];
    let mut soft_violations = Vec::new();
    for ((i, j), value) in cells {
        if !value.is_finite() || !(0.0..HARD_BOUND).contains(&value) {
            return Err(NcdError::OutOfRange {
                a: docs[i].0.clone(),
                b: docs[j].0.clone(),
                value,
            });
        }
        if value > SOFT_BOUND {
            log::warn!("NCD({},{}) = {value:.4} exceeds the soft bound", docs[i].0, docs[j].0);
            soft_violations.push((docs[i].0.clone(), docs[j].0.clone(), value));
        }
        values[i * n + j] = value;
        values[j * n + i] = value;
    }

    Ok(NcdMatrix {
        labels: docs.iter().map(|(id, _)| id.clone()).collect(),
        backend_name: backend.name().to_string(),
        values,
        max_asymmetry: 0.0,
        soft_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compress::backend_by_name;

    fn text_kb(seed: u64) -> Vec<u8> {
        let vocab = crate::synth::shared_vocabulary(400, 7);
        crate::synth::text(seed, 4000, &vocab, &[], 0.0).into_bytes()
    }

    #[test]
    fn self_distance_is_small() {
        let x = text_kb(1);
        for name in ["lz", "bw", "ppm"] {
            let b = backend_by_name(name).unwrap();
            let d = ncd(b.as_ref(), &x, &x).unwrap();
            assert!(d <= SELF_DISTANCE_BOUND, "{name}: {d}");
        }
    }

    #[test]
    fn empty_inputs_rejected() {
        let b = backend_by_name("lz").unwrap();
        assert!(matches!(ncd(b.as_ref(), b"", b"x"), Err(NcdError::EmptyInput)));
        assert!(matches!(ncd(b.as_ref(), b"x", b""), Err(NcdError::EmptyInput)));
    }

    #[test]
    fn matrix_cells_match_standalone_ncd() {
        let b = backend_by_name("lz").unwrap();
        let docs = vec![
            ("x".to_string(), text_kb(1)),
            ("y".to_string(), text_kb(2)),
        ];
        let m = ncd_matrix(b.as_ref(), &docs).unwrap();
        let standalone = ncd(b.as_ref(), &docs[0].1, &docs[1].1).unwrap();
        assert_eq!(m.get(0, 1), standalone);
        assert_eq!(m.get(1, 0), standalone);
    }

    #[test]
    fn identical_documents_sit_near_zero() {
        let b = backend_by_name("bw").unwrap();
        let x = text_kb(3);
        let docs = vec![("a".to_string(), x.clone()), ("b".to_string(), x)];
        let m = ncd_matrix(b.as_ref(), &docs).unwrap();
        assert!(m.get(0, 1) <= SELF_DISTANCE_BOUND);
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn nearest_neighbor_is_the_near_duplicate() {
        let b = backend_by_name("lz").unwrap();
        let mut docs = Vec::new();
        for seed in [10u64, 20] {
            let original = text_kb(seed);
            // ~1% single-byte edits.
            let mut edited = original.clone();
            let mut i = 13;
            while i < edited.len() {
                edited[i] = b'#';
                i += 101;
            }
            docs.push((format!("orig{seed}"), original));
            docs.push((format!("edit{seed}"), edited));
        }
        let m = ncd_matrix(b.as_ref(), &docs).unwrap();
        for i in 0..4 {
            let partner = i ^ 1;
            let nearest = (0..4)
                .filter(|&j| j != i)
                .min_by(|&a, &b| m.get(i, a).partial_cmp(&m.get(i, b)).unwrap())
                .unwrap();
            assert_eq!(nearest, partner, "row {i}: {:?}", &m.labels);
        }
    }

    #[test]
    fn empty_document_named_in_error() {
        let b = backend_by_name("lz").unwrap();
        let docs = vec![("ok".to_string(), b"x".to_vec()), ("bad".to_string(), Vec::new())];
        match ncd_matrix(b.as_ref(), &docs) {
            Err(NcdError::EmptyDocument(id)) => assert_eq!(id, "bad"),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn square_text_roundtrip() {
        let b = backend_by_name("lz").unwrap();
        let docs = vec![
            ("x".to_string(), text_kb(1)),
            ("y".to_string(), text_kb(2)),
            ("z".to_string(), text_kb(3)),
        ];
        let m = ncd_matrix(b.as_ref(), &docs).unwrap();
        let parsed = NcdMatrix::parse_square_text(&m.to_square_text()).unwrap();
        assert_eq!(parsed.labels, m.labels);
        for i in 0..3 {
            for j in 0..3 {
                assert!((parsed.get(i, j) - m.get(i, j)).abs() < 1e-6);
            }
        }
    }
}
