//! Window-based passage retrieval: overlapping segmentation, per-window
//! passage stores, NCD-ranked querying and precision@K evaluation.

mod store;

pub use store::{load_stores, save_stores};

use std::collections::BTreeMap;
use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::compress::Backend;
use crate::ncd;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("window must be at least 1 KB")]
    BadWindow,
    #[error("overlap {overlap} must be smaller than the window ({window} bytes)")]
    BadOverlap { overlap: usize, window: usize },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("no passage stores")]
    NoStores,
    #[error("empty query")]
    EmptyQuery,
    #[error("ranking holds {got} entries, cannot evaluate precision at {k}")]
    RankingTooShort { got: usize, k: usize },
    #[error("topic '{topic}' has {got} documents, needs at least {need}")]
    TopicTooSmall { topic: String, got: usize, need: usize },
    #[error("distance failed: {0}")]
    Ncd(#[from] ncd::NcdError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SearchError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Passage {
    pub doc_id: String,
    pub topic: String,
    /// Byte position in the source document.
    pub offset: usize,
    pub bytes: Vec<u8>,
}

/// All passages of one corpus at one window size.
#[derive(Clone, Debug)]
pub struct PassageStore {
    pub window_kb: usize,
    pub overlap: usize,
    pub passages: Vec<Passage>,
}

#[derive(Clone, Copy, Debug)]
pub enum OverlapPolicy {
    /// Half the window, so any span up to half a window lies whole in some
    /// passage.
    HalfWindow,
    Fixed(usize),
}

impl OverlapPolicy {
    fn bytes(self, window: usize) -> usize {
        match self {
            Self::HalfWindow => window / 2,
            Self::Fixed(o) => o,
        }
    }
}

/// Passage start offsets for a document: 0, w−o, 2(w−o), … stopping once a
/// passage reaches the document end.
fn segment_offsets(len: usize, window: usize, overlap: usize) -> Result<Vec<usize>> {
    if overlap >= window {
        return Err(SearchError::BadOverlap { overlap, window });
    }
    let stride = window - overlap;
    let mut offsets = vec![0];
    while offsets.last().unwrap() + window < len {
        offsets.push(offsets.last().unwrap() + stride);
    }
    Ok(offsets)
}

pub fn segment(
    doc_id: &str,
    topic: &str,
    doc: &[u8],
    window_kb: usize,
    overlap: usize,
) -> Result<Vec<Passage>> {
    if window_kb == 0 {
        return Err(SearchError::BadWindow);
    }
    let window = window_kb * 1024;
    Ok(segment_offsets(doc.len(), window, overlap)?
        .into_iter()
        .map(|offset| Passage {
            doc_id: doc_id.to_string(),
            topic: topic.to_string(),
            offset,
            bytes: doc[offset..(offset + window).min(doc.len())].to_vec(),
        })
        .collect())
}

/// One store per window size 1..=N KB, each independently covering the
/// whole corpus.
pub fn index_corpus(
    docs: &[(String, String, Vec<u8>)],
    max_window_kb: usize,
    overlap: OverlapPolicy,
) -> Result<Vec<PassageStore>> {
    if docs.is_empty() {
        return Err(SearchError::EmptyCorpus);
    }
    if max_window_kb == 0 {
        return Err(SearchError::BadWindow);
    }
    (1..=max_window_kb)
        .map(|kb| {
            let o = overlap.bytes(kb * 1024);
            let mut passages = Vec::new();
            for (doc_id, topic, bytes) in docs {
                passages.extend(segment(doc_id, topic, bytes, kb, o)?);
            }
            Ok(PassageStore { window_kb: kb, overlap: o, passages })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RankedPassage {
    pub doc_id: String,
    pub topic: String,
    pub offset: usize,
    pub score: f64,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub query_id: String,
    /// Window size actually queried, for diagnostics.
    pub window_kb: usize,
    pub ranking: Vec<RankedPassage>,
}

/// Scores the query against every passage of the best-fitting store (the
/// smallest window ≥ the query size, or the largest store available) and
/// returns the K lowest-NCD passages, ties broken by (doc_id, offset).
pub fn query(
    stores: &[PassageStore],
    backend: &dyn Backend,
    query_id: &str,
    query_bytes: &[u8],
    k: usize,
) -> Result<SearchResult> {
    if query_bytes.is_empty() {
        return Err(SearchError::EmptyQuery);
    }
    let store = stores
        .iter()
        .filter(|s| s.window_kb * 1024 >= query_bytes.len())
        .min_by_key(|s| s.window_kb)
        .or_else(|| stores.iter().max_by_key(|s| s.window_kb))
        .ok_or(SearchError::NoStores)?;

    let mut scored: Vec<RankedPassage> = store
        .passages
        .par_iter()
        .map(|p| {
            let score = ncd::ncd(backend, query_bytes, &p.bytes)?;
            Ok(RankedPassage {
                doc_id: p.doc_id.clone(),
                topic: p.topic.clone(),
                offset: p.offset,
                score,
            })
        })
        .collect::<Result<_>>()?;
    scored.sort_by(|a, b| {
        a.score
            .total_cmp(&b.score)
            .then_with(|| a.doc_id.cmp(&b.doc_id))
            .then_with(|| a.offset.cmp(&b.offset))
    });
    scored.truncate(k);
    Ok(SearchResult { query_id: query_id.to_string(), window_kb: store.window_kb, ranking: scored })
}

/// K → mean precision over the given results.
pub type PrecisionCurve = BTreeMap<usize, f64>;

pub fn precision_at_k<F>(results: &[SearchResult], relevant: F, ks: &[usize]) -> Result<PrecisionCurve>
where
    F: Fn(&SearchResult, &RankedPassage) -> bool,
{
    let mut curve = PrecisionCurve::new();
    for &k in ks {
        let mut sum = 0.0;
        for r in results {
            if r.ranking.len() < k {
                return Err(SearchError::RankingTooShort { got: r.ranking.len(), k });
            }
            let hits = r.ranking[..k].iter().filter(|p| relevant(r, p)).count();
            sum += hits as f64 / k as f64;
        }
        curve.insert(k, sum / results.len() as f64);
    }
    Ok(curve)
}

/// Reads a `topic/docfile` directory layout, holds out
/// `queries_per_topic` seed-selected documents per topic as queries, and
/// concatenates the remainder into one body per topic.
#[allow(clippy::type_complexity)]
pub fn build_topic_corpus(
    dir: &Path,
    queries_per_topic: usize,
    seed: u64,
) -> Result<(Vec<(String, Vec<u8>)>, Vec<(String, String, Vec<u8>)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut topics: Vec<String> = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_dir() {
            topics.push(entry.file_name().to_string_lossy().into_owned());
        }
    }
    topics.sort();

    let mut corpus = Vec::new();
    let mut queries = Vec::new();
    for topic in &topics {
        let mut files: Vec<String> = std::fs::read_dir(dir.join(topic))?
            .map(|e| Ok(e?.file_name().to_string_lossy().into_owned()))
            .collect::<Result<_>>()?;
        files.sort();
        if files.len() < queries_per_topic + 1 {
            return Err(SearchError::TopicTooSmall {
                topic: topic.clone(),
                got: files.len(),
                need: queries_per_topic + 1,
            });
        }
        let held: Vec<usize> = if queries_per_topic > 0 {
            let mut idx = sample(&mut rng, files.len(), queries_per_topic).into_vec();
            idx.sort_unstable();
            idx
        } else {
            Vec::new()
        };
        let mut body = Vec::new();
        for (i, name) in files.iter().enumerate() {
            let bytes = std::fs::read(dir.join(topic).join(name))?;
            if held.binary_search(&i).is_ok() {
                queries.push((topic.clone(), name.clone(), bytes));
            } else {
                body.extend_from_slice(&bytes);
            }
        }
        corpus.push((topic.clone(), body));
    }
    Ok((corpus, queries))
}
