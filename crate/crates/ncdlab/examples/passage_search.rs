//! Passage retrieval: segment the bundled topic corpora into overlapping
//! windows, query with a held-out document, and evaluate precision@K.

use std::path::Path;

use ncdlab::compress::backend_by_name;
use ncdlab::search::{build_topic_corpus, index_corpus, precision_at_k, query, OverlapPolicy};

fn main() -> anyhow::Result<()> {
    let assets = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets");
    // Hold one document per topic out as a query; concatenate the rest.
    let (corpus, queries) = build_topic_corpus(&assets.join("search"), 1, 7)?;
    let docs: Vec<(String, String, Vec<u8>)> =
        corpus.into_iter().map(|(topic, bytes)| (topic.clone(), topic, bytes)).collect();
    let stores = index_corpus(&docs, 2, OverlapPolicy::HalfWindow)?;
    for store in &stores {
        println!("store {} KB: {} passages", store.window_kb, store.passages.len());
    }

    let backend = backend_by_name("bw")?;
    let mut results = Vec::new();
    for (topic, name, bytes) in &queries {
        let result = query(&stores, backend.as_ref(), &format!("{topic}/{name}"), bytes, 5)?;
        println!("query {topic}/{name} (store {} KB):", result.window_kb);
        for (rank, p) in result.ranking.iter().enumerate() {
            println!("  {}. {}@{} ncd={:.3}", rank + 1, p.doc_id, p.offset, p.score);
        }
        results.push(result);
    }

    // A passage is relevant when it comes from the query's own topic.
    let curve = precision_at_k(
        &results,
        |r, p| r.query_id.starts_with(&format!("{}/", p.topic)),
        &[1, 3, 5],
    )?;
    for (k, p) in &curve {
        println!("precision@{k} = {p:.3}");
    }
    Ok(())
}
