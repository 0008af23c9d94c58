//! On-disk layout for passage stores: one directory per window size holding
//! a JSON manifest (doc_id, topic, offset, length per passage) and a single
//! packed file with the passage bytes concatenated in manifest order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Passage, PassageStore, Result, SearchError};

#[derive(Serialize, Deserialize)]
struct Manifest {
    window_kb: usize,
    overlap: usize,
    passages: Vec<PassageMeta>,
}

#[derive(Serialize, Deserialize)]
struct PassageMeta {
    doc_id: String,
    topic: String,
    offset: usize,
    length: usize,
}

fn store_dir(root: &Path, window_kb: usize) -> std::path::PathBuf {
    root.join(format!("w{window_kb}kb"))
}

pub fn save_stores(root: &Path, stores: &[PassageStore]) -> Result<()> {
    for store in stores {
        let dir = store_dir(root, store.window_kb);
        std::fs::create_dir_all(&dir)?;
        let manifest = Manifest {
            window_kb: store.window_kb,
            overlap: store.overlap,
            passages: store
                .passages
                .iter()
                .map(|p| PassageMeta {
                    doc_id: p.doc_id.clone(),
                    topic: p.topic.clone(),
                    offset: p.offset,
                    length: p.bytes.len(),
                })
                .collect(),
        };
        let json = serde_json::to_string_pretty(&manifest)
            .map_err(|e| SearchError::Io(e.into()))?;
        std::fs::write(dir.join("manifest.json"), json)?;
        let mut packed = Vec::with_capacity(store.passages.iter().map(|p| p.bytes.len()).sum());
        for p in &store.passages {
            packed.extend_from_slice(&p.bytes);
        }
        std::fs::write(dir.join("passages.bin"), packed)?;
    }
    Ok(())
}

pub fn load_stores(root: &Path) -> Result<Vec<PassageStore>> {
    let mut dirs: Vec<std::path::PathBuf> = std::fs::read_dir(root)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_dir() && p.join("manifest.json").is_file())
        .collect();
    dirs.sort();
    if dirs.is_empty() {
        return Err(SearchError::NoStores);
    }
    let mut stores = Vec::new();
    for dir in dirs {
        let manifest: Manifest =
            serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json"))?)
                .map_err(|e| SearchError::Io(e.into()))?;
        let packed = std::fs::read(dir.join("passages.bin"))?;
        let expect: usize = manifest.passages.iter().map(|m| m.length).sum();
        if packed.len() != expect {
            return Err(SearchError::Io(std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("packed file holds {} bytes, manifest expects {expect}", packed.len()),
            )));
        }
        let mut at = 0usize;
        let passages = manifest
            .passages
            .into_iter()
            .map(|m| {
                let bytes = packed[at..at + m.length].to_vec();
                at += m.length;
                Passage { doc_id: m.doc_id, topic: m.topic, offset: m.offset, bytes }
            })
            .collect();
        stores.push(PassageStore {
            window_kb: manifest.window_kb,
            overlap: manifest.overlap,
            passages,
        });
    }
    stores.sort_by_key(|s| s.window_kb);
    Ok(stores)
}
