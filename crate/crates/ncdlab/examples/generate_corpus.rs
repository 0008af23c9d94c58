//! Regenerates the bundled assets under `assets/`: a 12-document corpus in
//! four planted topics, its frequency list and cluster assignment, a
//! topic/docfile tree for retrieval, and ready-to-run experiment configs.
//! Everything is seeded, so reruns are byte-identical.

use std::path::Path;

use ncdlab::synth;

const SEED: u64 = 20_26;
const TOPICS: [&str; 4] = ["astro", "botany", "cookery", "drums"];

fn main() -> anyhow::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets");
    let corpus_dir = root.join("corpus");
    let search_dir = root.join("search");
    std::fs::create_dir_all(&corpus_dir)?;

    let vocab = synth::shared_vocabulary(400, SEED);
    std::fs::write(root.join("freq.tsv"), synth::frequency_list(&vocab))?;

    // Corpus: three documents per topic. Sizes vary but stay within a
    // small ratio — NCD comparisons between very unequal sizes are
    // dominated by the size gap rather than shared content.
    let sizes_kb: [[usize; 3]; 4] = [[3, 4, 5], [3, 5, 6], [4, 5, 6], [3, 4, 6]];
    let mut assignment = serde_json::Map::new();
    for (t, topic) in TOPICS.iter().enumerate() {
        let keywords = synth::topic_keywords(topic, 16, SEED);
        for (i, kb) in sizes_kb[t].iter().enumerate() {
            let name = format!("{topic}_{i}.txt");
            let text = synth::text(
                SEED ^ (t as u64 * 100 + i as u64),
                kb * 1024,
                &vocab,
                &keywords,
                0.45,
            );
            std::fs::write(corpus_dir.join(&name), text)?;
            assignment.insert(name, serde_json::Value::String(topic.to_string()));
        }
    }
    std::fs::write(
        root.join("assignment.json"),
        serde_json::to_string_pretty(&serde_json::Value::Object(assignment))?,
    )?;

    // Retrieval tree: four documents per topic so one can be held out as a
    // query while the rest still form a solid topic body.
    for (t, topic) in TOPICS.iter().enumerate() {
        let keywords = synth::topic_keywords(topic, 16, SEED);
        std::fs::create_dir_all(search_dir.join(topic))?;
        for i in 0..4 {
            let text = synth::text(
                SEED ^ (1000 + t as u64 * 100 + i as u64),
                2 * 1024,
                &vocab,
                &keywords,
                0.45,
            );
            std::fs::write(search_dir.join(topic).join(format!("doc_{i}.txt")), text)?;
        }
    }

    // Experiment configs with repo-root-relative paths; run the CLI from
    // the workspace root.
    let curve = serde_json::json!({
        "dataset": "assets/corpus",
        "assignment": "assets/assignment.json",
        "frequency_list": "assets/freq.tsv",
        "backends": ["lz"],
        "seed": SEED,
        "output_dir": "target/curve-run"
    });
    std::fs::write(root.join("curve_config.json"), serde_json::to_string_pretty(&curve)?)?;
    let eval = serde_json::json!({
        "dataset": "assets/search",
        "frequency_list": "assets/freq.tsv",
        "backends": ["lz"],
        "selections": ["mfw"],
        "substitutions": ["asterisk"],
        "levels": [0.0, 0.3, 0.6, 1.0],
        "seed": SEED,
        "queries_per_topic": 1,
        "max_window_kb": 2,
        "precision_ks": [1, 3, 5],
        "output_dir": "target/search-run"
    });
    std::fs::write(root.join("search_config.json"), serde_json::to_string_pretty(&eval)?)?;

    println!("assets regenerated under {}", root.display());
    Ok(())
}
