//! Experiment plumbing: JSON configs, the distortion/clustering curve sweep
//! and the distorted-index retrieval evaluation. Everything is seeded, and
//! output is byte-identical for any worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::{
    average_ce, build_dendrogram, clustering_error, error_summaries, BuildMethod,
    ClusterAssignment, ClusterError,
};
use crate::compress::{backend_by_name, Backend, CompressError};
use crate::ncd::{ncd_matrix, NcdError};
use crate::search::{self, OverlapPolicy, SearchError};
use crate::textops::{
    build_removal_set, distort, load_frequency_table, normalize_and_tokenize, shuffle_variant,
    DistortionSpec, Level, Selection, ShuffleMode, Substitution, TextError, TokenStream,
};

/// Thesis K set for precision tables.
pub const PRECISION_KS: &[usize] = &[5, 10, 15, 20, 30, 40, 50, 100];

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config: {0}")]
    Config(String),
    #[error("path does not exist: {0}")]
    MissingPath(PathBuf),
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Compress(#[from] CompressError),
    #[error(transparent)]
    Ncd(#[from] NcdError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

fn default_backends() -> Vec<String> {
    vec!["lz".into(), "bw".into(), "ppm".into()]
}
fn default_selections() -> Vec<Selection> {
    vec![Selection::Mfw, Selection::Lfw, Selection::Rw]
}
fn default_substitutions() -> Vec<Substitution> {
    vec![Substitution::Asterisk, Substitution::RandomChar]
}
fn default_shuffles() -> Vec<ShuffleMode> {
    vec![ShuffleMode::None, ShuffleMode::Asterisks, ShuffleMode::Words, ShuffleMode::All]
}
fn default_levels() -> Vec<Level> {
    Level::all().collect()
}
fn default_repeats() -> usize {
    10
}
fn default_method() -> String {
    "nj".into()
}
fn default_window() -> usize {
    4
}
fn default_queries() -> usize {
    1
}
fn default_ks() -> Vec<usize> {
    PRECISION_KS.to_vec()
}

/// One experiment run, loaded from a JSON file. `dataset` is a directory of
/// documents for curve sweeps, or a `topic/docfile` tree for retrieval
/// evaluation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dataset: PathBuf,
    /// Cluster assignment JSON (doc_id → label); required for curve sweeps.
    #[serde(default)]
    pub assignment: Option<PathBuf>,
    pub frequency_list: PathBuf,
    #[serde(default = "default_backends")]
    pub backends: Vec<String>,
    #[serde(default = "default_selections")]
    pub selections: Vec<Selection>,
    #[serde(default = "default_substitutions")]
    pub substitutions: Vec<Substitution>,
    #[serde(default = "default_shuffles")]
    pub shuffles: Vec<ShuffleMode>,
    #[serde(default = "default_levels")]
    pub levels: Vec<Level>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default = "default_method")]
    pub method: String,
    pub output_dir: PathBuf,
    /// Largest passage-store window in KB (retrieval evaluation only).
    #[serde(default = "default_window")]
    pub max_window_kb: usize,
    #[serde(default = "default_queries")]
    pub queries_per_topic: usize,
    #[serde(default = "default_ks")]
    pub precision_ks: Vec<usize>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| ExperimentError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        for path in [Some(&self.dataset), self.assignment.as_ref(), Some(&self.frequency_list)]
            .into_iter()
            .flatten()
        {
            if !path.exists() {
                return Err(ExperimentError::MissingPath(path.clone()));
            }
        }
        if self.backends.is_empty() || self.levels.is_empty() {
            return Err(ExperimentError::Config("backends and levels must be non-empty".into()));
        }
        for name in &self.backends {
            backend_by_name(name)?;
        }
        self.method.parse::<BuildMethod>().map_err(|e| ExperimentError::Config(e.to_string()))?;
        if self.repeats == 0 {
            return Err(ExperimentError::Config("repeats must be at least 1".into()));
        }
        Ok(())
    }

    fn build_method(&self) -> BuildMethod {
        self.method.parse().expect("validated")
    }
}

/// Reads every regular file of a flat dataset directory in name order.
pub fn load_dataset(dir: &Path) -> Result<Vec<(String, Vec<u8>)>> {
    let mut names: Vec<String> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .filter(|e| e.path().is_file())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    if names.is_empty() {
        return Err(ExperimentError::Config(format!("dataset {} is empty", dir.display())));
    }
    names
        .into_iter()
        .map(|n| Ok((n.clone(), std::fs::read(dir.join(n))?)))
        .collect()
}

/// SplitMix64 step; stable seed derivation for (doc, repeat) cells.
fn mix(mut a: u64, b: u64) -> u64 {
    a = a.wrapping_add(0x9e3779b97f4a7c15).wrapping_add(b.wrapping_mul(0xbf58476d1ce4e5b9));
    a ^= a >> 30;
    a = a.wrapping_mul(0xbf58476d1ce4e5b9);
    a ^= a >> 27;
    a.wrapping_mul(0x94d049bb133111eb)
}

/// Distorts a tokenized corpus under one spec. The distortion seed depends
/// on (config seed, document index, repeat) but not on the selection
/// method, so equal removal sets give byte-identical corpora.
fn distorted_corpus(
    docs: &[(String, TokenStream)],
    table: &crate::textops::FrequencyTable,
    spec: &DistortionSpec,
    base_seed: u64,
    rep: u64,
) -> Result<Vec<(String, Vec<u8>)>> {
    let set = build_removal_set(table, spec.selection, spec.level, base_seed)?;
    docs.iter()
        .enumerate()
        .map(|(i, (id, stream))| {
            let seed = mix(base_seed, mix(i as u64, rep));
            let doc = distort(id, stream, &set, spec.substitution, seed);
            let doc = shuffle_variant(&doc, spec.shuffle, mix(seed, 0x5eed));
            Ok((id.clone(), doc.bytes))
        })
        .collect()
}

struct CurveCell {
    backend: String,
    selection: Selection,
    substitution: Substitution,
    shuffle: ShuffleMode,
    level: Level,
}

struct CurveRow {
    cell: CurveCell,
    error: f64,
    mean: f64,
    stddev: f64,
}

/// The full distortion/clustering sweep: every valid
/// (backend, selection, substitution, shuffle, level) cell is distorted,
/// measured with an NCD matrix, clustered, and scored against the bundled
/// assignment. Shuffled cells repeat `config.repeats` times with fresh
/// seeds; the CSV reports the first repeat, the mean and the sample
/// standard deviation, followed by average_ce / delta / normalized summary
/// rows per combination (value in the `mean` column).
pub fn cmd_curve(config: &ExperimentConfig, workers: usize) -> Result<String> {
    config.validate()?;
    let assignment_path = config
        .assignment
        .as_ref()
        .ok_or_else(|| ExperimentError::Config("curve sweep needs a cluster assignment".into()))?;
    let assignment = ClusterAssignment::load(assignment_path)?;
    let table = load_frequency_table(&config.frequency_list)?;
    let docs: Vec<(String, TokenStream)> = load_dataset(&config.dataset)?
        .into_iter()
        .map(|(id, bytes)| (id, normalize_and_tokenize(&bytes)))
        .collect();
    let method = config.build_method();

    let mut cells = Vec::new();
    for backend in &config.backends {
        for &selection in &config.selections {
            for &substitution in &config.substitutions {
                for &shuffle in &config.shuffles {
                    if shuffle != ShuffleMode::None && substitution != Substitution::Asterisk {
                        continue; // shuffles are defined over asterisk runs only
                    }
                    for &level in &config.levels {
                        cells.push(CurveCell {
                            backend: backend.clone(),
                            selection,
                            substitution,
                            shuffle,
                            level,
                        });
                    }
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let rows: Vec<Option<CurveRow>> = pool.install(|| {
        cells
            .into_par_iter()
            .map(|cell| {
                let backend = backend_by_name(&cell.backend).expect("validated");
                let spec = DistortionSpec {
                    selection: cell.selection,
                    substitution: cell.substitution,
                    shuffle: cell.shuffle,
                    level: cell.level,
                    seed: config.seed,
                };
                let repeats = if cell.shuffle == ShuffleMode::None { 1 } else { config.repeats };
                let mut errors = Vec::with_capacity(repeats);
                for rep in 0..repeats {
                    match run_cell(&docs, &table, &spec, config.seed, rep as u64, backend.as_ref(), method, &assignment) {
                        Ok(e) => errors.push(e),
                        Err(err) => {
                            log::error!(
                                "cell {}/{}/{}/{}/{} failed: {err}",
                                cell.backend, cell.selection, cell.substitution, cell.shuffle, cell.level
                            );
                            return None;
                        }
                    }
                }
                let mean = errors.iter().sum::<f64>() / errors.len() as f64;
                let stddev = if errors.len() > 1 {
                    (errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>()
                        / (errors.len() - 1) as f64)
                        .sqrt()
                } else {
                    0.0
                };
                Some(CurveRow { cell, error: errors[0], mean, stddev })
            })
            .collect()
    });

    let rows: Vec<CurveRow> = rows.into_iter().flatten().collect();
    let mut csv = String::from("backend,selection,substitution,shuffle,level,error,mean,stddev\n");
    for r in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{:.4},{:.4}",
            r.cell.backend, r.cell.selection, r.cell.substitution, r.cell.shuffle, r.cell.level,
            r.error, r.mean, r.stddev
        )
        .expect("write to string");
    }

    // Summary rows per (backend, selection, substitution, shuffle): the
    // average clustering error over levels 0.1..1.0 and the per-level
    // delta/normalized error against the level-0.0 baseline.
    let mut combos: Vec<(&str, Selection, Substitution, ShuffleMode)> = rows
        .iter()
        .map(|r| (r.cell.backend.as_str(), r.cell.selection, r.cell.substitution, r.cell.shuffle))
        .collect();
    combos.dedup();
    for (backend, selection, substitution, shuffle) in combos {
        let by_level: BTreeMap<Level, f64> = rows
            .iter()
            .filter(|r| {
                r.cell.backend == backend
                    && r.cell.selection == selection
                    && r.cell.substitution == substitution
                    && r.cell.shuffle == shuffle
            })
            .map(|r| (r.cell.level, r.mean))
            .collect();
        let combo = format!("{backend},{selection},{substitution},{shuffle}");
        if let Ok(avg) = average_ce(&by_level) {
            writeln!(csv, "{combo},average_ce,,{avg:.4},").expect("write to string");
        }
        if let Some(&e0) = by_level.get(&Level::ZERO) {
            for (&level, &ek) in by_level.iter().filter(|(l, _)| **l != Level::ZERO) {
                let s = error_summaries(e0, ek);
                writeln!(csv, "{combo},delta@{level},,{:.4},", s.delta).expect("write to string");
                match s.normalized {
                    Some(v) => writeln!(csv, "{combo},normalized@{level},,{v:.4},"),
                    None => writeln!(csv, "{combo},normalized@{level},,,"),
                }
                .expect("write to string");
            }
        }
    }

    std::fs::create_dir_all(&config.output_dir)?;
    std::fs::write(config.output_dir.join("curve.csv"), &csv)?;
    std::fs::write(
        config.output_dir.join("config.json"),
        serde_json::to_string_pretty(config).map_err(|e| ExperimentError::Config(e.to_string()))?,
    )?;
    Ok(csv)
}

#[allow(clippy::too_many_arguments)]
fn run_cell(
    docs: &[(String, TokenStream)],
    table: &crate::textops::FrequencyTable,
    spec: &DistortionSpec,
    seed: u64,
    rep: u64,
    backend: &dyn Backend,
    method: BuildMethod,
    assignment: &ClusterAssignment,
) -> Result<f64> {
    let corpus = distorted_corpus(docs, table, spec, seed, rep)?;
    let matrix = ncd_matrix(backend, &corpus)?;
    let tree = build_dendrogram(&matrix, method, mix(seed, rep))?;
    let report = clustering_error(&tree, assignment)?;
    Ok(report.error as f64)
}

/// Retrieval under distortion: per (selection, substitution, level), the
/// topic corpora are distorted and re-indexed while the held-out queries
/// stay undistorted; one CSV row of precision@K per cell.
pub fn cmd_search_eval(config: &ExperimentConfig, workers: usize) -> Result<String> {
    config.validate()?;
    let table = load_frequency_table(&config.frequency_list)?;
    let backend = backend_by_name(&config.backends[0])?;
    let (corpus, queries) =
        search::build_topic_corpus(&config.dataset, config.queries_per_topic, config.seed)?;
    let tokenized: Vec<(String, TokenStream)> = corpus
        .iter()
        .map(|(topic, bytes)| (topic.clone(), normalize_and_tokenize(bytes)))
        .collect();
    let max_k = config.precision_ks.iter().copied().max().unwrap_or(1);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ExperimentError::Config(e.to_string()))?;

    let mut csv = String::from("selection,substitution,level");
    for k in &config.precision_ks {
        write!(csv, ",p@{k}").expect("write to string");
    }
    csv.push('\n');

    for &selection in &config.selections {
        for &substitution in &config.substitutions {
            let mut levels = config.levels.clone();
            levels.sort();
            for level in levels {
                let spec = DistortionSpec {
                    selection,
                    substitution,
                    shuffle: ShuffleMode::None,
                    level,
                    seed: config.seed,
                };
                let distorted = distorted_corpus(&tokenized, &table, &spec, config.seed, 0)?;
                let docs: Vec<(String, String, Vec<u8>)> = distorted
                    .into_iter()
                    .map(|(topic, bytes)| (topic.clone(), topic, bytes))
                    .collect();
                let stores =
                    search::index_corpus(&docs, config.max_window_kb, OverlapPolicy::HalfWindow)?;
                let results: Vec<search::SearchResult> = pool.install(|| {
                    queries
                        .par_iter()
                        .map(|(topic, name, bytes)| {
                            search::query(
                                &stores,
                                backend.as_ref(),
                                &format!("{topic}/{name}"),
                                bytes,
                                max_k,
                            )
                        })
                        .collect::<search::Result<_>>()
                })?;
                let topic_of = |r: &search::SearchResult| {
                    r.query_id.split('/').next().unwrap_or_default().to_string()
                };
                let curve = search::precision_at_k(
                    &results,
                    |r, p| p.topic == topic_of(r),
                    &config.precision_ks,
                )?;
                write!(csv, "{selection},{substitution},{level}").expect("write to string");
                for k in &config.precision_ks {
                    write!(csv, ",{:.4}", curve[k]).expect("write to string");
                }
                csv.push('\n');
            }
        }
    }

    std::fs::create_dir_all(&config.output_dir)?;
    std::fs::write(config.output_dir.join("precision.csv"), &csv)?;
    Ok(csv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    /// A tiny on-disk experiment: 6 docs in 2 planted topics, a frequency
    /// list and an assignment file.
    fn fixture(dir: &Path) -> ExperimentConfig {
        let vocab = crate::synth::shared_vocabulary(150, 11);
        let dataset = dir.join("docs");
        std::fs::create_dir_all(&dataset).unwrap();
        let mut labels = serde_json::Map::new();
        for (t, topic) in ["alpha", "beta"].iter().enumerate() {
            let kw = crate::synth::topic_keywords(topic, 12, 11);
            for i in 0..3 {
                let name = format!("{topic}{i}.txt");
                let text = crate::synth::text(
                    (t * 10 + i) as u64,
                    2200,
                    &vocab,
                    &kw,
                    0.3,
                );
                std::fs::write(dataset.join(&name), text).unwrap();
                labels.insert(name, serde_json::Value::String(topic.to_string()));
            }
        }
        let assignment = dir.join("assignment.json");
        std::fs::write(&assignment, serde_json::to_string(&labels).unwrap()).unwrap();
        let freq = dir.join("freq.tsv");
        let mut f = std::fs::File::create(&freq).unwrap();
        f.write_all(crate::synth::frequency_list(&vocab).as_bytes()).unwrap();

        ExperimentConfig {
            dataset,
            assignment: Some(assignment),
            frequency_list: freq,
            backends: vec!["lz".into()],
            selections: vec![Selection::Mfw, Selection::Lfw],
            substitutions: vec![Substitution::Asterisk],
            shuffles: vec![ShuffleMode::None],
            levels: vec![Level::ZERO, Level::FULL],
            seed: 9,
            repeats: 2,
            method: "nj".into(),
            output_dir: dir.join("out"),
            max_window_kb: 2,
            queries_per_topic: 1,
            precision_ks: vec![1, 2],
        }
    }

    #[test]
    fn config_roundtrip_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        let config = fixture(dir.path());
        let path = dir.path().join("config.json");
        std::fs::write(&path, serde_json::to_string(&config).unwrap()).unwrap();
        let loaded = ExperimentConfig::load(&path).unwrap();
        assert_eq!(loaded.backends, config.backends);
        assert_eq!(loaded.levels, config.levels);

        let mut broken = config.clone();
        broken.dataset = dir.path().join("nope");
        assert!(matches!(broken.validate(), Err(ExperimentError::MissingPath(_))));
        let mut broken = config.clone();
        broken.backends = vec!["gzip".into()];
        assert!(broken.validate().is_err());
        let mut broken = config;
        broken.method = "upgma".into();
        assert!(broken.validate().is_err());
    }

    #[test]
    fn curve_sweep_level_identities() {
        let dir = tempfile::tempdir().unwrap();
        let config = fixture(dir.path());
        let csv = cmd_curve(&config, 2).unwrap();
        assert!(dir.path().join("out/curve.csv").is_file());
        let rows: Vec<Vec<&str>> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').collect())
            .collect();
        let find = |sel: &str, level: &str| -> &Vec<&str> {
            rows.iter()
                .find(|r| r[1] == sel && r[4] == level)
                .unwrap_or_else(|| panic!("no row {sel}@{level}"))
        };
        // level 0.0: nothing removed, selection cannot matter
        assert_eq!(find("mfw", "0.0")[5..], find("lfw", "0.0")[5..]);
        // level 1.0: MFW and LFW removal sets are the whole vocabulary
        assert_eq!(find("mfw", "1.0")[5..], find("lfw", "1.0")[5..]);
        // summary rows present
        assert!(csv.lines().any(|l| l.contains(",delta@1.0,")));
        assert!(csv.lines().any(|l| l.contains(",normalized@1.0,")));
    }

    #[test]
    fn curve_sweep_worker_count_invariant() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = fixture(dir.path());
        config.levels = vec![Level::ZERO];
        config.selections = vec![Selection::Mfw];
        let a = cmd_curve(&config, 1).unwrap();
        let b = cmd_curve(&config, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn search_eval_emits_baseline_row_first() {
        let dir = tempfile::tempdir().unwrap();
        // topic/docfile layout for retrieval
        let vocab = crate::synth::shared_vocabulary(150, 11);
        let dataset = dir.path().join("topics");
        for (t, topic) in ["alpha", "beta"].iter().enumerate() {
            let kw = crate::synth::topic_keywords(topic, 12, 11);
            std::fs::create_dir_all(dataset.join(topic)).unwrap();
            for i in 0..3 {
                let text =
                    crate::synth::text((t * 10 + i) as u64, 2200, &vocab, &kw, 0.3);
                std::fs::write(dataset.join(topic).join(format!("d{i}.txt")), text).unwrap();
            }
        }
        let mut config = fixture(dir.path());
        config.dataset = dataset;
        config.selections = vec![Selection::Mfw];
        config.levels = vec![Level::FULL, Level::ZERO];
        let csv = cmd_search_eval(&config, 2).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "selection,substitution,level,p@1,p@2");
        // levels are sorted: the undistorted baseline comes first
        assert!(lines.next().unwrap().starts_with("mfw,asterisk,0.0,"));
        assert!(lines.next().unwrap().starts_with("mfw,asterisk,1.0,"));
        assert!(dir.path().join("out/precision.csv").is_file());
    }
}
