//! Thin command-line wrapper over the library. Exit codes: 0 success,
//! 2 usage/validation error, 3 runtime failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use ncdlab::cluster::{build_dendrogram, clustering_error, BuildMethod, ClusterAssignment};
use ncdlab::compress::backend_by_name;
use ncdlab::compress::calgary::calgary_benchmark;
use ncdlab::experiment::{cmd_curve, cmd_search_eval, load_dataset, ExperimentConfig};
use ncdlab::search;
use ncdlab::textops::{
    build_removal_set, distort, emit_removal_map, entropy, load_frequency_table,
    normalize_and_tokenize, shuffle_variant, Level, Selection, ShuffleMode, Substitution,
};

#[derive(Parser)]
#[command(name = "ncdlab", version, about = "Compression-distance laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized compression distance between two files.
    Ncd {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "bw")]
        backend: String,
    },
    /// Pairwise NCD matrix over a directory of documents, as CSV.
    Matrix {
        dir: PathBuf,
        #[arg(long, default_value = "bw")]
        backend: String,
    },
    /// Distort one document with a frequency-list removal set.
    Distort {
        file: PathBuf,
        #[arg(long)]
        freq: PathBuf,
        #[arg(long, default_value = "mfw")]
        selection: Selection,
        #[arg(long)]
        level: f64,
        #[arg(long, default_value = "asterisk")]
        substitution: Substitution,
        #[arg(long, default_value = "none")]
        shuffle: ShuffleMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Distortion/clustering sweep from a JSON experiment config.
    Curve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = num_workers())]
        workers: usize,
    },
    /// Cluster a directory of documents; emits Newick (stdout) and DOT.
    Cluster {
        dir: PathBuf,
        #[arg(long, default_value = "bw")]
        backend: String,
        #[arg(long, default_value = "nj")]
        method: BuildMethod,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the DOT rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Cluster assignment JSON; adds a clustering-error report.
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Passage retrieval.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Calgary-corpus bits-per-byte benchmark over all backends.
    Calgary { dir: PathBuf },
    /// Shannon entropy of a probability distribution, in bits.
    Entropy { probs: Vec<f64> },
    /// P1 PBM bitmap of which words a removal set overwrites.
    RemovalMap {
        file: PathBuf,
        #[arg(long)]
        freq: PathBuf,
        #[arg(long, default_value = "mfw")]
        selection: Selection,
        #[arg(long)]
        level: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        width: usize,
    },
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Build passage stores from a topic/docfile tree and save them.
    Index {
        dataset: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_window_kb: usize,
    },
    /// Query saved passage stores; emits rank,doc_id,offset,ncd,topic CSV.
    Query {
        stores: PathBuf,
        query: PathBuf,
        #[arg(long, default_value = "bw")]
        backend: String,
        #[arg(short, default_value_t = 10)]
        k: usize,
    },
    /// Precision@K under distortion, from a JSON experiment config.
    Eval {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = num_workers())]
        workers: usize,
    },
}

fn num_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Distinguishes bad input (exit 2) from a failure while computing (exit 3).
fn usage(err: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow::Error::new(UsageErrorWrapper(err.into().to_string()))
}

#[derive(Debug)]
struct UsageErrorWrapper(String);

impl std::fmt::Display for UsageErrorWrapper {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}
impl std::error::Error for UsageErrorWrapper {}

fn read_file(path: &Path) -> anyhow::Result<Vec<u8>> {
    if !path.is_file() {
        return Err(usage(anyhow!("no such file: {}", path.display())));
    }
    Ok(std::fs::read(path).with_context(|| format!("reading {}", path.display()))?)
}

fn parse_level(level: f64) -> anyhow::Result<Level> {
    Level::try_from(level).map_err(usage)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.chain().any(|e| e.is::<UsageErrorWrapper>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Ncd { a, b, backend } => {
            let backend = backend_by_name(&backend).map_err(usage)?;
            let x = read_file(&a)?;
            let y = read_file(&b)?;
            let d = ncdlab::ncd::ncd(backend.as_ref(), &x, &y)?;
            println!("{d:.6}");
        }
        Command::Matrix { dir, backend } => {
            let backend = backend_by_name(&backend).map_err(usage)?;
            let docs = load_dataset(&dir).map_err(usage)?;
            let matrix = ncdlab::ncd::ncd_matrix(backend.as_ref(), &docs)?;
            print!("{}", matrix.to_csv());
        }
        Command::Distort { file, freq, selection, level, substitution, shuffle, seed } => {
            let table = load_frequency_table(&freq).map_err(usage)?;
            let doc = normalize_and_tokenize(&read_file(&file)?);
            let set = build_removal_set(&table, selection, parse_level(level)?, seed)
                .map_err(usage)?;
            let out = distort("doc", &doc, &set, substitution, seed);
            let out = shuffle_variant(&out, shuffle, seed);
            std::io::Write::write_all(&mut std::io::stdout(), &out.bytes)?;
        }
        Command::Curve { config, workers } => {
            let config = ExperimentConfig::load(&config).map_err(usage)?;
            let csv = cmd_curve(&config, workers.max(1))?;
            print!("{csv}");
        }
        Command::Cluster { dir, backend, method, seed, dot, assignment } => {
            let backend = backend_by_name(&backend).map_err(usage)?;
            let docs = load_dataset(&dir).map_err(usage)?;
            let matrix = ncdlab::ncd::ncd_matrix(backend.as_ref(), &docs)?;
            let tree = build_dendrogram(&matrix, method, seed)?;
            println!("{}", tree.newick());
            if let Some(path) = dot {
                std::fs::write(&path, tree.dot())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = assignment {
                if !path.is_file() {
                    return Err(usage(anyhow!("no such file: {}", path.display())));
                }
                let assignment = ClusterAssignment::load(&path).map_err(usage)?;
                let report = clustering_error(&tree, &assignment)?;
                eprintln!(
                    "achieved {} perfect {} error {}",
                    report.achieved_sum, report.perfect_sum, report.error
                );
            }
        }
        Command::Search(cmd) => run_search(cmd)?,
        Command::Calgary { dir } => {
            if !dir.is_dir() {
                return Err(usage(anyhow!("no such directory: {}", dir.display())));
            }
            let backends: Vec<_> = ["lz", "bw", "ppm"]
                .iter()
                .map(|n| backend_by_name(n).expect("built-in"))
                .collect();
            print!("{}", calgary_benchmark(&dir, &backends).to_csv());
        }
        Command::Entropy { probs } => {
            let h = entropy(&probs).map_err(usage)?;
            println!("{h:.6}");
        }
        Command::RemovalMap { file, freq, selection, level, seed, width } => {
            let table = load_frequency_table(&freq).map_err(usage)?;
            let doc = normalize_and_tokenize(&read_file(&file)?);
            let set = build_removal_set(&table, selection, parse_level(level)?, seed)
                .map_err(usage)?;
            print!("{}", emit_removal_map(&doc, &set, width.max(1)));
        }
    }
    Ok(())
}

fn run_search(cmd: SearchCommand) -> anyhow::Result<()> {
    match cmd {
        SearchCommand::Index { dataset, out, max_window_kb } => {
            if !dataset.is_dir() {
                return Err(usage(anyhow!("no such directory: {}", dataset.display())));
            }
            let (corpus, _) = search::build_topic_corpus(&dataset, 0, 0).map_err(usage)?;
            let docs: Vec<(String, String, Vec<u8>)> =
                corpus.into_iter().map(|(topic, bytes)| (topic.clone(), topic, bytes)).collect();
            let stores =
                search::index_corpus(&docs, max_window_kb, search::OverlapPolicy::HalfWindow)
                    .map_err(usage)?;
            search::save_stores(&out, &stores)?;
            let total: usize = stores.iter().map(|s| s.passages.len()).sum();
            eprintln!("indexed {} stores, {total} passages", stores.len());
        }
        SearchCommand::Query { stores, query, backend, k } => {
            let backend = backend_by_name(&backend).map_err(usage)?;
            let stores = search::load_stores(&stores).map_err(usage)?;
            let bytes = read_file(&query)?;
            let result = search::query(&stores, backend.as_ref(), "query", &bytes, k)?;
            println!("rank,doc_id,offset,ncd,topic");
            for (rank, p) in result.ranking.iter().enumerate() {
                println!("{},{},{},{:.6},{}", rank + 1, p.doc_id, p.offset, p.score, p.topic);
            }
        }
        SearchCommand::Eval { config, workers } => {
            let config = ExperimentConfig::load(&config).map_err(usage)?;
            let csv = cmd_search_eval(&config, workers.max(1))?;
            print!("{csv}");
        }
    }
    Ok(())
}
