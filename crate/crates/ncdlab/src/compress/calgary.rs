//! Calgary-corpus benchmark harness.
//!
//! Measures bits per byte (8 × compressed / original) for each corpus file
//! and backend. For reference, the published averages of the real
//! compressors this crate's codecs stand in for are PPMZ 2.086, LZMA 2.320
//! and BZIP2 2.368 bpb; the pedagogical pipelines here land well above
//! that and are benchmarked for relative comparison only.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Backend;

/// The 14 files of the corpus.
pub const CALGARY_FILES: [&str; 14] = [
    "bib", "book1", "book2", "geo", "news", "obj1", "obj2", "paper1", "paper2", "pic",
    "progc", "progl", "progp", "trans",
];

#[derive(Clone, Debug)]
pub struct BenchmarkRow {
    pub backend: String,
    pub file: String,
    pub original: u64,
    pub compressed: u64,
}

impl BenchmarkRow {
    pub fn bpb(&self) -> f64 {
        8.0 * self.compressed as f64 / self.original as f64
    }
}

#[derive(Clone, Debug, Default)]
pub struct BenchmarkReport {
    pub rows: Vec<BenchmarkRow>,
    pub skipped: Vec<String>,
}

impl BenchmarkReport {
    /// Mean bpb over the measured files of one backend.
    pub fn average_bpb(&self, backend: &str) -> Option<f64> {
        let bpbs: Vec<f64> =
            self.rows.iter().filter(|r| r.backend == backend).map(|r| r.bpb()).collect();
        if bpbs.is_empty() {
            None
        } else {
            Some(bpbs.iter().sum::<f64>() / bpbs.len() as f64)
        }
    }

    pub fn to_csv(&self) -> String {
        let mut csv = String::from("backend,file,original,compressed,bpb\n");
        let mut backends: Vec<&str> = Vec::new();
        for row in &self.rows {
            if !backends.contains(&row.backend.as_str()) {
                backends.push(&row.backend);
            }
            writeln!(
                csv,
                "{},{},{},{},{:.4}",
                row.backend,
                row.file,
                row.original,
                row.compressed,
                row.bpb()
            )
            .unwrap();
        }
        for backend in backends {
            writeln!(csv, "{backend},average,,,{:.4}", self.average_bpb(backend).unwrap())
                .unwrap();
        }
        for file in &self.skipped {
            writeln!(csv, ",{file},,,skipped").unwrap();
        }
        csv
    }
}

/// Benchmarks every present corpus file against every backend. Missing
/// files are reported as skipped, not fatal.
pub fn calgary_benchmark(dir: &Path, backends: &[Box<dyn Backend>]) -> BenchmarkReport {
    let mut report = BenchmarkReport::default();
    for file in CALGARY_FILES {
        let path = dir.join(file);
        let Ok(data) = fs::read(&path) else {
            report.skipped.push(file.to_string());
            continue;
        };
        for backend in backends {
            report.rows.push(BenchmarkRow {
                backend: backend.name().to_string(),
                file: file.to_string(),
                original: data.len() as u64,
                compressed: backend.compressed_len(&data) as u64,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bpb_of_identity_is_eight() {
        let row = BenchmarkRow {
            backend: "x".into(),
            file: "f".into(),
            original: 1000,
            compressed: 1000,
        };
        assert!((row.bpb() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn missing_files_are_skipped() {
        let dir = std::env::temp_dir().join("ncdlab-no-such-corpus");
        let report = calgary_benchmark(&dir, &[]);
        assert_eq!(report.skipped.len(), CALGARY_FILES.len());
        assert!(report.rows.is_empty());
    }
}
