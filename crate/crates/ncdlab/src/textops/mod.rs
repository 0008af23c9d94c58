//! Text normalization, corpus frequency tables, removal sets, the six
//! distortion techniques, the shuffle variants and entropy utilities.

mod bitmap;
mod distort;
mod entropy;
mod freq;
mod removal;
mod shuffle;
mod tokenize;

pub use bitmap::emit_removal_map;
pub use distort::{distort, percentage_substituted, DistortedDocument, Substitution};
pub use entropy::entropy;
pub use freq::{load_frequency_table, parse_frequency_list, FrequencyTable};
pub use removal::{build_removal_set, Level, RemovalSet, Selection};
pub use shuffle::{shuffle_variant, ShuffleMode};
pub use tokenize::{normalize_and_tokenize, Token, TokenStream};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("frequency table is empty")]
    EmptyTable,
    #[error("level {0} is not a tenth in 0.0..=1.0")]
    BadLevel(f64),
    #[error("document has no words; ratio undefined")]
    NoWords,
    #[error("probabilities sum to {0}, not 1")]
    BadDistribution(f64),
    #[error("shuffle modes require asterisk substitution")]
    ShuffleNeedsAsterisks,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, TextError>;

/// One distortion experiment cell: which words to pick, how to overwrite
/// them, and whether to scramble the result afterwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistortionSpec {
    pub selection: Selection,
    pub substitution: Substitution,
    pub shuffle: ShuffleMode,
    pub level: Level,
    pub seed: u64,
}

impl DistortionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.shuffle != ShuffleMode::None && self.substitution != Substitution::Asterisk {
            return Err(TextError::ShuffleNeedsAsterisks);
        }
        Ok(())
    }

    /// File suffix used when distorted documents are written to disk, e.g.
    /// `mfw.0.3.asterisk.words.txt`.
    pub fn file_suffix(&self) -> String {
        let shuffle = match self.shuffle {
            ShuffleMode::None => String::new(),
            other => format!(".{other}"),
        };
        format!("{}.{}.{}{shuffle}.txt", self.selection, self.level, self.substitution)
    }
}
