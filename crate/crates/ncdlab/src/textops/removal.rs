//! Removal sets: the words accumulating a given corpus frequency under a
//! selection method.
//!
//! The set at level k is the shortest prefix of the method's word ordering
//! whose cumulative relative frequency reaches k. The random ordering is a
//! single seed-deterministic permutation of the vocabulary, so sets nest
//! across levels for a fixed seed, exactly like the sorted orderings.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::freq::FrequencyTable;
use super::{Result, TextError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    /// Most frequent words first.
    Mfw,
    /// Least frequent words first.
    Lfw,
    /// Seeded random order.
    Rw,
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Selection::Mfw => "mfw",
            Selection::Lfw => "lfw",
            Selection::Rw => "rw",
        })
    }
}

impl std::str::FromStr for Selection {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mfw" => Ok(Selection::Mfw),
            "lfw" => Ok(Selection::Lfw),
            "rw" => Ok(Selection::Rw),
            other => Err(format!("unknown selection method '{other}'")),
        }
    }
}

/// A cumulative-frequency level in tenths: 0.0, 0.1, …, 1.0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Level(u8);

impl Level {
    pub const ZERO: Level = Level(0);
    pub const FULL: Level = Level(10);

    pub fn from_tenths(tenths: u8) -> Result<Self> {
        if tenths > 10 {
            return Err(TextError::BadLevel(tenths as f64 / 10.0));
        }
        Ok(Level(tenths))
    }

    pub fn tenths(self) -> u8 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 10.0
    }

    /// All eleven levels 0.0..=1.0.
    pub fn all() -> impl Iterator<Item = Level> {
        (0..=10).map(Level)
    }

    /// The ten distortion levels 0.1..=1.0 (0.0 is the undistorted baseline).
    pub fn distortions() -> impl Iterator<Item = Level> {
        (1..=10).map(Level)
    }

    pub fn next_up(self) -> Option<Level> {
        (self.0 < 10).then(|| Level(self.0 + 1))
    }
}

impl TryFrom<f64> for Level {
    type Error = TextError;
    fn try_from(v: f64) -> Result<Self> {
        let tenths = (v * 10.0).round();
        if !(0.0..=10.0).contains(&tenths) || (tenths / 10.0 - v).abs() > 1e-9 {
            return Err(TextError::BadLevel(v));
        }
        Ok(Level(tenths as u8))
    }
}

impl From<Level> for f64 {
    fn from(l: Level) -> f64 {
        l.value()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.1}", self.value())
    }
}

#[derive(Clone, Debug)]
pub struct RemovalSet {
    pub method: Selection,
    pub level: Level,
    pub seed: u64,
    words: HashSet<String>,
}

impl RemovalSet {
    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &HashSet<String> {
        &self.words
    }
}

/// The vocabulary permutation used by the random selection method: one
/// Fisher-Yates shuffle of the lexicographically sorted vocabulary, drawn
/// once per (table, seed).
fn random_order(table: &FrequencyTable, seed: u64) -> Vec<String> {
    let mut words: Vec<String> = table.words().map(str::to_string).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    words.shuffle(&mut rng);
    words
}

pub fn build_removal_set(
    table: &FrequencyTable,
    method: Selection,
    level: Level,
    seed: u64,
) -> Result<RemovalSet> {
    if table.is_empty() {
        return Err(TextError::EmptyTable);
    }
    let owned;
    let ordering: &[String] = match method {
        Selection::Mfw => table.mfw_order(),
        Selection::Lfw => table.lfw_order(),
        Selection::Rw => {
            owned = random_order(table, seed);
            &owned
        }
    };

    // Integer form of `cumulative/total >= level`: cum * 10 >= tenths * total.
    let total = table.total() as u128;
    let threshold = level.tenths() as u128 * total;
    let mut words = HashSet::new();
    let mut cum: u128 = 0;
    for word in ordering {
        if cum * 10 >= threshold {
            break;
        }
        cum += table.count(word) as u128;
        words.insert(word.clone());
    }
    Ok(RemovalSet { method, level, seed, words })
}
