//! Word substitution: every character of a removed word is overwritten with
//! an asterisk or a seed-deterministic random character, so the distorted
//! text keeps the length and word positions of the original.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::removal::RemovalSet;
use super::tokenize::{Token, TokenStream};
use super::{Result, TextError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Substitution {
    Asterisk,
    RandomChar,
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Substitution::Asterisk => "asterisk",
            Substitution::RandomChar => "randomchar",
        })
    }
}

impl std::str::FromStr for Substitution {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "asterisk" => Ok(Substitution::Asterisk),
            "randomchar" => Ok(Substitution::RandomChar),
            other => Err(format!("unknown substitution method '{other}'")),
        }
    }
}

/// Printable ASCII without space (keeps tokenization intact) and without
/// '*' (keeps the two substitution methods distinguishable).
fn random_charset() -> Vec<u8> {
    (33u8..=126).filter(|&b| b != b'*').collect()
}

#[derive(Clone, Debug)]
pub struct DistortedDocument {
    pub doc_id: String,
    pub bytes: Vec<u8>,
    pub words_total: usize,
    pub words_replaced: usize,
}

pub fn distort(
    doc_id: &str,
    doc: &TokenStream,
    set: &RemovalSet,
    substitution: Substitution,
    seed: u64,
) -> DistortedDocument {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let charset = random_charset();
    let mut bytes = Vec::new();
    let mut words_total = 0;
    let mut words_replaced = 0;

    for token in &doc.tokens {
        match token {
            Token::Separator(s) => bytes.extend_from_slice(s.as_bytes()),
            Token::Word(w) => {
                words_total += 1;
                if set.contains(w) {
                    words_replaced += 1;
                    for _ in 0..w.len() {
                        bytes.push(match substitution {
                            Substitution::Asterisk => b'*',
                            Substitution::RandomChar => {
                                charset[rng.gen_range(0..charset.len())]
                            }
                        });
                    }
                } else {
                    bytes.extend_from_slice(w.as_bytes());
                }
            }
        }
    }
    DistortedDocument { doc_id: doc_id.to_string(), bytes, words_total, words_replaced }
}

/// Fraction of words overwritten by the removal set.
pub fn percentage_substituted(doc: &DistortedDocument) -> Result<f64> {
    if doc.words_total == 0 {
        return Err(TextError::NoWords);
    }
    Ok(doc.words_replaced as f64 / doc.words_total as f64)
}
