//! The contextual-information shuffles, defined on asterisk-distorted
//! texts: the document is re-tokenized on single spaces (separators
//! normalized to one space), each token slot is classified as a word slot
//! or an asterisk-run slot, and tokens are permuted within the chosen slot
//! class. Each asterisk run moves as a whole.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::distort::DistortedDocument;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShuffleMode {
    /// Leave the distorted text as produced.
    None,
    /// Permute asterisk runs among asterisk slots.
    Asterisks,
    /// Permute the surviving words among word slots.
    Words,
    /// Permute everything over all slots.
    All,
}

impl fmt::Display for ShuffleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShuffleMode::None => "none",
            ShuffleMode::Asterisks => "asterisks",
            ShuffleMode::Words => "words",
            ShuffleMode::All => "all",
        })
    }
}

impl std::str::FromStr for ShuffleMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(ShuffleMode::None),
            "asterisks" => Ok(ShuffleMode::Asterisks),
            "words" => Ok(ShuffleMode::Words),
            "all" => Ok(ShuffleMode::All),
            other => Err(format!("unknown shuffle mode '{other}'")),
        }
    }
}

fn is_asterisk_run(token: &str) -> bool {
    token.bytes().all(|b| b == b'*')
}

pub fn shuffle_variant(doc: &DistortedDocument, mode: ShuffleMode, seed: u64) -> DistortedDocument {
    if mode == ShuffleMode::None {
        return doc.clone();
    }
    // Alternating whitespace runs and tokens; separators stay in place, so
    // the byte multiset (and in particular the length) is preserved.
    let text = String::from_utf8_lossy(&doc.bytes).into_owned();
    let mut pieces: Vec<(bool, String)> = Vec::new(); // (is_token, text)
    for ch in text.chars() {
        let is_token = !ch.is_whitespace();
        match pieces.last_mut() {
            Some((t, s)) if *t == is_token => s.push(ch),
            _ => pieces.push((is_token, ch.to_string())),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let slots: Vec<usize> = pieces
        .iter()
        .enumerate()
        .filter(|(_, (is_token, s))| {
            *is_token
                && match mode {
                    ShuffleMode::All => true,
                    ShuffleMode::Asterisks => is_asterisk_run(s),
                    ShuffleMode::Words => !is_asterisk_run(s),
                    ShuffleMode::None => unreachable!(),
                }
        })
        .map(|(i, _)| i)
        .collect();
    let mut movable: Vec<String> = slots.iter().map(|&i| pieces[i].1.clone()).collect();
    movable.shuffle(&mut rng);
    for (&slot, token) in slots.iter().zip(movable) {
        pieces[slot].1 = token;
    }

    DistortedDocument {
        doc_id: doc.doc_id.clone(),
        bytes: pieces.into_iter().map(|(_, s)| s).collect::<String>().into_bytes(),
        words_total: doc.words_total,
        words_replaced: doc.words_replaced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> DistortedDocument {
        DistortedDocument {
            doc_id: "d".into(),
            bytes: text.as_bytes().to_vec(),
            words_total: 0,
            words_replaced: 0,
        }
    }

    fn tokens(d: &DistortedDocument) -> Vec<String> {
        String::from_utf8_lossy(&d.bytes)
            .split(' ')
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect()
    }

    #[test]
    fn none_is_identity() {
        let d = doc("anemia ** * healthy");
        assert_eq!(shuffle_variant(&d, ShuffleMode::None, 1).bytes, d.bytes);
    }

    #[test]
    fn asterisk_shuffle_keeps_words_in_place() {
        let d = doc("anemia ** * healthy");
        for seed in 0..20 {
            let out = tokens(&shuffle_variant(&d, ShuffleMode::Asterisks, seed));
            assert_eq!(out[0], "anemia");
            assert_eq!(out[3], "healthy");
            let mut runs = vec![out[1].clone(), out[2].clone()];
            runs.sort();
            assert_eq!(runs, ["*", "**"]);
        }
    }

    #[test]
    fn word_shuffle_keeps_asterisks_in_place() {
        let d = doc("a ** b ***");
        for seed in 0..20 {
            let out = tokens(&shuffle_variant(&d, ShuffleMode::Words, seed));
            assert_eq!(out[1], "**");
            assert_eq!(out[3], "***");
            let mut words = vec![out[0].clone(), out[2].clone()];
            words.sort();
            assert_eq!(words, ["a", "b"]);
        }
    }

    #[test]
    fn multiset_preserved_by_every_mode() {
        let d = doc("one ** two *** three * four");
        let mut reference = tokens(&d);
        reference.sort();
        for mode in [ShuffleMode::Asterisks, ShuffleMode::Words, ShuffleMode::All] {
            let mut out = tokens(&shuffle_variant(&d, mode, 3));
            out.sort();
            assert_eq!(out, reference, "{mode}");
        }
    }

    #[test]
    fn seed_determinism() {
        let d = doc("one ** two *** three * four");
        for mode in [ShuffleMode::Asterisks, ShuffleMode::Words, ShuffleMode::All] {
            let a = shuffle_variant(&d, mode, 99);
            let b = shuffle_variant(&d, mode, 99);
            assert_eq!(a.bytes, b.bytes);
        }
    }

    #[test]
    fn separators_stay_in_place() {
        let d = doc("a  **   b\ncd");
        let out = shuffle_variant(&d, ShuffleMode::Words, 0);
        let text = String::from_utf8(out.bytes).unwrap();
        assert_eq!(text.len(), 12);
        assert!(text.contains("  ") && text.contains("   ") && text.contains('\n'));
        assert!(text.contains("**"));
    }
}
