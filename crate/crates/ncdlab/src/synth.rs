//! Seeded generation of English-like corpora.
//!
//! Everything here is deterministic in its seed: the shared vocabulary, the
//! per-topic keyword vocabularies (disjoint by construction) and the texts
//! sampled from them. The bundled desk corpus under `assets/` was produced
//! with this module (see `examples/generate_corpus.rs`), and the
//! planted-topic retrieval tests build their corpora the same way.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Common English function and content words, most frequent first.
const COMMON_WORDS: &[&str] = &[
    "the", "of", "and", "a", "in", "to", "it", "is", "was", "i", "for", "you", "he", "be",
    "with", "on", "that", "by", "at", "are", "not", "this", "but", "had", "they", "his",
    "from", "she", "which", "or", "we", "an", "there", "her", "were", "one", "do", "been",
    "all", "their", "has", "would", "will", "what", "if", "can", "when", "so", "no", "said",
    "who", "more", "about", "them", "some", "could", "him", "into", "its", "then", "two",
    "out", "time", "my", "like", "only", "did", "other", "me", "your", "now", "over", "just",
    "may", "these", "new", "also", "people", "any", "first", "very", "see", "way", "well",
    "our", "should", "because", "each", "much", "where", "through", "years", "still",
    "being", "day", "house", "himself", "between", "both", "life", "world", "after",
    "down", "again", "before", "must", "never", "under", "while", "same", "another",
    "thought", "great", "old", "place", "little", "made", "found", "came", "against",
];

const SYLLABLES: &[&str] = &[
    "ba", "co", "da", "fen", "gi", "hal", "ju", "kan", "lo", "mer", "nu", "per", "qui",
    "ros", "sa", "tel", "um", "ver", "wil", "xo", "yar", "zen", "bri", "cla", "dro",
];

/// Shared vocabulary: the common words followed by `extra` synthesized
/// content words, frequency order preserved.
pub fn shared_vocabulary(extra: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vocab: Vec<String> = COMMON_WORDS.iter().map(|w| w.to_string()).collect();
    while vocab.len() < COMMON_WORDS.len() + extra {
        let syllables = rng.gen_range(2..=4);
        let word: String = (0..syllables)
            .map(|_| SYLLABLES[rng.gen_range(0..SYLLABLES.len())])
            .collect();
        if !vocab.contains(&word) {
            vocab.push(word);
        }
    }
    vocab
}

/// Keyword vocabulary for one topic. The topic name is baked into every
/// keyword, so different topics never share one.
pub fn topic_keywords(topic: &str, count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x746f70);
    let mut words = Vec::with_capacity(count);
    while words.len() < count {
        let tail: String =
            (0..rng.gen_range(1..=2)).map(|_| SYLLABLES[rng.gen_range(0..SYLLABLES.len())]).collect();
        let word = format!("{topic}{tail}");
        if !words.contains(&word) {
            words.push(word);
        }
    }
    words
}

/// Zipf sampling index over `n` ranks.
fn zipf_index(rng: &mut ChaCha8Rng, n: usize) -> usize {
    // Inverse-CDF on the harmonic weights 1/(rank+1).
    let total: f64 = (1..=n).map(|r| 1.0 / r as f64).sum();
    let mut target = rng.gen_range(0.0..total);
    for r in 1..=n {
        target -= 1.0 / r as f64;
        if target <= 0.0 {
            return r - 1;
        }
    }
    n - 1
}

/// Samples a text of at least `target_bytes` bytes. Words come from the
/// shared vocabulary under a Zipf profile, interleaved with topic keywords
/// at `keyword_rate`. Sentences end with a period; lines wrap near 70
/// columns.
pub fn text(
    seed: u64,
    target_bytes: usize,
    shared: &[String],
    keywords: &[String],
    keyword_rate: f64,
) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::with_capacity(target_bytes + 80);
    let mut line = 0usize;
    let mut sentence = 0usize;
    while out.len() < target_bytes {
        let word = if !keywords.is_empty() && rng.gen_bool(keyword_rate) {
            &keywords[rng.gen_range(0..keywords.len())]
        } else {
            &shared[zipf_index(&mut rng, shared.len())]
        };
        out.push_str(word);
        line += word.len() + 1;
        sentence += 1;
        if sentence >= rng.gen_range(9..=16) {
            out.push('.');
            sentence = 0;
        }
        if line > 70 {
            out.push('\n');
            line = 0;
        } else {
            out.push(' ');
        }
    }
    out
}

/// A BNC-style frequency list (word<TAB>count) matching the Zipf profile
/// the sampler draws from, scaled to integer counts.
pub fn frequency_list(shared: &[String]) -> String {
    let mut out = String::from("# synthesized frequency list, Zipf profile\n");
    for (rank, word) in shared.iter().enumerate() {
        let count = (10_000_000.0 / (rank + 1) as f64).round() as u64;
        out.push_str(&format!("{word}\t{count}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let vocab = shared_vocabulary(100, 1);
        assert_eq!(vocab, shared_vocabulary(100, 1));
        let a = text(5, 2000, &vocab, &[], 0.0);
        let b = text(5, 2000, &vocab, &[], 0.0);
        assert_eq!(a, b);
        assert!(a.len() >= 2000);
    }

    #[test]
    fn topics_are_disjoint() {
        let a = topic_keywords("astro", 20, 3);
        let b = topic_keywords("botany", 20, 3);
        assert!(a.iter().all(|w| !b.contains(w)));
    }

    #[test]
    fn frequency_list_parses_with_expected_head() {
        let vocab = shared_vocabulary(50, 1);
        let table = crate::textops::parse_frequency_list(&frequency_list(&vocab)).unwrap();
        assert_eq!(table.mfw_order()[0], "the");
        assert_eq!(table.mfw_order()[1], "of");
    }
}
