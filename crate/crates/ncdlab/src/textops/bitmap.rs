//! Removal maps: one pixel per word in document order, black (1) for words
//! that remain, white (0) for substituted ones, emitted as plain-text PBM.

use super::removal::RemovalSet;
use super::tokenize::TokenStream;

/// Renders the removal map at `width` pixels per row. The final row is
/// padded with white. `width` must be at least 1.
pub fn emit_removal_map(doc: &TokenStream, set: &RemovalSet, width: usize) -> String {
    assert!(width >= 1, "bitmap width must be at least 1");
    let pixels: Vec<u8> = doc.words().map(|w| !set.contains(w) as u8).collect();
    let height = pixels.len().div_ceil(width);
    let mut out = format!("P1\n{width} {height}\n");
    for row in 0..height {
        let mut cells = Vec::with_capacity(width);
        for col in 0..width {
            cells.push(pixels.get(row * width + col).copied().unwrap_or(0).to_string());
        }
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textops::freq::parse_frequency_list;
    use crate::textops::removal::{build_removal_set, Level, Selection};
    use crate::textops::tokenize::normalize_and_tokenize;

    fn set_of(words_counts: &str, level: f64) -> RemovalSet {
        let t = parse_frequency_list(words_counts).unwrap();
        build_removal_set(&t, Selection::Mfw, Level::try_from(level).unwrap(), 0).unwrap()
    }

    #[test]
    fn empty_set_is_all_black() {
        let doc = normalize_and_tokenize(b"one two three four");
        let set = set_of("x\t1", 0.0);
        assert_eq!(emit_removal_map(&doc, &set, 2), "P1\n2 2\n1 1\n1 1\n");
    }

    #[test]
    fn full_vocabulary_is_all_white() {
        let doc = normalize_and_tokenize(b"one two");
        let set = set_of("one\t1\ntwo\t1", 1.0);
        assert_eq!(emit_removal_map(&doc, &set, 2), "P1\n2 1\n0 0\n");
    }

    #[test]
    fn second_word_in_set() {
        let doc = normalize_and_tokenize(b"ink two ash elm");
        let set = set_of("two\t1", 1.0);
        assert_eq!(emit_removal_map(&doc, &set, 2), "P1\n2 2\n1 0\n1 1\n");
    }

    #[test]
    fn ragged_last_row_padded_white() {
        let doc = normalize_and_tokenize(b"a b c");
        let set = set_of("x\t1", 0.0);
        assert_eq!(emit_removal_map(&doc, &set, 2), "P1\n2 2\n1 1\n1 0\n");
    }
}
