//! Corpus frequency tables in the BNC list format: one `word<TAB>count`
//! line per word, `#` comment lines ignored, duplicate words summed.

use std::collections::BTreeMap;
use std::path::Path;

use super::{Result, TextError};

#[derive(Clone, Debug)]
pub struct FrequencyTable {
    entries: BTreeMap<String, u64>,
    total: u64,
    /// Decreasing count, ties by word.
    mfw_order: Vec<String>,
    /// Increasing count, ties by word.
    lfw_order: Vec<String>,
}

impl FrequencyTable {
    pub fn from_counts(counts: impl IntoIterator<Item = (String, u64)>) -> Result<Self> {
        let mut entries: BTreeMap<String, u64> = BTreeMap::new();
        for (word, count) in counts {
            *entries.entry(word).or_insert(0) += count;
        }
        entries.retain(|_, c| *c > 0);
        let total: u64 = entries.values().sum();
        if total == 0 {
            return Err(TextError::EmptyTable);
        }

        let mut mfw_order: Vec<String> = entries.keys().cloned().collect();
        // BTreeMap iteration already gives the lexicographic tie order.
        mfw_order.sort_by(|a, b| entries[b].cmp(&entries[a]).then_with(|| a.cmp(b)));
        let mut lfw_order: Vec<String> = entries.keys().cloned().collect();
        lfw_order.sort_by(|a, b| entries[a].cmp(&entries[b]).then_with(|| a.cmp(b)));

        Ok(Self { entries, total, mfw_order, lfw_order })
    }

    pub fn count(&self, word: &str) -> u64 {
        self.entries.get(word).copied().unwrap_or(0)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Vocabulary in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn mfw_order(&self) -> &[String] {
        &self.mfw_order
    }

    pub fn lfw_order(&self) -> &[String] {
        &self.lfw_order
    }
}

pub fn load_frequency_table(path: &Path) -> Result<FrequencyTable> {
    let text = std::fs::read_to_string(path)?;
    parse_frequency_list(&text)
}

pub fn parse_frequency_list(text: &str) -> Result<FrequencyTable> {
    let mut counts: Vec<(String, u64)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (word, count) = line.split_once('\t').ok_or_else(|| TextError::Parse {
            line: line_no,
            message: format!("expected 'word<TAB>count', got {line:?}"),
        })?;
        let count: u64 = count.trim().parse().map_err(|_| TextError::Parse {
            line: line_no,
            message: format!("count {count:?} is not a non-negative integer"),
        })?;
        if word.is_empty() {
            return Err(TextError::Parse { line: line_no, message: "empty word".into() });
        }
        counts.push((word.to_string(), count));
    }
    FrequencyTable::from_counts(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_table() {
        let t = parse_frequency_list("the\t100\nof\t60\nand\t40").unwrap();
        assert_eq!(t.total(), 200);
        assert_eq!(t.mfw_order(), ["the", "of", "and"]);
        assert_eq!(t.lfw_order(), ["and", "of", "the"]);
    }

    #[test]
    fn duplicates_are_summed() {
        let t = parse_frequency_list("the\t5\nthe\t5").unwrap();
        assert_eq!(t.count("the"), 10);
    }

    #[test]
    fn negative_count_rejected() {
        let err = parse_frequency_list("the\t-3").unwrap_err();
        assert!(matches!(err, TextError::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let t = parse_frequency_list("# header\nthe\t3\n\nof\t1\n").unwrap();
        assert_eq!(t.total(), 4);
    }

    #[test]
    fn zero_total_is_empty_table() {
        assert!(matches!(parse_frequency_list("the\t0"), Err(TextError::EmptyTable)));
    }

    #[test]
    fn ties_break_lexicographically() {
        let t = parse_frequency_list("b\t5\na\t5\nc\t1").unwrap();
        assert_eq!(t.mfw_order(), ["a", "b", "c"]);
        assert_eq!(t.lfw_order(), ["c", "a", "b"]);
    }
}
