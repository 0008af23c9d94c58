//! Randomized property tests for the distortion pipeline and passage
//! segmentation.

use proptest::collection::vec;
use proptest::prelude::*;

use ncdlab::textops::{
    build_removal_set, distort, normalize_and_tokenize, parse_frequency_list, shuffle_variant,
    FrequencyTable, Level, Selection, ShuffleMode, Substitution,
};

fn word() -> impl Strategy<Value = String> {
    "[a-z]{1,8}"
}

/// A frequency table plus a document body mixing in-table and novel words.
fn corpus_and_doc() -> impl Strategy<Value = (FrequencyTable, String)> {
    (vec((word(), 1u64..10_000), 3..40), vec(word(), 1..200)).prop_map(|(counts, extra)| {
        let mut list = String::new();
        let mut seen = std::collections::HashSet::new();
        for (w, c) in &counts {
            if seen.insert(w.clone()) {
                list.push_str(&format!("{w}\t{c}\n"));
            }
        }
        let table = parse_frequency_list(&list).unwrap();
        let mut doc = String::new();
        for (i, w) in counts.iter().map(|(w, _)| w).chain(extra.iter()).enumerate() {
            doc.push_str(w);
            doc.push(if i % 9 == 8 { '\n' } else { ' ' });
        }
        (table, doc)
    })
}

fn selections() -> impl Strategy<Value = Selection> {
    prop_oneof![Just(Selection::Mfw), Just(Selection::Lfw), Just(Selection::Rw)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distortion_preserves_length(
        (table, text) in corpus_and_doc(),
        selection in selections(),
        tenths in 0u8..=10,
        substitution in prop_oneof![Just(Substitution::Asterisk), Just(Substitution::RandomChar)],
        seed in any::<u64>(),
    ) {
        let doc = normalize_and_tokenize(text.as_bytes());
        let level = Level::from_tenths(tenths).unwrap();
        let set = build_removal_set(&table, selection, level, seed).unwrap();
        let out = distort("d", &doc, &set, substitution, seed);
        // Substitution overwrites in place: byte length never changes.
        prop_assert_eq!(out.bytes.len(), doc.text().len());
    }

    #[test]
    fn removal_sets_nest_by_level(
        (table, _) in corpus_and_doc(),
        selection in selections(),
        seed in any::<u64>(),
    ) {
        let mut prev: Option<ncdlab::textops::RemovalSet> = None;
        for level in Level::all() {
            let set = build_removal_set(&table, selection, level, seed).unwrap();
            if let Some(p) = &prev {
                prop_assert!(p.words().is_subset(set.words()));
            }
            prev = Some(set);
        }
    }

    #[test]
    fn full_level_is_selection_independent((table, _) in corpus_and_doc(), seed in any::<u64>()) {
        let mfw = build_removal_set(&table, Selection::Mfw, Level::FULL, seed).unwrap();
        let lfw = build_removal_set(&table, Selection::Lfw, Level::FULL, seed).unwrap();
        prop_assert_eq!(mfw.words(), lfw.words());
    }

    #[test]
    fn out_of_corpus_words_survive(
        (table, text) in corpus_and_doc(),
        selection in selections(),
        seed in any::<u64>(),
    ) {
        let doc = normalize_and_tokenize(text.as_bytes());
        let set = build_removal_set(&table, selection, Level::FULL, seed).unwrap();
        let out = distort("d", &doc, &set, Substitution::Asterisk, seed);
        let distorted = String::from_utf8(out.bytes).unwrap();
        let normalized = doc.text();
        for (a, b) in normalized.split_whitespace().zip(distorted.split_whitespace()) {
            if !table.contains(a) {
                prop_assert_eq!(a, b, "novel word was touched");
            }
        }
    }

    #[test]
    fn shuffle_preserves_byte_multiset(
        (table, text) in corpus_and_doc(),
        tenths in 0u8..=10,
        mode in prop_oneof![
            Just(ShuffleMode::Asterisks), Just(ShuffleMode::Words), Just(ShuffleMode::All)
        ],
        seed in any::<u64>(),
    ) {
        let doc = normalize_and_tokenize(text.as_bytes());
        let level = Level::from_tenths(tenths).unwrap();
        let set = build_removal_set(&table, Selection::Mfw, level, seed).unwrap();
        let out = distort("d", &doc, &set, Substitution::Asterisk, seed);
        let shuffled = shuffle_variant(&out, mode, seed);
        let mut a = out.bytes.clone();
        let mut b = shuffled.bytes.clone();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn distortion_is_seed_deterministic(
        (table, text) in corpus_and_doc(),
        selection in selections(),
        tenths in 0u8..=10,
        seed in any::<u64>(),
    ) {
        let doc = normalize_and_tokenize(text.as_bytes());
        let level = Level::from_tenths(tenths).unwrap();
        let run = || {
            let set = build_removal_set(&table, selection, level, seed).unwrap();
            let out = distort("d", &doc, &set, Substitution::RandomChar, seed);
            shuffle_variant(&out, ShuffleMode::None, seed).bytes
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn segmentation_matches_stride_oracle(
        len in 0usize..40_000,
        window_kb in 1usize..8,
        overlap_frac in 0usize..8,
    ) {
        let window = window_kb * 1024;
        let overlap = overlap_frac * window / 8;
        let doc = vec![0u8; len.max(1)];
        let passages = ncdlab::search::segment("d", "t", &doc, window_kb, overlap).unwrap();
        prop_assert_eq!(passages[0].offset, 0);
        for w in passages.windows(2) {
            // fixed stride; every passage before the last is full-width
            prop_assert_eq!(w[1].offset - w[0].offset, window - overlap);
            prop_assert_eq!(w[0].bytes.len(), window);
            // the earlier passage must not already reach the end
            prop_assert!(w[0].offset + window < doc.len());
        }
        let last = passages.last().unwrap();
        prop_assert_eq!(last.offset + last.bytes.len(), doc.len());
    }
}
