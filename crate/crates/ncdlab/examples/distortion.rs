//! Text distortion: removal sets at increasing cumulative-frequency levels,
//! the substituted-word percentage curve, shuffle variants and the removal
//! bitmap.

use std::path::Path;

use ncdlab::textops::{
    build_removal_set, distort, emit_removal_map, load_frequency_table, normalize_and_tokenize,
    percentage_substituted, shuffle_variant, Level, Selection, ShuffleMode, Substitution,
};

fn main() -> anyhow::Result<()> {
    let assets = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets");
    let table = load_frequency_table(&assets.join("freq.tsv"))?;
    let doc = normalize_and_tokenize(&std::fs::read(assets.join("corpus/astro_0.txt"))?);

    // The percentage of substituted words grows with the cumulative
    // frequency level, steeply for MFW and slowly for LFW.
    println!("level  mfw%   lfw%   rw%");
    for level in Level::all() {
        let mut row = format!("{level}  ");
        for selection in [Selection::Mfw, Selection::Lfw, Selection::Rw] {
            let set = build_removal_set(&table, selection, level, 7)?;
            let out = distort("doc", &doc, &set, Substitution::Asterisk, 7);
            row.push_str(&format!("{:5.1}  ", 100.0 * percentage_substituted(&out)?));
        }
        println!("{row}");
    }

    // Shuffle variants scramble the distorted text at different scopes
    // while preserving its length and symbol multiset.
    let set = build_removal_set(&table, Selection::Mfw, Level::try_from(0.5)?, 7)?;
    let out = distort("doc", &doc, &set, Substitution::Asterisk, 7);
    for mode in [ShuffleMode::None, ShuffleMode::Asterisks, ShuffleMode::Words, ShuffleMode::All] {
        let variant = shuffle_variant(&out, mode, 7);
        assert_eq!(variant.bytes.len(), out.bytes.len());
        println!(
            "shuffle={mode}: {}",
            String::from_utf8_lossy(&variant.bytes[..72.min(variant.bytes.len())])
        );
    }

    // The removal map renders which words the set overwrites, as PBM P1.
    let pbm = emit_removal_map(&doc, &set, 64);
    println!("{}", pbm.lines().take(5).collect::<Vec<_>>().join("\n"));
    Ok(())
}
