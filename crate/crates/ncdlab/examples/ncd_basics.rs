//! Normalized compression distance in practice: self-distance, topical
//! similarity, and the full matrix over the bundled corpus.

use std::path::Path;

use ncdlab::compress::backend_by_name;
use ncdlab::{ncd, ncd_matrix};

fn main() -> anyhow::Result<()> {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets/corpus");
    let load = |name: &str| std::fs::read(corpus.join(name));
    let astro_a = load("astro_0.txt")?;
    let astro_b = load("astro_1.txt")?;
    let botany = load("botany_0.txt")?;

    for name in ["lz", "bw", "ppm"] {
        let backend = backend_by_name(name)?;
        println!(
            "{name}: d(x,x)={:.3}  d(astro,astro')={:.3}  d(astro,botany)={:.3}",
            ncd(backend.as_ref(), &astro_a, &astro_a)?,
            ncd(backend.as_ref(), &astro_a, &astro_b)?,
            ncd(backend.as_ref(), &astro_a, &botany)?,
        );
    }

    // A full matrix over the bundled corpus; same-topic cells are smaller.
    let docs = ncdlab::experiment::load_dataset(&corpus)?;
    let backend = backend_by_name("bw")?;
    let matrix = ncd_matrix(backend.as_ref(), &docs)?;
    print!("{}", matrix.to_csv());
    Ok(())
}
