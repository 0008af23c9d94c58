//! NCD-driven clustering: build a matrix over the bundled corpus, grow a
//! dendrogram with both methods, and score it against the known topics.

use std::path::Path;

use ncdlab::cluster::{build_dendrogram, clustering_error, BuildMethod, ClusterAssignment};
use ncdlab::compress::backend_by_name;
use ncdlab::ncd_matrix;

fn main() -> anyhow::Result<()> {
    let assets = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets");
    let docs = ncdlab::experiment::load_dataset(&assets.join("corpus"))?;
    let assignment = ClusterAssignment::load(&assets.join("assignment.json"))?;

    let backend = backend_by_name("bw")?;
    let matrix = ncd_matrix(backend.as_ref(), &docs)?;

    for method in [BuildMethod::Nj, BuildMethod::Quartet] {
        let tree = build_dendrogram(&matrix, method, 7)?;
        let report = clustering_error(&tree, &assignment)?;
        println!("{method:?}: achieved {} perfect {} error {}", report.achieved_sum, report.perfect_sum, report.error);
        println!("  {}", tree.newick());
    }

    // The DOT rendering is handy for graphviz: `dot -Tpng tree.dot`.
    let tree = build_dendrogram(&matrix, BuildMethod::Nj, 7)?;
    std::fs::write("tree.dot", tree.dot())?;
    println!("wrote tree.dot");
    Ok(())
}
