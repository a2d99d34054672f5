//! Arc-connectivity sparsification: a doubled tree is already extremal and
//! passes through the fallback untouched, while a dense digraph goes through
//! the full pipeline.
//!
//! Run with: cargo run --release --example sparsify_multigraph

use sparsespan::generate::{gen_doubled_tree, gen_random_dense};
use sparsespan::pipeline::sparsify_arc;

fn main() {
    let k = 2usize;
    let tree = gen_doubled_tree(20, k, 11).unwrap();
    println!(
        "doubled tree: n = 20, {} edges (2k(n-1) = {})",
        tree.edge_count(),
        2 * k * 19
    );
    let (out, report) = sparsify_arc(&tree, k).unwrap();
    println!(
        "branch {}: kept {} edges (already minimal: {})\n",
        report.branch,
        report.total_edges,
        out == tree
    );

    let (dense, _) = gen_random_dense(400, 2, k, 3).unwrap();
    println!("dense digraph: n = 400, {} edges", dense.edge_count());
    let (_, report) = sparsify_arc(&dense, k).unwrap();
    print!("{}", report.to_kv());
}
