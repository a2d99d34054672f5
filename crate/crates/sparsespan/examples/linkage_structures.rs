//! Sparse linkage structures: an ordered forward edge selection that keeps
//! every vertex linked to both window ends under removals.
//!
//! Run with: cargo run --release --example linkage_structures

use sparsespan::generate::gen_random_tournament;
use sparsespan::linkage::{build_good, Removal};

fn main() {
    let (n, k) = (60usize, 3usize);
    let (g, _) = gen_random_tournament(n, 1, 42).unwrap();
    let lk = build_good(&g, k).unwrap();
    println!(
        "n = {n}, k = {k}, t = {}: selected {} forward edges (target {}, cap {})",
        lk.t, lk.achieved_edges, lk.target_edges, lk.cap_edges
    );
    println!("goodness check: {}", lk.is_good());

    // Walks survive any k-1 vertex removals.
    let u = lk.order[n / 2];
    let removed: std::collections::BTreeSet<u32> =
        lk.order[2..4].iter().copied().collect();
    let ans = lk.link_query(u, &Removal::Vertices(removed.clone())).unwrap();
    println!(
        "with {removed:?} removed, vertex {u} is reached from {} (first window) and reaches {} (last window)",
        ans.from_vertex, ans.to_vertex
    );
    println!(
        "  inbound path: {:?}\n  outbound path: {:?}",
        ans.path_to_u.vertices(),
        ans.path_from_u.vertices()
    );
}
