//! Greedy extraction of a minimally strongly k-connected spanning subgraph,
//! with the induced-density bound checked on random vertex sets.
//!
//! Run with: cargo run --release --example minimal_subgraph

use sparsespan::generate::gen_random_tournament;
use sparsespan::minimal::{check_induced_density, minimal_k_connected};
use sparsespan::util::Rng;

fn main() {
    let (n, k) = (60usize, 2usize);
    let (g, _) = gen_random_tournament(n, k, 13).unwrap();
    let minimal = minimal_k_connected(&g, k).unwrap();
    println!(
        "n = {n}, k = {k}: {} -> {} edges (bound 2kn - k - 1 = {})",
        g.edge_count(),
        minimal.graph.edge_count(),
        2 * k * n - k - 1
    );

    let mut rng = Rng::new(99);
    let mut checked = 0;
    for _ in 0..200 {
        let size = 1 + rng.below(n as u64) as usize;
        let mut verts: Vec<u32> = (0..n as u32).collect();
        for i in (1..verts.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            verts.swap(i, j);
        }
        verts.truncate(size);
        assert!(check_induced_density(&minimal, &verts).unwrap());
        checked += 1;
    }
    println!("induced density bound 2k|U| - k - 1 held on {checked} random sets");
}
