//! Connectivity verifiers with witness cuts on the extremal families.
//!
//! Run with: cargo run --release --example verify_connectivity

use sparsespan::connectivity::{arc_connectivity_witness, vertex_connectivity_witness};
use sparsespan::generate::{gen_dk, gen_doubled_tree};

fn main() {
    // DK_{2,4}: strongly 2-connected, the small side is the unique 2-cut.
    let dk = gen_dk(2, 6).unwrap();
    for k in 1..=3usize {
        match vertex_connectivity_witness(&dk, k) {
            None => println!("DK_2,4 is strongly {k}-connected"),
            Some(w) => println!(
                "DK_2,4 is not strongly {k}-connected: separator {:?} cuts {} -> {}",
                w.separator, w.pair.0, w.pair.1
            ),
        }
    }

    // Doubled tree: every tree edge bundle is a 2k-arc cut.
    let tree = gen_doubled_tree(9, 2, 5).unwrap();
    for k in 2..=3usize {
        match arc_connectivity_witness(&tree, k) {
            None => println!("doubled tree is strongly {k}-arc-connected"),
            Some(w) => println!(
                "doubled tree is not strongly {k}-arc-connected: cut {:?} severs {} -> {}",
                w.edges, w.pair.0, w.pair.1
            ),
        }
    }
}
