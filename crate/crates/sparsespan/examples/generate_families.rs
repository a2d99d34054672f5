//! Tour of the instance generators and the edge-list document format.
//!
//! Run with: cargo run --release --example generate_families

use sparsespan::connectivity::{is_k_arc_connected, is_k_connected};
use sparsespan::generate::*;
use sparsespan::io::{parse_graph, serialize_graph};

fn main() {
    let dk = gen_dk(3, 9).unwrap();
    println!("dk(3,9): n=9 m={} 3-connected={}", dk.edge_count(), is_k_connected(&dk, 3));

    let tree = gen_doubled_tree(7, 2, 1).unwrap();
    println!(
        "doubled_tree(7,2): m={} 2-arc-connected={}",
        tree.edge_count(),
        is_k_arc_connected(&tree, 2)
    );

    let pc = gen_power_cycle_tournament(11, 0).unwrap();
    println!(
        "power_cycle_tournament(11): min degrees {}/{}, 5-connected={}",
        pc.min_out_degree(),
        pc.min_in_degree(),
        is_k_connected(&pc, 5)
    );

    let g = gen_g_family(5, 5, 2, 4).unwrap();
    println!(
        "g_family(5,5,2,4): n={} complement max degree {}",
        g.n(),
        g.complement_max_degree()
    );

    let t = gen_t_family(5, 5, 2).unwrap();
    println!("t_family(5,5,2): n={} (a tournament: {})", t.n(), t.is_oriented());

    let (dense, attempts) = gen_random_dense(40, 3, 2, 5).unwrap();
    println!(
        "random_dense(40,3,2): attempts={attempts} complement max degree {}",
        dense.complement_max_degree()
    );

    // Round-trip through the text format.
    let text = serialize_graph(&tree);
    let back = parse_graph(&text).unwrap();
    println!("round trip multigraph: {} (header {:?})", back == tree, text.lines().next().unwrap());
}
