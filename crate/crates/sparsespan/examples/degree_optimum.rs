//! The degree-relaxation optimum h(k, D): the minimum edges of a spanning
//! subgraph with all in/out-degrees at least k, by min-flow with demands.
//! The lower-bound families meet their forced values exactly.
//!
//! Run with: cargo run --release --example degree_optimum

use sparsespan::connectivity::min_degree_spanning_subgraph;
use sparsespan::generate::{gen_g_family, gen_t_family, gen_t_lower};

fn main() {
    // G family: h = kn + k·dbar exactly once dbar >= 2k - 1.
    for &(k, dbar) in &[(1usize, 1usize), (1, 3), (2, 3)] {
        let g = gen_g_family(2 * k + 1, 2 * k + 1, k, dbar).unwrap();
        let (_, h) = min_degree_spanning_subgraph(&g, k, false).unwrap();
        println!(
            "G family (k={k}, dbar={dbar}, n={}): h = {h}, kn + k·dbar = {}",
            g.n(),
            k * g.n() + k * dbar
        );
    }

    // Tournament family: h >= kn + k(k-1)/2.
    for &k in &[2usize, 3] {
        let t = gen_t_family(2 * k + 1, 2 * k + 1, k).unwrap();
        let (_, h) = min_degree_spanning_subgraph(&t, k, false).unwrap();
        println!(
            "T family (k={k}, n={}): h = {h} >= kn + k(k-1)/2 = {}",
            t.n(),
            k * t.n() + k * (k - 1) / 2
        );
    }

    // T_{11,11,5}: any min-degree-5 spanning subgraph carries over-degree
    // vertices.
    let t = gen_t_lower(1, 5).unwrap();
    let (sub, h) = min_degree_spanning_subgraph(&t, 5, false).unwrap();
    let over = (0..t.n() as u32)
        .filter(|&v| sub.in_degree(v) > 5 || sub.out_degree(v) > 5)
        .count();
    println!("T_11,11,5: h = {h}, over-degree vertices in the optimum: {over}");
}
