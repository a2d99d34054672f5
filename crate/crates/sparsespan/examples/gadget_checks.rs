//! Building the three reachability gadgets and replaying their definitional
//! clauses with the exhaustive removal checker.
//!
//! Run with: cargo run --release --example gadget_checks

use sparsespan::connectivity::{disjoint_paths, PathSystem};
use sparsespan::gadgets::*;
use sparsespan::generate::gen_random_tournament;
use sparsespan::graph::{minimalize_path, Mode, Path};
use sparsespan::minimal::minimal_k_connected;

fn main() {
    let k = 2usize;
    let (g, _) = gen_random_tournament(100, k, 3).unwrap();
    let minimal = minimal_k_connected(&g, k).unwrap();
    let budget = RemovalBudget::Auto { seed: 0 };

    let escaper = build_escaper(&g, &minimal, &[0, 7, 19, 33], k, Mode::Vertex).unwrap();
    let check = check_escaper(&g, &escaper, &budget);
    println!(
        "escaper over 4 vertices: {} edges, {} exits; E1-E3 hold over {} removal sets: {}",
        escaper.edges.count(),
        escaper.exits.len(),
        check.sets_checked,
        check.ok
    );

    // Paths with endpoints inside the exempt set, then the absorber.
    let sys = disjoint_paths(&g, &[0, 1], &[2, 3], Mode::Vertex).unwrap();
    let paths: Vec<Path> = sys.paths.iter().map(|p| minimalize_path(&g, p).unwrap()).collect();
    let sys = PathSystem { paths, mode: Mode::Vertex, pairing: None };
    let absorber = build_absorber(&g, &minimal, &[0, 1, 2, 3], &sys, k, Mode::Vertex).unwrap();
    let check = check_absorber(&g, &absorber, &budget);
    println!(
        "absorber: {} edges (paths {}, escape {}, linkage {}, conn {}); A1-A4 over {} sets: {}",
        absorber.edges.count(),
        absorber.parts.path_edges,
        absorber.parts.escape_edges,
        absorber.parts.linkage_edges,
        absorber.parts.conn_edges,
        check.sets_checked,
        check.ok
    );

    // A hub serving the absorber anchors needs a trio; reuse the pipeline's.
    let params = sparsespan::pipeline::preflight(400, k, 0, Mode::Vertex).unwrap();
    let (big, _) = gen_random_tournament(400, k, 4).unwrap();
    let trio = sparsespan::dominance::build_trio(&big, k, params.trio).unwrap();
    let excluded = trio.excluded();
    let served: Vec<u32> = (0..400u32).filter(|v| !excluded.contains(v)).take(6).collect();
    let hub = build_hub(&big, &trio, &served, &served, k, params.fan_target, Mode::Vertex).unwrap();
    let check = check_hub(&big, &hub, &budget);
    println!(
        "hub: {} edges onto sinks {:?}; H1-H3 over {} sets: {}",
        hub.edges.count(),
        hub.a0,
        check.sets_checked,
        check.ok
    );
}
