//! Sparsify a random strongly k-connected tournament down to kn + O(k^2)
//! edges and print the full report.
//!
//! Run with: cargo run --release --example sparsify_tournament

use sparsespan::connectivity::is_k_connected;
use sparsespan::generate::gen_random_tournament;
use sparsespan::pipeline::sparsify_vertex;

fn main() {
    let (n, k, seed) = (450usize, 2usize, 7u64);
    let (tournament, attempts) = gen_random_tournament(n, k, seed).unwrap();
    println!(
        "tournament: n = {n}, {} edges, strongly {k}-connected after {attempts} attempt(s)",
        tournament.edge_count()
    );

    let (sparse, report) = sparsify_vertex(&tournament, k).unwrap();
    print!("{}", report.to_kv());
    println!(
        "kept {:.1}% of the edges; independent re-check: {}",
        100.0 * sparse.edge_count() as f64 / tournament.edge_count() as f64,
        is_k_connected(&sparse, k)
    );
}
