//! Dominator gadgets: small transitive tournaments whose sinks are reached
//! from almost everything in two steps, and trios bundling many of them with
//! a checked exceptional set.
//!
//! Run with: cargo run --release --example dominators_and_trios

use sparsespan::dominance::{build_trio, find_indominator, verify_trio, TrioParams, DOMINATOR_T};
use sparsespan::generate::gen_random_tournament;
use sparsespan::util::Frac;

fn main() {
    let (g, _) = gen_random_tournament(60, 1, 17).unwrap();

    let dom = find_indominator(&g, 0, DOMINATOR_T);
    println!(
        "5-indominator at 0: members {:?}, sink {}, |U+| = {} (out-neighbours of 0: {})",
        dom.members,
        dom.a,
        dom.u_plus.len(),
        g.out_nbr_count(0)
    );

    let params = TrioParams { t1: 1, t2: 1, d: 30, m: 5, u: Frac::new(7, 3) };
    let trio = build_trio(&g, 1, params).unwrap();
    println!(
        "trio: sinks {:?}, sources {:?}, |O*| = {}",
        trio.a_sinks(),
        trio.b_sources(),
        trio.o_star.len()
    );
    let report = verify_trio(&g, &trio, 1);
    println!(
        "verification: {} (failures: {:?})",
        report.ok(),
        report.failures()
    );
}
