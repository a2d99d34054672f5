//! Instance generators: the extremal families, the lower-bound
//! constructions, and seeded random corpora. All randomness flows through
//! the crate's deterministic generator, so a (family, parameters, seed)
//! triple always reproduces the same graph.

use crate::connectivity::{is_k_arc_connected, is_k_connected};
use crate::error::{Error, Result};
use crate::graph::DirectedMultigraph;
use crate::util::Rng;

/// DK_{k,n-k}: the complete bipartite digraph, every cross pair a directed
/// 2-cycle. 2k(n-k) edges, strongly k-connected, and extremal for the
/// classic 2k(n-k) bound.
pub fn gen_dk(k: usize, n: usize) -> Result<DirectedMultigraph> {
    if k < 1 || k >= n {
        return Err(Error::input(format!("gen_dk needs 1 <= k < n, got k={k} n={n}")));
    }
    let mut edges = Vec::with_capacity(2 * k * (n - k));
    for a in 0..k as u32 {
        for b in k as u32..n as u32 {
            edges.push((a, b, 1));
            edges.push((b, a, 1));
        }
    }
    DirectedMultigraph::from_edges(n, &edges)
}

/// Random labeled tree with every edge replaced by k directed 2-cycles:
/// 2k(n-1) edges, strongly k-arc-connected, and extremal for 2k(n-1).
pub fn gen_doubled_tree(n: usize, k: usize, seed: u64) -> Result<DirectedMultigraph> {
    if n < 2 || k < 1 {
        return Err(Error::input("gen_doubled_tree needs n >= 2 and k >= 1"));
    }
    let mut rng = Rng::new(seed);
    let mut edges = Vec::with_capacity(2 * (n - 1));
    for v in 1..n as u32 {
        let parent = rng.below(v as u64) as u32;
        edges.push((parent, v, k as u32));
        edges.push((v, parent, k as u32));
    }
    DirectedMultigraph::from_edges(n, &edges)
}

/// Tournament containing the floor((n-1)/2)-th power of a directed n-cycle;
/// leftover antipodal pairs (even n) are oriented by the seeded generator.
/// Min in/out degrees are at least floor((n-1)/2).
pub fn gen_power_cycle_tournament(n: usize, seed: u64) -> Result<DirectedMultigraph> {
    if n < 3 {
        return Err(Error::input("gen_power_cycle_tournament needs n >= 3"));
    }
    let p = (n - 1) / 2;
    let mut rng = Rng::new(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for d in 1..=p as u32 {
            edges.push((u, (u + d) % n as u32, 1));
        }
    }
    if n % 2 == 0 {
        // Pairs at distance n/2 are covered in neither direction.
        let half = (n / 2) as u32;
        for u in 0..half {
            let v = u + half;
            if rng.coin() {
                edges.push((u, v, 1));
            } else {
                edges.push((v, u, 1));
            }
        }
    }
    DirectedMultigraph::from_edges(n, &edges)
}

/// Power-of-cycle tournament with the antipodal completion fixed to
/// low-to-high orientation; used where a seedless deterministic tournament
/// block is required.
fn power_cycle_block(n: usize) -> Vec<(u32, u32)> {
    let p = (n - 1) / 2;
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for d in 1..=p as u32 {
            edges.push((u, (u + d) % n as u32));
        }
    }
    if n % 2 == 0 {
        let half = (n / 2) as u32;
        for u in 0..half {
            edges.push((u, u + half));
        }
    }
    edges
}

/// The lower-bound oriented graph on n1 + n2 + dbar + 1 vertices: an
/// edgeless block G1, power-of-cycle tournaments T2 and T3, all of G1 -> T3
/// and T2 -> G1 and T2 -> T3 except that the pairs (a_i, b_i) for i < k are
/// reversed. Strongly k-connected with complement degree at most dbar, and
/// every spanning subgraph of min degree k has at least kn + k·dbar edges.
pub fn gen_g_family(n1: usize, n2: usize, k: usize, dbar: usize) -> Result<DirectedMultigraph> {
    if k < 1 || n1 < 2 * k + 1 || n2 < 2 * k + 1 {
        return Err(Error::input(format!(
            "gen_g_family needs n1, n2 >= 2k+1, got n1={n1} n2={n2} k={k}"
        )));
    }
    let g1: Vec<u32> = (0..(dbar + 1) as u32).collect();
    let t2_base = (dbar + 1) as u32;
    let t3_base = t2_base + n1 as u32;
    let n = dbar + 1 + n1 + n2;
    let mut edges = Vec::new();
    for (u, v) in power_cycle_block(n1) {
        edges.push((t2_base + u, t2_base + v, 1));
    }
    for (u, v) in power_cycle_block(n2) {
        edges.push((t3_base + u, t3_base + v, 1));
    }
    // a_i, b_i: the k lowest-index vertices of T2 and T3.
    for &u in &g1 {
        for w in 0..n2 as u32 {
            edges.push((u, t3_base + w, 1));
        }
    }
    for v in 0..n1 as u32 {
        for &u in &g1 {
            edges.push((t2_base + v, u, 1));
        }
    }
    for v in 0..n1 as u32 {
        for w in 0..n2 as u32 {
            if v == w && (v as usize) < k {
                edges.push((t3_base + w, t2_base + v, 1)); // b_i -> a_i
            } else {
                edges.push((t2_base + v, t3_base + w, 1));
            }
        }
    }
    DirectedMultigraph::from_edges(n, &edges)
}

/// The tournament variant: G1 replaced by a k-vertex transitive tournament.
/// n = n1 + n2 + k vertices; every spanning subgraph of min degree k has at
/// least kn + k(k-1)/2 edges.
pub fn gen_t_family(n1: usize, n2: usize, k: usize) -> Result<DirectedMultigraph> {
    if k < 1 || n1 < 2 * k + 1 || n2 < 2 * k + 1 {
        return Err(Error::input(format!(
            "gen_t_family needs n1, n2 >= 2k+1, got n1={n1} n2={n2} k={k}"
        )));
    }
    let base = gen_g_family(n1, n2, k, k - 1)?;
    let mut edges: Vec<(u32, u32, u32)> = base.edges().collect();
    // Transitive tournament inside the first block (was edgeless).
    for u in 0..k as u32 {
        for v in u + 1..k as u32 {
            edges.push((u, v, 1));
        }
    }
    DirectedMultigraph::from_edges(base.n(), &edges)
}

/// T_{2mk+1, 2mk+1, mk}: the (5mk+2)-vertex tournament whose min-degree-k
/// spanning subgraphs are forced to carry vertices of degree above k.
pub fn gen_t_lower(m: usize, k: usize) -> Result<DirectedMultigraph> {
    if m < 1 || k < 1 {
        return Err(Error::input("gen_t_lower needs m, k >= 1"));
    }
    gen_t_family(2 * m * k + 1, 2 * m * k + 1, m * k)
}

const REJECTION_BUDGET: usize = 64;

/// Seeded dense digraph: a complement sampled with max degree <= dbar, every
/// remaining pair adjacent (about a quarter as 2-cycles), resampled until
/// strongly k-connected. Returns the graph and the attempt count.
pub fn gen_random_dense(
    n: usize,
    dbar: usize,
    k: usize,
    seed: u64,
) -> Result<(DirectedMultigraph, usize)> {
    if n < k + 1 {
        return Err(Error::input("gen_random_dense needs n >= k+1"));
    }
    let mut rng = Rng::new(seed);
    for attempt in 1..=REJECTION_BUDGET {
        // Complement: random pairs respecting the degree cap.
        let mut comp_deg = vec![0usize; n];
        let mut comp = std::collections::BTreeSet::new();
        for _ in 0..n * dbar {
            let u = rng.below(n as u64) as u32;
            let v = rng.below(n as u64) as u32;
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if comp.contains(&key) {
                continue;
            }
            if comp_deg[u as usize] < dbar && comp_deg[v as usize] < dbar {
                comp.insert(key);
                comp_deg[u as usize] += 1;
                comp_deg[v as usize] += 1;
            }
        }
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if comp.contains(&(u, v)) {
                    continue;
                }
                if rng.chance(1, 4) {
                    edges.push((u, v, 1));
                    edges.push((v, u, 1));
                } else if rng.coin() {
                    edges.push((u, v, 1));
                } else {
                    edges.push((v, u, 1));
                }
            }
        }
        let g = DirectedMultigraph::from_edges(n, &edges)?;
        debug_assert!(g.complement_max_degree() <= dbar);
        if is_k_connected(&g, k) {
            return Ok((g, attempt));
        }
    }
    Err(Error::input(format!(
        "gen_random_dense exhausted {REJECTION_BUDGET} attempts; raise n or lower k/dbar"
    )))
}

/// Seeded random tournament, resampled until strongly k-connected.
pub fn gen_random_tournament(n: usize, k: usize, seed: u64) -> Result<(DirectedMultigraph, usize)> {
    if n < k + 1 {
        return Err(Error::input("gen_random_tournament needs n >= k+1"));
    }
    let mut rng = Rng::new(seed);
    for attempt in 1..=REJECTION_BUDGET {
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.coin() {
                    edges.push((u, v, 1));
                } else {
                    edges.push((v, u, 1));
                }
            }
        }
        let g = DirectedMultigraph::from_edges(n, &edges)?;
        if is_k_connected(&g, k) {
            return Ok((g, attempt));
        }
    }
    Err(Error::input(format!(
        "gen_random_tournament exhausted {REJECTION_BUDGET} attempts; raise n or lower k"
    )))
}

/// Seeded random tournament resampled until strongly k-ARC-connected.
pub fn gen_random_arc_tournament(
    n: usize,
    k: usize,
    seed: u64,
) -> Result<(DirectedMultigraph, usize)> {
    if n < 3 {
        return Err(Error::input("needs n >= 3"));
    }
    let mut rng = Rng::new(seed);
    for attempt in 1..=REJECTION_BUDGET {
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.coin() {
                    edges.push((u, v, 1));
                } else {
                    edges.push((v, u, 1));
                }
            }
        }
        let g = DirectedMultigraph::from_edges(n, &edges)?;
        if is_k_arc_connected(&g, k) {
            return Ok((g, attempt));
        }
    }
    Err(Error::input(format!(
        "gen_random_arc_tournament exhausted {REJECTION_BUDGET} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_k_arc_connected, is_k_connected};

    #[test]
    fn dk_examples() {
        let g = gen_dk(2, 6).unwrap();
        assert_eq!(g.edge_count(), 16);
        let one = gen_dk(1, 2).unwrap();
        assert_eq!(one.edge_count(), 2);
        assert!(one.has_edge(0, 1) && one.has_edge(1, 0));
        assert!(is_k_connected(&gen_dk(3, 9).unwrap(), 3));
        assert!(gen_dk(4, 4).is_err());
    }

    #[test]
    fn doubled_tree_examples() {
        let g = gen_doubled_tree(7, 2, 3).unwrap();
        assert_eq!(g.edge_count(), 24);
        assert!(is_k_arc_connected(&g, 2));
        assert!(!is_k_arc_connected(&g, 3));
        let tiny = gen_doubled_tree(2, 1, 0).unwrap();
        assert_eq!(tiny.edge_count(), 2);
    }

    #[test]
    fn power_cycle_examples() {
        let t = gen_power_cycle_tournament(5, 1).unwrap();
        assert!(t.is_oriented());
        assert!(t.min_out_degree() >= 2 && t.min_in_degree() >= 2);

        let tri = gen_power_cycle_tournament(3, 0).unwrap();
        assert_eq!(tri.edge_count(), 3);
        assert!(is_k_connected(&tri, 1));

        for n in [5usize, 8, 11, 15] {
            let t = gen_power_cycle_tournament(n, 9).unwrap();
            assert!(t.is_oriented());
            assert_eq!(t.edge_count(), n * (n - 1) / 2);
            let k = (n - 1) / 2;
            assert!(is_k_connected(&t, k), "power cycle n={n} k={k}");
        }
    }

    #[test]
    fn g_family_examples() {
        let g = gen_g_family(5, 5, 2, 4).unwrap();
        assert_eq!(g.n(), 15);
        assert!(g.complement_max_degree() <= 4);
        assert!(g.is_oriented());
        assert!(is_k_connected(&g, 2));
        assert!(gen_g_family(4, 5, 2, 1).is_err());
    }

    #[test]
    fn t_family_examples() {
        let t = gen_t_family(5, 5, 2).unwrap();
        assert_eq!(t.n(), 12);
        assert!(t.is_oriented());
        assert_eq!(t.edge_count(), 12 * 11 / 2); // a tournament
        assert!(is_k_connected(&t, 2));

        let tl = gen_t_lower(1, 5).unwrap();
        assert_eq!(tl.n(), 27);
        assert_eq!(tl.edge_count(), 27 * 26 / 2);
    }

    #[test]
    fn random_dense_examples() {
        let (g, _) = gen_random_dense(24, 0, 1, 5).unwrap();
        assert_eq!(g.complement_max_degree(), 0); // semicomplete
        let (g, _) = gen_random_dense(30, 4, 2, 6).unwrap();
        assert!(g.complement_max_degree() <= 4);
        assert!(is_k_connected(&g, 2));
        // Determinism.
        let (a, _) = gen_random_dense(30, 4, 2, 6).unwrap();
        assert_eq!(a, g);
    }

    #[test]
    fn small_generator_outputs_survive_exhaustive_cut_checks() {
        use crate::connectivity::tests_support::brute_is_k_connected;
        let dk = gen_dk(2, 6).unwrap();
        assert!(brute_is_k_connected(&dk, 2));
        assert!(!brute_is_k_connected(&dk, 3));
        let g = gen_g_family(3, 3, 1, 1).unwrap(); // n = 8
        assert!(brute_is_k_connected(&g, 1));
        let t = gen_t_family(3, 3, 1).unwrap(); // n = 7
        assert!(brute_is_k_connected(&t, 1));
        let pc = gen_power_cycle_tournament(9, 4).unwrap();
        assert!(brute_is_k_connected(&pc, 4));
    }

    #[test]
    fn random_tournament_is_tournament() {
        let (g, _) = gen_random_tournament(15, 1, 2).unwrap();
        assert!(g.is_oriented());
        assert_eq!(g.edge_count(), 15 * 14 / 2);
    }
}
