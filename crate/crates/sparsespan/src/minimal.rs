//! Greedy extraction of minimally strongly k-connected / k-arc-connected
//! spanning subgraphs, plus the induced-density bounds that hold for them.

use crate::connectivity::{
    arc_connectivity_witness, edge_is_removable, vertex_connectivity_witness,
};
use crate::error::{CutWitness, Error, Result};
use crate::graph::{DirectedMultigraph, Mode};
use crate::util::Rng;

#[derive(Debug, Clone)]
pub struct MinimalSubgraph {
    pub graph: DirectedMultigraph,
    pub mode: Mode,
    pub k: usize,
    /// Removed edge instances, in deletion order.
    pub deletion_log: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy)]
pub enum DeletionOrder {
    /// Larger combined endpoint degree first, ties by edge id.
    DegreeDesc,
    /// Seeded shuffle, for property tests.
    Shuffled(u64),
}

fn candidate_instances(g: &DirectedMultigraph, order: DeletionOrder) -> Vec<(u32, u32)> {
    let mut items: Vec<(u32, u32)> = Vec::with_capacity(g.edge_count());
    for (u, v, m) in g.edges() {
        for _ in 0..m {
            items.push((u, v));
        }
    }
    match order {
        DeletionOrder::DegreeDesc => {
            let mut degree = vec![0usize; g.n()];
            for v in 0..g.n() as u32 {
                degree[v as usize] = g.out_degree(v) + g.in_degree(v);
            }
            // Stable sort keeps edge-id order within equal scores.
            items.sort_by_key(|&(u, v)| {
                std::cmp::Reverse(degree[u as usize] + degree[v as usize])
            });
        }
        DeletionOrder::Shuffled(seed) => {
            let mut rng = Rng::new(seed);
            for i in (1..items.len()).rev() {
                let j = rng.below(i as u64 + 1) as usize;
                items.swap(i, j);
            }
        }
    }
    items
}

fn minimalize(
    g: &DirectedMultigraph,
    k: usize,
    mode: Mode,
    order: DeletionOrder,
) -> Result<MinimalSubgraph> {
    match mode {
        Mode::Vertex => {
            if let Some(w) = vertex_connectivity_witness(g, k) {
                return Err(Error::infeasible(
                    format!("input is not strongly {k}-connected"),
                    Some(CutWitness::Vertices(w)),
                ));
            }
        }
        Mode::Arc => {
            if let Some(w) = arc_connectivity_witness(g, k) {
                return Err(Error::infeasible(
                    format!("input is not strongly {k}-arc-connected"),
                    Some(CutWitness::Arcs(w)),
                ));
            }
        }
    }
    let mut current = g.clone();
    let mut log = Vec::new();
    // One pass suffices: once an edge is critical it stays critical in any
    // subgraph of the graph it was tested in.
    for (u, v) in candidate_instances(g, order) {
        if current.multiplicity(u, v) == 0 {
            continue; // defensive; instances never exceed multiplicity
        }
        if edge_is_removable(&mut current, u, v, k, mode) {
            current.remove_one_edge(u, v);
            log.push((u, v));
        }
    }
    Ok(MinimalSubgraph { graph: current, mode, k, deletion_log: log })
}

/// Minimally strongly k-connected spanning subgraph by greedy deletion.
pub fn minimal_k_connected(g: &DirectedMultigraph, k: usize) -> Result<MinimalSubgraph> {
    minimalize(g, k, Mode::Vertex, DeletionOrder::DegreeDesc)
}

/// Minimally strongly k-arc-connected spanning subgraph by greedy deletion.
pub fn minimal_k_arc_connected(g: &DirectedMultigraph, k: usize) -> Result<MinimalSubgraph> {
    minimalize(g, k, Mode::Arc, DeletionOrder::DegreeDesc)
}

/// Greedy minimalization with an explicit deletion order.
pub fn minimal_with_order(
    g: &DirectedMultigraph,
    k: usize,
    mode: Mode,
    order: DeletionOrder,
) -> Result<MinimalSubgraph> {
    minimalize(g, k, mode, order)
}

impl MinimalSubgraph {
    /// Induced-density bound for minimal subgraphs: 2k|U| - k - 1 in vertex
    /// mode, 2k(|U| - 1) in arc mode.
    pub fn density_bound(&self, set_size: usize) -> i64 {
        match self.mode {
            Mode::Vertex => 2 * (self.k * set_size) as i64 - self.k as i64 - 1,
            Mode::Arc => 2 * self.k as i64 * (set_size as i64 - 1),
        }
    }
}

/// True iff the subgraph induced on `set` meets the mode's density bound.
pub fn check_induced_density(m: &MinimalSubgraph, set: &[u32]) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::input("empty vertex set"));
    }
    let (sub, _) = m.graph.restrict(set)?;
    Ok(sub.edge_count() as i64 <= m.density_bound(set.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_k_arc_connected, is_k_connected};
    use crate::generate::{gen_dk, gen_doubled_tree, gen_random_tournament};
    use crate::graph::has_anti_directed_trail;
    use crate::util::Rng;

    fn complete_digraph(n: usize) -> DirectedMultigraph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                if u != v {
                    edges.push((u, v, 1));
                }
            }
        }
        DirectedMultigraph::from_edges(n, &edges).unwrap()
    }

    fn directed_cycle(n: usize) -> DirectedMultigraph {
        let edges: Vec<(u32, u32, u32)> =
            (0..n as u32).map(|v| (v, (v + 1) % n as u32, 1)).collect();
        DirectedMultigraph::from_edges(n, &edges).unwrap()
    }

    /// Everything-in-place criticality oracle using the full verifier.
    pub fn fully_minimal(m: &MinimalSubgraph) -> bool {
        let instances: Vec<(u32, u32)> = m.graph.edges().map(|(u, v, _)| (u, v)).collect();
        instances.iter().all(|&(u, v)| {
            let mut del = m.graph.clone();
            del.remove_one_edge(u, v);
            match m.mode {
                Mode::Vertex => !is_k_connected(&del, m.k),
                Mode::Arc => !is_k_arc_connected(&del, m.k),
            }
        })
    }

    #[test]
    fn dk_is_already_minimal() {
        let g = gen_dk(2, 6).unwrap();
        let m = minimal_k_connected(&g, 2).unwrap();
        assert_eq!(m.graph.edge_count(), 16);
        assert!(m.deletion_log.is_empty());
        assert!(fully_minimal(&m));
    }

    #[test]
    fn cycle_is_already_minimal() {
        let c = directed_cycle(7);
        let m = minimal_k_connected(&c, 1).unwrap();
        assert_eq!(m.graph, c);
        let ma = minimal_k_arc_connected(&c, 1).unwrap();
        assert_eq!(ma.graph, c);
    }

    #[test]
    fn complete_digraph_shrinks() {
        let g = complete_digraph(5);
        let m = minimal_k_connected(&g, 1).unwrap();
        assert!(is_k_connected(&m.graph, 1));
        assert!(m.graph.edge_count() <= 2 * 5 - 1 - 1); // 2kn - k - 1
        assert!(fully_minimal(&m));

        let g6 = complete_digraph(6);
        let m = minimal_k_connected(&g6, 2).unwrap();
        assert!(is_k_connected(&m.graph, 2));
        assert!(m.graph.edge_count() <= 2 * 2 * 5); // 2k(n-1)
        assert!(fully_minimal(&m));
    }

    #[test]
    fn doubled_tree_is_already_arc_minimal() {
        let g = gen_doubled_tree(10, 2, 13).unwrap();
        let m = minimal_k_arc_connected(&g, 2).unwrap();
        assert_eq!(m.graph, g);
        assert_eq!(m.graph.edge_count(), 2 * 2 * 9);
    }

    #[test]
    fn not_connected_inputs_error() {
        let c = directed_cycle(5);
        assert!(minimal_k_connected(&c, 2).is_err());
        assert!(minimal_k_arc_connected(&c, 2).is_err());
    }

    #[test]
    fn density_bounds_hold_on_random_sets() {
        let (g, _) = gen_random_tournament(26, 2, 31).unwrap();
        let m = minimal_k_connected(&g, 2).unwrap();
        assert!(fully_minimal(&m));
        let mut rng = Rng::new(5);
        for _ in 0..50 {
            let size = 1 + rng.below(25) as usize;
            let mut set: Vec<u32> = (0..26u32).collect();
            for i in (1..set.len()).rev() {
                let j = rng.below(i as u64 + 1) as usize;
                set.swap(i, j);
            }
            set.truncate(size);
            assert!(check_induced_density(&m, &set).unwrap());
        }
        // Single vertex and full set are fine too.
        assert!(check_induced_density(&m, &[3]).unwrap());
        assert!(check_induced_density(&m, &(0..26u32).collect::<Vec<_>>()).unwrap());
        assert!(check_induced_density(&m, &[]).is_err());
    }

    #[test]
    fn shuffled_order_also_minimal() {
        let (g, _) = gen_random_tournament(15, 1, 77).unwrap();
        let m = minimal_with_order(&g, 1, Mode::Vertex, DeletionOrder::Shuffled(9)).unwrap();
        assert!(is_k_connected(&m.graph, 1));
        assert!(fully_minimal(&m));
    }

    #[test]
    fn mader_difference_has_no_anti_directed_trail() {
        let (g, _) = gen_random_tournament(18, 2, 41).unwrap();
        let m2 = minimal_k_connected(&g, 2).unwrap();
        let m1 = minimal_k_connected(&m2.graph, 1).unwrap();
        // Edge set difference of the two minimal subgraphs.
        let mut diff_edges = Vec::new();
        for (u, v, _) in m2.graph.edges() {
            if !m1.graph.has_edge(u, v) {
                diff_edges.push((u, v, 1));
            }
        }
        let diff = DirectedMultigraph::from_edges(g.n(), &diff_edges).unwrap();
        assert!(!has_anti_directed_trail(&diff));
    }
}
