//! Property-based invariants over randomly generated graphs.

use proptest::prelude::*;
use sparsespan::connectivity::{is_k_arc_connected, is_k_connected};
use sparsespan::graph::{
    has_anti_directed_trail, minimalize_path, top_in_degree_vertices, DirectedMultigraph, Path,
};
use sparsespan::io::{parse_graph, serialize_graph};

fn arb_digraph(max_n: usize) -> impl Strategy<Value = DirectedMultigraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = proptest::collection::vec((0..n as u32, 0..n as u32, 1u32..3), 0..n * n);
        pairs.prop_map(move |edges| {
            let filtered: Vec<(u32, u32, u32)> =
                edges.into_iter().filter(|&(u, v, _)| u != v).collect();
            DirectedMultigraph::from_edges(n, &filtered).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn complement_degree_monotone_under_restriction(g in arb_digraph(12), keep in proptest::collection::btree_set(0u32..12, 1..8)) {
        let verts: Vec<u32> = keep.into_iter().filter(|&v| (v as usize) < g.n()).collect();
        prop_assume!(!verts.is_empty());
        let (sub, _) = g.restrict(&verts).unwrap();
        prop_assert!(sub.complement_max_degree() <= g.complement_max_degree());
    }

    #[test]
    fn orientation_reduce_idempotent_and_oriented(g in arb_digraph(10)) {
        let o = g.orientation_reduce();
        prop_assert!(o.is_oriented());
        prop_assert_eq!(o.orientation_reduce(), o.clone());
        // The underlying undirected graph is unchanged.
        for u in 0..g.n() as u32 {
            for v in 0..g.n() as u32 {
                if u == v { continue; }
                let before = g.has_edge(u, v) || g.has_edge(v, u);
                let after = o.has_edge(u, v) || o.has_edge(v, u);
                prop_assert_eq!(before, after);
            }
        }
    }

    #[test]
    fn forest_representation_caps_edges(g in arb_digraph(10)) {
        if !has_anti_directed_trail(&g) {
            prop_assert!(g.reduce_to_simple().edge_count() <= 2 * g.n() - 1);
        }
    }

    #[test]
    fn minimalized_paths_are_chordless(g in arb_digraph(9), start in 0u32..9) {
        prop_assume!((start as usize) < g.n());
        // Greedy walk to get some path.
        let mut verts = vec![start];
        let mut cur = start;
        for _ in 0..g.n() {
            let next = g.out_neighbors(cur).map(|(w, _)| w).find(|w| !verts.contains(w));
            match next {
                Some(w) => { verts.push(w); cur = w; }
                None => break,
            }
        }
        prop_assume!(verts.len() >= 2);
        let p = Path::new(verts).unwrap();
        let m = minimalize_path(&g, &p).unwrap();
        prop_assert_eq!(m.first(), p.first());
        prop_assert_eq!(m.last(), p.last());
        // Double loop over index pairs: the literal minimality predicate.
        let vs = m.vertices();
        for i in 0..vs.len() {
            for j in i + 2..vs.len() {
                prop_assert!(!g.has_edge(vs[i], vs[j]));
            }
        }
    }

    #[test]
    fn top_degree_selection_bound(g in arb_digraph(12), k in 1usize..4) {
        prop_assume!(g.n() >= k);
        let picks = top_in_degree_vertices(&g, k).unwrap();
        let counts: Vec<usize> = picks.iter().map(|&v| g.in_nbr_count(v)).collect();
        for w in counts.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        let bound = g.n() as i64 - k as i64 - g.complement_max_degree() as i64;
        for &c in &counts {
            prop_assert!(2 * c as i64 >= bound);
        }
    }

    #[test]
    fn document_round_trip(g in arb_digraph(10)) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn vertex_connectivity_implies_arc_connectivity(g in arb_digraph(8), k in 1usize..3) {
        if is_k_connected(&g, k) {
            prop_assert!(is_k_arc_connected(&g, k));
        }
    }
}
