//! Loop-free directed multigraphs with per-pair multiplicities, plus the
//! degree statistics, path utilities and the anti-directed-trail test that
//! everything else builds on.
//!
//! Vertices are dense indices `0..n`. Adjacency lists are kept sorted, and a
//! per-vertex presence bit row gives O(1) pair queries and fast common
//! neighbour counts.

use crate::error::{Error, Result};
use crate::util::bits;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Vertex,
    Arc,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Vertex => write!(f, "vertex"),
            Mode::Arc => write!(f, "arc"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DirectedMultigraph {
    n: usize,
    words: usize,
    out: Vec<Vec<(u32, u32)>>, // (head, multiplicity), sorted by head
    inn: Vec<Vec<(u32, u32)>>, // (tail, multiplicity), sorted by tail
    out_bits: Vec<u64>,        // n rows of `words` words, presence only
    in_bits: Vec<u64>,
    edge_count: usize, // with multiplicity
    max_mult: u32,
}

impl PartialEq for DirectedMultigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out == other.out
    }
}
impl Eq for DirectedMultigraph {}

fn list_get(list: &[(u32, u32)], key: u32) -> u32 {
    match list.binary_search_by_key(&key, |e| e.0) {
        Ok(i) => list[i].1,
        Err(_) => 0,
    }
}

fn list_add(list: &mut Vec<(u32, u32)>, key: u32, mult: u32) -> u32 {
    match list.binary_search_by_key(&key, |e| e.0) {
        Ok(i) => {
            list[i].1 += mult;
            list[i].1
        }
        Err(i) => {
            list.insert(i, (key, mult));
            mult
        }
    }
}

/// Removes `mult` from the entry, returning the remaining multiplicity.
fn list_sub(list: &mut Vec<(u32, u32)>, key: u32, mult: u32) -> u32 {
    let i = list
        .binary_search_by_key(&key, |e| e.0)
        .expect("edge must exist");
    assert!(list[i].1 >= mult, "multiplicity underflow");
    list[i].1 -= mult;
    if list[i].1 == 0 {
        list.remove(i);
        0
    } else {
        list[i].1
    }
}

impl DirectedMultigraph {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "graphs must have at least one vertex");
        let words = bits::words_for(n);
        DirectedMultigraph {
            n,
            words,
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            out_bits: vec![0; n * words],
            in_bits: vec![0; n * words],
            edge_count: 0,
            max_mult: 0,
        }
    }

    /// Bulk constructor; edges are (tail, head, multiplicity).
    pub fn from_edges(n: usize, edges: &[(u32, u32, u32)]) -> Result<Self> {
        let mut g = DirectedMultigraph::new(n);
        let mut sorted: Vec<(u32, u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v, m) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u} rejected")));
            }
            if m == 0 {
                return Err(Error::input("zero multiplicity rejected".to_string()));
            }
            sorted.push((u, v, m));
        }
        sorted.sort_unstable();
        let mut out: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        let mut inn: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for &(u, v, m) in &sorted {
            if let Some(last) = out[u as usize].last_mut() {
                if last.0 == v {
                    last.1 += m;
                    continue;
                }
            }
            out[u as usize].push((v, m));
        }
        for u in 0..n {
            for &(v, m) in &out[u] {
                inn[v as usize].push((u as u32, m));
                g.edge_count += m as usize;
                g.max_mult = g.max_mult.max(m);
                bits::set(g.out_row_mut(u), v as usize);
                bits::set(g.in_row_mut(v as usize), u);
            }
        }
        g.out = out;
        g.inn = inn;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_simple(&self) -> bool {
        self.max_mult <= 1
    }

    /// No directed 2-cycles and no parallel edges.
    pub fn is_oriented(&self) -> bool {
        if !self.is_simple() {
            return false;
        }
        (0..self.n).all(|v| {
            self.out[v]
                .iter()
                .all(|&(w, _)| !bits::get(self.out_row(w as usize), v))
        })
    }

    pub fn out_row(&self, v: usize) -> &[u64] {
        &self.out_bits[v * self.words..(v + 1) * self.words]
    }

    pub fn in_row(&self, v: usize) -> &[u64] {
        &self.in_bits[v * self.words..(v + 1) * self.words]
    }

    fn out_row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.out_bits[v * self.words..(v + 1) * self.words]
    }

    fn in_row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.in_bits[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        bits::get(self.out_row(u as usize), v as usize)
    }

    pub fn multiplicity(&self, u: u32, v: u32) -> u32 {
        list_get(&self.out[u as usize], v)
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        self.add_edge_mult(u, v, 1);
    }

    pub fn add_edge_mult(&mut self, u: u32, v: u32, mult: u32) {
        assert!(u != v, "loops are rejected");
        assert!((u as usize) < self.n && (v as usize) < self.n);
        assert!(mult > 0);
        let m = list_add(&mut self.out[u as usize], v, mult);
        list_add(&mut self.inn[v as usize], u, mult);
        self.max_mult = self.max_mult.max(m);
        self.edge_count += mult as usize;
        bits::set(self.out_row_mut(u as usize), v as usize);
        bits::set(self.in_row_mut(v as usize), u as usize);
    }

    /// Removes one instance of (u,v). Panics if absent.
    pub fn remove_one_edge(&mut self, u: u32, v: u32) {
        let left = list_sub(&mut self.out[u as usize], v, 1);
        list_sub(&mut self.inn[v as usize], u, 1);
        self.edge_count -= 1;
        if left == 0 {
            bits::clear(self.out_row_mut(u as usize), v as usize);
            bits::clear(self.in_row_mut(v as usize), u as usize);
        }
    }

    /// Distinct out-neighbour count.
    pub fn out_nbr_count(&self, v: u32) -> usize {
        self.out[v as usize].len()
    }

    pub fn in_nbr_count(&self, v: u32) -> usize {
        self.inn[v as usize].len()
    }

    /// Out-degree with multiplicity.
    pub fn out_degree(&self, v: u32) -> usize {
        self.out[v as usize].iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.inn[v as usize].iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn out_neighbors(&self, v: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out[v as usize].iter().copied()
    }

    pub fn in_neighbors(&self, v: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.inn[v as usize].iter().copied()
    }

    /// All edges as (tail, head, multiplicity), sorted by (tail, head).
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..self.n as u32).flat_map(move |u| self.out[u as usize].iter().map(move |&(v, m)| (u, v, m)))
    }

    /// Number of non-neighbours of v: vertices adjacent in neither direction.
    pub fn non_neighbor_count(&self, v: u32) -> usize {
        let joined = bits::count(
            &self
                .out_row(v as usize)
                .iter()
                .zip(self.in_row(v as usize))
                .map(|(a, b)| a | b)
                .collect::<Vec<_>>(),
        );
        self.n - 1 - joined
    }

    /// Maximum degree of the complement of the underlying undirected graph.
    pub fn complement_max_degree(&self) -> usize {
        (0..self.n as u32)
            .map(|v| self.non_neighbor_count(v))
            .max()
            .unwrap_or(0)
    }

    /// Induced subgraph on `verts` plus the relabeling map back to parent
    /// ids. Vertices are relabeled in ascending parent id order.
    pub fn restrict(&self, verts: &[u32]) -> Result<(DirectedMultigraph, Vec<u32>)> {
        let mut sorted: Vec<u32> = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != verts.len() {
            return Err(Error::input("duplicate vertices in restriction set"));
        }
        if sorted.is_empty() {
            return Err(Error::input("empty restriction set"));
        }
        if *sorted.last().unwrap() as usize >= self.n {
            return Err(Error::input(format!(
                "vertex {} out of range for n={}",
                sorted.last().unwrap(),
                self.n
            )));
        }
        let mut local = vec![u32::MAX; self.n];
        for (i, &p) in sorted.iter().enumerate() {
            local[p as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &p in &sorted {
            for &(q, m) in &self.out[p as usize] {
                if local[q as usize] != u32::MAX {
                    edges.push((local[p as usize], local[q as usize], m));
                }
            }
        }
        let g = DirectedMultigraph::from_edges(sorted.len(), &edges)?;
        Ok((g, sorted))
    }

    /// Induced subgraph after deleting `removed`.
    pub fn remove_vertices(&self, removed: &[u32]) -> Result<(DirectedMultigraph, Vec<u32>)> {
        let mut keep: Vec<bool> = vec![true; self.n];
        for &r in removed {
            if r as usize >= self.n {
                return Err(Error::input(format!("vertex {r} out of range")));
            }
            keep[r as usize] = false;
        }
        let verts: Vec<u32> = (0..self.n as u32).filter(|&v| keep[v as usize]).collect();
        self.restrict(&verts)
    }

    /// Drops multiplicities down to 1 on every present pair.
    pub fn reduce_to_simple(&self) -> DirectedMultigraph {
        let edges: Vec<(u32, u32, u32)> = self.edges().map(|(u, v, _)| (u, v, 1)).collect();
        DirectedMultigraph::from_edges(self.n, &edges).expect("valid by construction")
    }

    /// Drops parallels and exactly one edge of each directed 2-cycle,
    /// keeping the lexicographically smaller (tail, head) pair. The result
    /// is an oriented graph on the same vertex set.
    pub fn orientation_reduce(&self) -> DirectedMultigraph {
        let mut edges = Vec::new();
        for (u, v, _) in self.edges() {
            if self.has_edge(v, u) && (v, u) < (u, v) {
                continue;
            }
            edges.push((u, v, 1));
        }
        DirectedMultigraph::from_edges(self.n, &edges).expect("valid by construction")
    }

    pub fn reverse(&self) -> DirectedMultigraph {
        let edges: Vec<(u32, u32, u32)> = self.edges().map(|(u, v, m)| (v, u, m)).collect();
        DirectedMultigraph::from_edges(self.n, &edges).expect("valid by construction")
    }

    pub fn min_out_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.out_degree(v)).min().unwrap_or(0)
    }

    pub fn min_in_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.in_degree(v)).min().unwrap_or(0)
    }
}

/// A directed path: distinct vertices, consecutive pairs are edges of the
/// host graph it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    verts: Vec<u32>,
}

impl Path {
    pub fn new(verts: Vec<u32>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::input("empty path"));
        }
        let mut seen = verts.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("path vertices must be distinct"));
        }
        Ok(Path { verts })
    }

    pub fn single(v: u32) -> Self {
        Path { verts: vec![v] }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn first(&self) -> u32 {
        self.verts[0]
    }

    pub fn last(&self) -> u32 {
        *self.verts.last().unwrap()
    }

    pub fn interior(&self) -> &[u32] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.verts.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn len_edges(&self) -> usize {
        self.verts.len().saturating_sub(1)
    }

    pub fn is_path_in(&self, g: &DirectedMultigraph) -> bool {
        self.verts.iter().all(|&v| (v as usize) < g.n())
            && self.edges().all(|(u, v)| g.has_edge(u, v))
    }

    /// True when no chord v_i -> v_j with j > i+1 exists in `g`.
    pub fn is_minimal_in(&self, g: &DirectedMultigraph) -> bool {
        let v = &self.verts;
        for i in 0..v.len() {
            for j in i + 2..v.len() {
                if g.has_edge(v[i], v[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Shrinks a path to one with the same endpoints and no chords, by repeated
/// farthest-shortcut scans from the left until the chordless predicate holds.
pub fn minimalize_path(g: &DirectedMultigraph, p: &Path) -> Result<Path> {
    if !p.is_path_in(g) {
        return Err(Error::input("not a path of the host graph"));
    }
    let mut verts = p.vertices().to_vec();
    loop {
        let mut next = Vec::with_capacity(verts.len());
        let mut i = 0;
        while i < verts.len() {
            next.push(verts[i]);
            if i + 1 >= verts.len() {
                break;
            }
            // Farthest j > i reachable by a single edge.
            let mut jump = i + 1;
            for j in (i + 1..verts.len()).rev() {
                if g.has_edge(verts[i], verts[j]) {
                    jump = j;
                    break;
                }
            }
            i = jump;
        }
        let done = next.len() == verts.len();
        verts = next;
        if done {
            break;
        }
    }
    let out = Path::new(verts)?;
    debug_assert!(out.is_minimal_in(g));
    Ok(out)
}

/// The bipartite representation of a digraph: left/right copies of V with
/// one undirected edge per digraph edge instance.
pub struct BipartiteRepresentation {
    pub n: usize,
    /// (left copy of tail, right copy of head), one entry per instance.
    pub edges: Vec<(u32, u32)>,
}

impl BipartiteRepresentation {
    pub fn from_graph(g: &DirectedMultigraph) -> Self {
        let mut edges = Vec::with_capacity(g.edge_count());
        for (u, v, m) in g.edges() {
            for _ in 0..m {
                edges.push((u, v));
            }
        }
        BipartiteRepresentation { n: g.n(), edges }
    }

    /// Union-find cycle test; parallel instances are an immediate cycle.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<u32> = (0..2 * self.n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for &(u, v) in &self.edges {
            let a = find(&mut parent, u);
            let b = find(&mut parent, self.n as u32 + v);
            if a == b {
                return false;
            }
            parent[a as usize] = b;
        }
        true
    }
}

/// True iff the graph contains an anti-directed trail, i.e. its bipartite
/// representation has a cycle.
pub fn has_anti_directed_trail(g: &DirectedMultigraph) -> bool {
    !BipartiteRepresentation::from_graph(g).is_forest()
}

/// Greedy selection of `k` vertices with many distinct in-neighbours:
/// repeatedly take a maximum-in-neighbour-count vertex (ties to the smallest
/// id) and retire it from candidacy. Counts are measured in the original
/// graph, so the picks are exactly the top k and every one has at least
/// ⌈(n-k-Δ̄)/2⌉ in-neighbours.
pub fn top_in_degree_vertices(g: &DirectedMultigraph, k: usize) -> Result<Vec<u32>> {
    if g.n() < k {
        return Err(Error::input(format!("need n >= k, got n={} k={}", g.n(), k)));
    }
    let mut candidates: Vec<u32> = (0..g.n() as u32).collect();
    let mut picked = Vec::with_capacity(k);
    for _ in 0..k {
        let (i, &v) = candidates
            .iter()
            .enumerate()
            .max_by(|(_, &a), (_, &b)| {
                g.in_nbr_count(a).cmp(&g.in_nbr_count(b)).then(b.cmp(&a))
            })
            .expect("nonempty pool");
        picked.push(v);
        candidates.remove(i);
    }
    Ok(picked)
}

/// Mirror of `top_in_degree_vertices` for out-neighbours.
pub fn top_out_degree_vertices(g: &DirectedMultigraph, k: usize) -> Result<Vec<u32>> {
    top_in_degree_vertices(&g.reverse(), k)
}

/// A set of edge instances: pair -> multiplicity. Union takes the pointwise
/// maximum, which is how gadget edge sets compose (each gadget needs its own
/// instance-disjointness, never more copies than the largest requirement).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeBag {
    map: BTreeMap<(u32, u32), u32>,
}

impl EdgeBag {
    pub fn new() -> Self {
        EdgeBag::default()
    }

    pub fn from_graph(g: &DirectedMultigraph) -> Self {
        let mut bag = EdgeBag::new();
        for (u, v, m) in g.edges() {
            bag.insert_mult(u, v, m);
        }
        bag
    }

    /// Adds `m` instances of the pair (sum semantics).
    pub fn insert_mult(&mut self, u: u32, v: u32, m: u32) {
        if m == 0 {
            return;
        }
        *self.map.entry((u, v)).or_insert(0) += m;
    }

    pub fn insert(&mut self, u: u32, v: u32) {
        self.insert_mult(u, v, 1);
    }

    /// Ensures at least one instance of the pair (set semantics).
    pub fn mark(&mut self, u: u32, v: u32) {
        self.map.entry((u, v)).or_insert(1);
    }

    pub fn union_max(&mut self, other: &EdgeBag) {
        for (&(u, v), &m) in &other.map {
            let e = self.map.entry((u, v)).or_insert(0);
            *e = (*e).max(m);
        }
    }

    pub fn get(&self, u: u32, v: u32) -> u32 {
        self.map.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn count(&self) -> usize {
        self.map.values().map(|&m| m as usize).sum()
    }

    pub fn distinct_pairs(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.map.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn to_graph(&self, n: usize) -> DirectedMultigraph {
        let edges: Vec<(u32, u32, u32)> = self.iter().collect();
        DirectedMultigraph::from_edges(n, &edges).expect("bag edges valid")
    }

    /// True when every instance is available in `g`.
    pub fn contained_in(&self, g: &DirectedMultigraph) -> bool {
        self.iter().all(|(u, v, m)| g.multiplicity(u, v) >= m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn complete_digraph(n: usize) -> DirectedMultigraph {
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

    pub fn directed_cycle(n: usize) -> DirectedMultigraph {
        let edges: Vec<(u32, u32, u32)> =
            (0..n as u32).map(|v| (v, (v + 1) % n as u32, 1)).collect();
        DirectedMultigraph::from_edges(n, &edges).unwrap()
    }

    pub fn transitive_tournament(n: usize) -> DirectedMultigraph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v, 1));
            }
        }
        DirectedMultigraph::from_edges(n, &edges).unwrap()
    }

    /// DK_{k, n-k} on n vertices total.
    fn dk(k: usize, n: usize) -> DirectedMultigraph {
        crate::generate::gen_dk(k, n).unwrap()
    }

    #[test]
    fn degree_sums_match_edge_count() {
        let g = dk(2, 6);
        let out_sum: usize = (0..6).map(|v| g.out_degree(v)).sum();
        let in_sum: usize = (0..6).map(|v| g.in_degree(v)).sum();
        assert_eq!(out_sum, g.edge_count());
        assert_eq!(in_sum, g.edge_count());
    }

    #[test]
    fn complement_degree_examples() {
        assert_eq!(complete_digraph(4).complement_max_degree(), 0);
        let edgeless = DirectedMultigraph::from_edges(5, &[(0, 1, 1)]).unwrap();
        // Single edge on 5 vertices: vertices 2..4 have 4 non-neighbours.
        assert_eq!(edgeless.complement_max_degree(), 4);
        let empty5 = DirectedMultigraph::new(5);
        assert_eq!(empty5.complement_max_degree(), 4);
        let g = crate::generate::gen_g_family(5, 5, 2, 4).unwrap();
        assert!(g.complement_max_degree() <= 4);
    }

    #[test]
    fn restrict_examples() {
        let g = dk(2, 6);
        let (whole, map) = g.restrict(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(whole, g);
        assert_eq!(map, vec![0, 1, 2, 3, 4, 5]);

        // One side of DK_{2,4} induces an edgeless graph.
        let (side, _) = g.restrict(&[2, 3, 4, 5]).unwrap();
        assert_eq!(side.edge_count(), 0);

        let c5 = directed_cycle(5);
        let (p3, _) = c5.restrict(&[0, 1, 2]).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert!(p3.has_edge(0, 1) && p3.has_edge(1, 2));
    }

    #[test]
    fn restrict_monotone_complement_degree() {
        let g = crate::generate::gen_g_family(5, 5, 2, 4).unwrap();
        let dbar = g.complement_max_degree();
        let (sub, _) = g.restrict(&(0..10).collect::<Vec<u32>>()).unwrap();
        assert!(sub.complement_max_degree() <= dbar);
    }

    #[test]
    fn reduce_to_simple_examples() {
        let two_par = DirectedMultigraph::from_edges(2, &[(0, 1, 2)]).unwrap();
        let simple = two_par.reduce_to_simple();
        assert_eq!(simple.edge_count(), 1);
        assert_eq!(simple.reduce_to_simple(), simple);

        let dt = crate::generate::gen_doubled_tree(7, 2, 11).unwrap();
        assert_eq!(dt.edge_count(), 24);
        assert_eq!(dt.reduce_to_simple().edge_count(), 12);
    }

    #[test]
    fn orientation_reduce_examples() {
        let two_cycle = DirectedMultigraph::from_edges(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        let o = two_cycle.orientation_reduce();
        assert_eq!(o.edge_count(), 1);
        assert!(o.has_edge(0, 1)); // lexicographically smaller pair kept

        let t = transitive_tournament(5);
        assert_eq!(t.orientation_reduce(), t);

        let g = dk(2, 6);
        assert_eq!(g.edge_count(), 16);
        let o = g.orientation_reduce();
        assert_eq!(o.edge_count(), 8);
        assert!(o.is_oriented());
        // Idempotent.
        assert_eq!(o.orientation_reduce(), o);
    }

    #[test]
    fn minimalize_path_examples() {
        let t = transitive_tournament(5);
        let p = Path::new(vec![0, 1, 2, 4]).unwrap();
        let m = minimalize_path(&t, &p).unwrap();
        assert_eq!(m.vertices(), &[0, 4]);

        let chain = DirectedMultigraph::from_edges(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let p = Path::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(minimalize_path(&chain, &p).unwrap().vertices(), &[0, 1, 2, 3]);

        let p = Path::new(vec![0, 1]).unwrap();
        assert_eq!(minimalize_path(&chain, &p).unwrap().vertices(), &[0, 1]);

        let bad = Path::new(vec![0, 2]).unwrap();
        assert!(minimalize_path(&chain, &bad).is_err());
    }

    #[test]
    fn anti_directed_trail_examples() {
        // a=0,b=1,c=2,d=3: edges a->b, c->b, c->d, a->d close a cycle in BG.
        let g =
            DirectedMultigraph::from_edges(4, &[(0, 1, 1), (2, 1, 1), (2, 3, 1), (0, 3, 1)]).unwrap();
        assert!(has_anti_directed_trail(&g));

        let single = DirectedMultigraph::from_edges(2, &[(0, 1, 1)]).unwrap();
        assert!(!has_anti_directed_trail(&single));

        // Parallel instances are an immediate cycle.
        let par = DirectedMultigraph::from_edges(2, &[(0, 1, 2)]).unwrap();
        assert!(has_anti_directed_trail(&par));

        // No trail implies at most 2n-1 simple edges.
        let chain = DirectedMultigraph::from_edges(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert!(!has_anti_directed_trail(&chain));
        assert!(chain.reduce_to_simple().edge_count() <= 2 * 4 - 1);
    }

    #[test]
    fn dense_graphs_have_anti_directed_trails() {
        // |E| >= 2|V| forces a cycle in the bipartite representation.
        let g = complete_digraph(5);
        assert!(g.edge_count() >= 2 * g.n());
        assert!(has_anti_directed_trail(&g));
    }

    #[test]
    fn top_degree_examples() {
        let t = transitive_tournament(5);
        let picks = top_in_degree_vertices(&t, 2).unwrap();
        assert_eq!(picks, vec![4, 3]); // sink then second-to-sink
        assert_eq!(t.in_nbr_count(4), 4);
        assert_eq!(t.in_nbr_count(3), 3);

        let c = directed_cycle(6);
        let picks = top_in_degree_vertices(&c, 1).unwrap();
        assert_eq!(picks.len(), 1);
        assert_eq!(c.in_nbr_count(picks[0]), 1);

        let g = dk(2, 6);
        let picks = top_in_degree_vertices(&g, 2).unwrap();
        assert_eq!(picks, vec![0, 1]); // the two small-side vertices
        assert!(picks.iter().all(|&v| g.in_nbr_count(v) == 4));

        assert!(top_in_degree_vertices(&directed_cycle(3), 4).is_err());
    }

    #[test]
    fn top_degree_bound_holds() {
        // Each pick has at least ceil((n-k-dbar)/2) in-neighbours in D.
        for seed in 0..5u64 {
            let (g, _) = crate::generate::gen_random_tournament(21, 1, seed).unwrap();
            let k = 3;
            let dbar = g.complement_max_degree() as i64;
            let picks = top_in_degree_vertices(&g, k).unwrap();
            let counts: Vec<usize> = picks.iter().map(|&v| g.in_nbr_count(v)).collect();
            let sorted = {
                let mut c = counts.clone();
                c.sort_unstable_by(|a, b| b.cmp(a));
                c
            };
            assert_eq!(counts, sorted, "non-increasing");
            let n = g.n() as i64;
            counts.iter().for_each(|&c| {
                assert!(2 * c as i64 >= n - k as i64 - dbar);
            });
        }
    }

    #[test]
    fn edge_bag_union_semantics() {
        let mut a = EdgeBag::new();
        a.insert_mult(0, 1, 2);
        let mut b = EdgeBag::new();
        b.insert(0, 1);
        b.insert(1, 2);
        a.union_max(&b);
        assert_eq!(a.get(0, 1), 2);
        assert_eq!(a.get(1, 2), 1);
        assert_eq!(a.count(), 3);
    }
}
