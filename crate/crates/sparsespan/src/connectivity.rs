//! Menger machinery: strong k-connectivity and k-arc-connectivity verifiers
//! with witness cuts, fans, disjoint path systems, and the minimum
//! degree-k spanning subgraph value h(k,D) by min-flow with demands.

use crate::error::{ArcCut, CutWitness, Error, Result, VertexCut};
use crate::flow::{min_flow_with_demands, DemandArc, FlowNetwork, INF};
use crate::graph::{DirectedMultigraph, EdgeBag, Mode, Path};
use crate::util::bits;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanDirection {
    /// Paths from the vertex into the set.
    To,
    /// Paths from the set to the vertex.
    From,
}

/// A collection of disjoint paths with an optional source-to-target pairing.
#[derive(Debug, Clone)]
pub struct PathSystem {
    pub paths: Vec<Path>,
    pub mode: Mode,
    /// pairing[i] = j means paths[i] runs from the i-th source to the j-th target.
    pub pairing: Option<Vec<usize>>,
}

impl PathSystem {
    /// Edge instances used, with per-pair counts summed across paths. The
    /// system's own disjointness requirement is exactly this multiplicity.
    pub fn edge_bag(&self) -> EdgeBag {
        let mut bag = EdgeBag::new();
        for p in &self.paths {
            for (u, v) in p.edges() {
                bag.insert(u, v);
            }
        }
        bag
    }

    pub fn interior_vertices(&self) -> Vec<u32> {
        let mut set = BTreeSet::new();
        for p in &self.paths {
            set.extend(p.interior().iter().copied());
        }
        set.into_iter().collect()
    }

    /// Pairwise disjointness: vertex mode shares no vertex at all (callers
    /// exempt a common apex themselves), arc mode respects multiplicities.
    pub fn is_disjoint(&self, g: &DirectedMultigraph, shared_apex: Option<u32>) -> bool {
        match self.mode {
            Mode::Vertex => {
                let mut seen = BTreeSet::new();
                for p in &self.paths {
                    for &v in p.vertices() {
                        if Some(v) == shared_apex {
                            continue;
                        }
                        if !seen.insert(v) {
                            return false;
                        }
                    }
                }
                true
            }
            Mode::Arc => self.edge_bag().contained_in(g),
        }
    }

    /// Fan predicate: every path is a path of `g`, runs between `v` and the
    /// set in the stated direction, touches the set exactly once, and the
    /// system is disjoint apart from `v`.
    pub fn is_fan(
        &self,
        g: &DirectedMultigraph,
        v: u32,
        set: &BTreeSet<u32>,
        direction: FanDirection,
        k: usize,
    ) -> bool {
        if self.paths.len() != k {
            return false;
        }
        for p in &self.paths {
            if !p.is_path_in(g) {
                return false;
            }
            let (apex, contact) = match direction {
                FanDirection::To => (p.first(), p.last()),
                FanDirection::From => (p.last(), p.first()),
            };
            if apex != v || !set.contains(&contact) {
                return false;
            }
            let inside = p.vertices().iter().filter(|x| set.contains(x)).count();
            if inside != 1 {
                return false;
            }
        }
        if self.mode == Mode::Vertex {
            let contacts: BTreeSet<u32> = self
                .paths
                .iter()
                .map(|p| match direction {
                    FanDirection::To => p.last(),
                    FanDirection::From => p.first(),
                })
                .collect();
            if contacts.len() != k {
                return false;
            }
        }
        self.is_disjoint(g, Some(v))
    }
}

// ---------------------------------------------------------------------------
// Split-network plumbing for vertex connectivity.
//
// Node layout: in(v) = 2v, out(v) = 2v+1, then extra terminals as needed.
// Split arcs carry capacity 1; graph edges capacity 1 (vertex-disjoint paths
// never share an edge between distinct interior vertices).
// ---------------------------------------------------------------------------

/// Extracts the separator from a finished split-network flow: vertices whose
/// in-node is residual-reachable from `s` while the out-node is not.
fn split_separator(net: &FlowNetwork, n: usize, s: usize) -> Vec<u32> {
    let reach = net.residual_reachable(s);
    (0..n)
        .filter(|&v| reach[2 * v] && !reach[2 * v + 1])
        .map(|v| v as u32)
        .collect()
}

/// Max number of internally disjoint u->v paths capped at `limit`
/// (a direct edge counts one). Returns the flow and the network.
fn local_vertex_connectivity(
    g: &DirectedMultigraph,
    u: u32,
    v: u32,
    limit: i64,
) -> (i64, FlowNetwork) {
    let n = g.n();
    let mut net = FlowNetwork::new(2 * n);
    for x in 0..n {
        net.add_arc(2 * x, 2 * x + 1, 1);
    }
    for (a, b, _) in g.edges() {
        net.add_arc(2 * a as usize + 1, 2 * b as usize, 1);
    }
    let flow = net.max_flow(2 * u as usize + 1, 2 * v as usize, limit);
    (flow, net)
}

/// Max u->v flow with capacities = multiplicities, capped at `limit`.
fn local_arc_connectivity(
    g: &DirectedMultigraph,
    u: u32,
    v: u32,
    limit: i64,
) -> (i64, FlowNetwork) {
    let mut net = FlowNetwork::new(g.n());
    for (a, b, m) in g.edges() {
        net.add_arc(a as usize, b as usize, (m as i64).min(limit));
    }
    let flow = net.max_flow(u as usize, v as usize, limit);
    (flow, net)
}

/// Sound lower bound on the internally disjoint u -> v routes, capped at k:
/// all length-2 routes plus greedily matched length-3 routes avoiding them.
/// None of these routes uses a direct (u, v) edge.
fn disjoint_route_lower_bound(g: &DirectedMultigraph, u: u32, v: u32, k: usize) -> usize {
    let words = g.out_row(u as usize).len();
    let out_u = g.out_row(u as usize);
    let in_v = g.in_row(v as usize);
    let mut count = 0usize;
    let mut used = vec![0u64; words]; // middles already consumed, plus u and v
    bits::set(&mut used, u as usize);
    bits::set(&mut used, v as usize);
    for i in 0..words {
        let two = out_u[i] & in_v[i] & !used[i];
        count += two.count_ones() as usize;
        used[i] |= two;
        if count >= k {
            return k;
        }
    }
    // Greedy 3-routes u -> w1 -> w2 -> v with fresh intermediates.
    let first_hops: Vec<usize> = (0..words)
        .flat_map(|i| {
            let word = out_u[i] & !used[i];
            bits::iter_ones(&[word]).map(move |b| i * 64 + b).collect::<Vec<_>>()
        })
        .collect();
    for w1 in first_hops {
        if bits::get(&used, w1) {
            continue; // consumed as a second hop meanwhile
        }
        let row = g.out_row(w1);
        let mut second = None;
        for i in 0..words {
            let word = row[i] & in_v[i] & !used[i];
            if word != 0 {
                second = Some(i * 64 + word.trailing_zeros() as usize);
                break;
            }
        }
        if let Some(w2) = second {
            bits::set(&mut used, w1);
            bits::set(&mut used, w2);
            count += 1;
            if count >= k {
                return k;
            }
        }
    }
    count
}

/// Strong k-connectivity with a witness separator on failure.
///
/// Probes pair every vertex with a fixed k-subset W in both directions: any
/// separator of size <= k-1 misses some w in W, and the separated pair can
/// then be rerooted at w, so the probe set is sound.
pub fn vertex_connectivity_witness(g: &DirectedMultigraph, k: usize) -> Option<VertexCut> {
    assert!(k >= 1);
    let n = g.n();
    if n < k + 1 {
        return Some(VertexCut { separator: vec![], pair: (0, 0) });
    }
    // Degree shortcut: out-neighbourhoods smaller than k are separators.
    for v in 0..n as u32 {
        if g.out_nbr_count(v) < k {
            let separator: Vec<u32> = g.out_neighbors(v).map(|(w, _)| w).collect();
            let target = (0..n as u32)
                .find(|&x| x != v && !separator.contains(&x))
                .expect("n >= k+1");
            return Some(VertexCut { separator, pair: (v, target) });
        }
        if g.in_nbr_count(v) < k {
            let separator: Vec<u32> = g.in_neighbors(v).map(|(w, _)| w).collect();
            let source = (0..n as u32)
                .find(|&x| x != v && !separator.contains(&x))
                .expect("n >= k+1");
            return Some(VertexCut { separator, pair: (source, v) });
        }
    }
    for w in 0..k.min(n) as u32 {
        for x in 0..n as u32 {
            if x == w {
                continue;
            }
            for &(a, b) in &[(w, x), (x, w)] {
                if g.has_edge(a, b) {
                    continue; // adjacent pairs cannot be separated
                }
                if disjoint_route_lower_bound(g, a, b, k) >= k {
                    continue;
                }
                let (flow, net) = local_vertex_connectivity(g, a, b, k as i64);
                if (flow as usize) < k {
                    let separator = split_separator(&net, n, 2 * a as usize + 1);
                    return Some(VertexCut { separator, pair: (a, b) });
                }
            }
        }
    }
    None
}

pub fn is_k_connected(g: &DirectedMultigraph, k: usize) -> bool {
    vertex_connectivity_witness(g, k).is_none()
}

/// Strong k-arc-connectivity with a witness cut on failure, via flows
/// against a fixed root in both directions.
pub fn arc_connectivity_witness(g: &DirectedMultigraph, k: usize) -> Option<ArcCut> {
    assert!(k >= 1);
    let n = g.n();
    if n == 1 {
        return None;
    }
    let root = 0u32;
    for v in 1..n as u32 {
        for &(a, b) in &[(root, v), (v, root)] {
            let direct = g.multiplicity(a, b).min(k as u32) as usize;
            if direct >= k {
                continue;
            }
            let quick: usize = if g.is_simple() {
                direct + disjoint_route_lower_bound(g, a, b, k)
            } else {
                direct
                    + g.out_neighbors(a)
                        .filter(|&(w, _)| w != b)
                        .map(|(w, m)| m.min(g.multiplicity(w, b)) as usize)
                        .sum::<usize>()
            };
            if quick >= k {
                continue;
            }
            let (flow, net) = local_arc_connectivity(g, a, b, k as i64);
            if (flow as usize) < k {
                let reach = net.residual_reachable(a as usize);
                let mut edges = Vec::new();
                for (x, y, m) in g.edges() {
                    if reach[x as usize] && !reach[y as usize] {
                        for _ in 0..m.min(k as u32) {
                            edges.push((x, y));
                        }
                    }
                }
                return Some(ArcCut { edges, pair: (a, b) });
            }
        }
    }
    None
}

pub fn is_k_arc_connected(g: &DirectedMultigraph, k: usize) -> bool {
    arc_connectivity_witness(g, k).is_none()
}

/// Single-edge removability under the mode's connectivity, assuming the
/// current graph satisfies it. With D k-connected and e = (u,v), D - e stays
/// k-connected iff the local u->v connectivity of D - e is still >= k: any
/// separation in D - e forces every surviving route through e, and the
/// prefix/suffix of those routes pin the failure onto the pair (u, v).
pub fn edge_is_removable(g: &mut DirectedMultigraph, u: u32, v: u32, k: usize, mode: Mode) -> bool {
    match mode {
        Mode::Vertex => {
            if g.multiplicity(u, v) >= 2 {
                return true; // still adjacent after removing one instance
            }
            if disjoint_route_lower_bound(g, u, v, k) >= k {
                return true;
            }
            g.remove_one_edge(u, v);
            let (flow, _) = local_vertex_connectivity(g, u, v, k as i64);
            g.add_edge(u, v);
            flow as usize >= k
        }
        Mode::Arc => {
            let direct = (g.multiplicity(u, v) - 1) as usize;
            if direct >= k {
                return true;
            }
            let quick: usize = if g.is_simple() {
                direct + disjoint_route_lower_bound(g, u, v, k)
            } else {
                direct
                    + g.out_neighbors(u)
                        .filter(|&(w, _)| w != v)
                        .map(|(w, m)| m.min(g.multiplicity(w, v)) as usize)
                        .sum::<usize>()
            };
            if quick >= k {
                return true;
            }
            g.remove_one_edge(u, v);
            let (flow, _) = local_arc_connectivity(g, u, v, k as i64);
            g.add_edge(u, v);
            flow as usize >= k
        }
    }
}

// ---------------------------------------------------------------------------
// Path extraction from integral flows.
// ---------------------------------------------------------------------------

/// Walks unit flows over graph edges from `start` until a vertex of `stop`
/// is hit, splicing out any cycle, always taking the smallest head.
fn walk_flow_path(
    flows: &mut BTreeMap<(u32, u32), u32>,
    start: u32,
    stop: &BTreeSet<u32>,
) -> Result<Path> {
    let mut verts = vec![start];
    let mut pos = BTreeMap::new();
    pos.insert(start, 0usize);
    let mut cur = start;
    while !stop.contains(&cur) {
        let next = flows
            .range((cur, 0)..=(cur, u32::MAX))
            .find(|(_, &m)| m > 0)
            .map(|(&(_, h), _)| h)
            .ok_or_else(|| Error::internal("flow walk stuck before reaching a terminal"))?;
        *flows.get_mut(&(cur, next)).unwrap() -= 1;
        if let Some(&at) = pos.get(&next) {
            // Splice the cycle out; its flow stays consumed (cancellation).
            for dropped in verts.drain(at + 1..) {
                pos.remove(&dropped);
            }
        } else {
            verts.push(next);
            pos.insert(next, verts.len() - 1);
        }
        cur = next;
    }
    Path::new(verts)
}

fn reverse_system(sys: PathSystem, mode: Mode) -> PathSystem {
    let paths = sys
        .paths
        .into_iter()
        .map(|p| {
            let mut vs = p.vertices().to_vec();
            vs.reverse();
            Path::new(vs).expect("reversed path valid")
        })
        .collect();
    PathSystem { paths, mode, pairing: None }
}

/// k-fan between a vertex and a set: k paths sharing only `v`, each touching
/// the set exactly once.
pub fn k_fan(
    g: &DirectedMultigraph,
    v: u32,
    set: &BTreeSet<u32>,
    direction: FanDirection,
    k: usize,
) -> Result<PathSystem> {
    if direction == FanDirection::From {
        let rev = g.reverse();
        return Ok(reverse_system(k_fan(&rev, v, set, FanDirection::To, k)?, Mode::Vertex));
    }
    if set.contains(&v) {
        return Err(Error::input("fan apex must lie outside the target set"));
    }
    if set.len() < k {
        return Err(Error::input(format!("fan target set smaller than k={k}")));
    }
    if set.iter().any(|&s| s as usize >= g.n()) || v as usize >= g.n() {
        return Err(Error::input("fan vertex out of range"));
    }
    let n = g.n();
    let sink = 2 * n;
    let mut net = FlowNetwork::new(2 * n + 1);
    for x in 0..n as u32 {
        if set.contains(&x) {
            net.add_arc(2 * x as usize, sink, 1); // terminal: no split arc
        } else if x != v {
            net.add_arc(2 * x as usize, 2 * x as usize + 1, 1);
        }
    }
    let mut edge_pairs = Vec::new();
    for (a, b, _) in g.edges() {
        if set.contains(&a) {
            continue; // paths stop at their first set vertex
        }
        let pair = net.add_arc(2 * a as usize + 1, 2 * b as usize, 1);
        edge_pairs.push((a, b, pair));
    }
    let s = 2 * v as usize + 1;
    let flow = net.max_flow(s, sink, k as i64);
    if (flow as usize) < k {
        let separator = split_separator(&net, n, s);
        return Err(Error::infeasible(
            format!("no {k}-fan from {v}: flow {flow}"),
            Some(CutWitness::Vertices(VertexCut {
                separator,
                pair: (v, *set.iter().next().unwrap()),
            })),
        ));
    }
    let mut flows = BTreeMap::new();
    for &(a, b, pair) in &edge_pairs {
        if net.flow_on(pair) > 0 {
            flows.insert((a, b), 1u32);
        }
    }
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        paths.push(walk_flow_path(&mut flows, v, set)?);
    }
    let sys = PathSystem { paths, mode: Mode::Vertex, pairing: None };
    if !sys.is_fan(g, v, set, FanDirection::To, k) {
        return Err(Error::internal("constructed fan fails its own predicate"));
    }
    Ok(sys)
}

/// k-arc-fan: edge-disjoint variant of `k_fan`.
pub fn k_arc_fan(
    g: &DirectedMultigraph,
    v: u32,
    set: &BTreeSet<u32>,
    direction: FanDirection,
    k: usize,
) -> Result<PathSystem> {
    if direction == FanDirection::From {
        let rev = g.reverse();
        return Ok(reverse_system(k_arc_fan(&rev, v, set, FanDirection::To, k)?, Mode::Arc));
    }
    if set.contains(&v) {
        return Err(Error::input("fan apex must lie outside the target set"));
    }
    if set.is_empty() {
        return Err(Error::input("fan target set is empty"));
    }
    if set.iter().any(|&s| s as usize >= g.n()) || v as usize >= g.n() {
        return Err(Error::input("fan vertex out of range"));
    }
    let n = g.n();
    let sink = n;
    let mut net = FlowNetwork::new(n + 1);
    let mut edge_pairs = Vec::new();
    for (a, b, m) in g.edges() {
        if set.contains(&a) {
            continue;
        }
        let pair = net.add_arc(a as usize, b as usize, (m as i64).min(k as i64));
        edge_pairs.push((a, b, pair));
    }
    for &x in set {
        net.add_arc(x as usize, sink, k as i64);
    }
    let flow = net.max_flow(v as usize, sink, k as i64);
    if (flow as usize) < k {
        let reach = net.residual_reachable(v as usize);
        let mut edges = Vec::new();
        for (a, b, m) in g.edges() {
            if !set.contains(&a) && reach[a as usize] && !reach[b as usize] {
                for _ in 0..m.min(k as u32) {
                    edges.push((a, b));
                }
            }
        }
        return Err(Error::infeasible(
            format!("no {k}-arc-fan from {v}: flow {flow}"),
            Some(CutWitness::Arcs(ArcCut { edges, pair: (v, *set.iter().next().unwrap()) })),
        ));
    }
    let mut flows = BTreeMap::new();
    for &(a, b, pair) in &edge_pairs {
        let f = net.flow_on(pair);
        if f > 0 {
            flows.insert((a, b), f as u32);
        }
    }
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        paths.push(walk_flow_path(&mut flows, v, set)?);
    }
    let sys = PathSystem { paths, mode: Mode::Arc, pairing: None };
    if !sys.is_fan(g, v, set, FanDirection::To, k) {
        return Err(Error::internal("constructed arc-fan fails its own predicate"));
    }
    Ok(sys)
}

/// k disjoint paths from sources to targets (mode-dependent disjointness),
/// returning the pairing permutation.
pub fn disjoint_paths(
    g: &DirectedMultigraph,
    sources: &[u32],
    targets: &[u32],
    mode: Mode,
) -> Result<PathSystem> {
    let k = sources.len();
    if k == 0 || targets.len() != k {
        return Err(Error::input("sources and targets must be equal-length and nonempty"));
    }
    let mut all: Vec<u32> = sources.iter().chain(targets.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != 2 * k {
        return Err(Error::input("sources and targets must be 2k distinct vertices"));
    }
    if all.iter().any(|&v| v as usize >= g.n()) {
        return Err(Error::input("endpoint out of range"));
    }
    let n = g.n();
    match mode {
        Mode::Vertex => {
            let ss = 2 * n;
            let tt = 2 * n + 1;
            let mut net = FlowNetwork::new(2 * n + 2);
            for x in 0..n {
                net.add_arc(2 * x, 2 * x + 1, 1);
            }
            let mut edge_pairs = Vec::new();
            for (a, b, _) in g.edges() {
                let pair = net.add_arc(2 * a as usize + 1, 2 * b as usize, 1);
                edge_pairs.push((a, b, pair));
            }
            for &a in sources {
                net.add_arc(ss, 2 * a as usize, 1);
            }
            for &b in targets {
                net.add_arc(2 * b as usize + 1, tt, 1);
            }
            let flow = net.max_flow(ss, tt, k as i64);
            if (flow as usize) < k {
                let separator = split_separator(&net, n, ss);
                return Err(Error::infeasible(
                    format!("only {flow} of {k} vertex-disjoint paths exist"),
                    Some(CutWitness::Vertices(VertexCut {
                        separator,
                        pair: (sources[0], targets[0]),
                    })),
                ));
            }
            let mut flows = BTreeMap::new();
            for &(a, b, pair) in &edge_pairs {
                if net.flow_on(pair) > 0 {
                    flows.insert((a, b), 1u32);
                }
            }
            let stop: BTreeSet<u32> = targets.iter().copied().collect();
            let mut paths = Vec::with_capacity(k);
            let mut pairing = vec![usize::MAX; k];
            for (i, &a) in sources.iter().enumerate() {
                let p = walk_flow_path(&mut flows, a, &stop)?;
                let j = targets
                    .iter()
                    .position(|&b| b == p.last())
                    .ok_or_else(|| Error::internal("path ended off-target"))?;
                pairing[i] = j;
                paths.push(p);
            }
            let sys = PathSystem { paths, mode, pairing: Some(pairing) };
            if !sys.is_disjoint(g, None) {
                return Err(Error::internal("disjoint path system fails disjointness"));
            }
            Ok(sys)
        }
        Mode::Arc => {
            let ss = n;
            let tt = n + 1;
            let mut net = FlowNetwork::new(n + 2);
            let mut edge_pairs = Vec::new();
            for (a, b, m) in g.edges() {
                let pair = net.add_arc(a as usize, b as usize, (m as i64).min(k as i64));
                edge_pairs.push((a, b, pair));
            }
            for &a in sources {
                net.add_arc(ss, a as usize, 1);
            }
            let mut terminal_pairs = Vec::new();
            for &b in targets {
                terminal_pairs.push((b, net.add_arc(b as usize, tt, 1)));
            }
            let flow = net.max_flow(ss, tt, k as i64);
            if (flow as usize) < k {
                let reach = net.residual_reachable(ss);
                let mut edges = Vec::new();
                for (a, b, m) in g.edges() {
                    if reach[a as usize] && !reach[b as usize] {
                        for _ in 0..m.min(k as u32) {
                            edges.push((a, b));
                        }
                    }
                }
                return Err(Error::infeasible(
                    format!("only {flow} of {k} edge-disjoint paths exist"),
                    Some(CutWitness::Arcs(ArcCut { edges, pair: (sources[0], targets[0]) })),
                ));
            }
            let mut flows = BTreeMap::new();
            for &(a, b, pair) in &edge_pairs {
                let f = net.flow_on(pair);
                if f > 0 {
                    flows.insert((a, b), f as u32);
                }
            }
            // Per-target terminal budget: a walk only ends where tt-flow remains.
            let mut budget: BTreeMap<u32, i64> = terminal_pairs
                .iter()
                .map(|&(b, p)| (b, net.flow_on(p)))
                .collect();
            let mut paths = Vec::with_capacity(k);
            let mut pairing = vec![usize::MAX; k];
            for (i, &a) in sources.iter().enumerate() {
                let p = walk_arc_flow_path(&mut flows, a, &mut budget)?;
                let j = targets
                    .iter()
                    .position(|&b| b == p.last())
                    .ok_or_else(|| Error::internal("path ended off-target"))?;
                pairing[i] = j;
                paths.push(p);
            }
            let sys = PathSystem { paths, mode, pairing: Some(pairing) };
            if !sys.is_disjoint(g, None) {
                return Err(Error::internal("edge-disjoint system exceeds multiplicities"));
            }
            Ok(sys)
        }
    }
}

/// Arc-mode walk: terminate at a vertex with positive terminal budget,
/// otherwise continue along remaining flow, splicing cycles.
fn walk_arc_flow_path(
    flows: &mut BTreeMap<(u32, u32), u32>,
    start: u32,
    budget: &mut BTreeMap<u32, i64>,
) -> Result<Path> {
    let mut verts = vec![start];
    let mut pos = BTreeMap::new();
    pos.insert(start, 0usize);
    let mut cur = start;
    loop {
        if verts.len() > 1 {
            if let Some(b) = budget.get_mut(&cur) {
                if *b > 0 {
                    *b -= 1;
                    break;
                }
            }
        }
        let next = flows
            .range((cur, 0)..=(cur, u32::MAX))
            .find(|(_, &m)| m > 0)
            .map(|(&(_, h), _)| h)
            .ok_or_else(|| Error::internal("arc flow walk stuck"))?;
        *flows.get_mut(&(cur, next)).unwrap() -= 1;
        if let Some(&at) = pos.get(&next) {
            for dropped in verts.drain(at + 1..) {
                pos.remove(&dropped);
            }
        } else {
            verts.push(next);
            pos.insert(next, verts.len() - 1);
        }
        cur = next;
    }
    Path::new(verts)
}

// ---------------------------------------------------------------------------
// h(k, D): minimum spanning subgraph with all in/out degrees >= k.
// ---------------------------------------------------------------------------

/// Minimum-edge spanning subgraph with min in/out degree >= k, and its size
/// h(k, D). `multigraph_capacities` admits parallel instances (an extension
/// beyond simple digraphs, off by default).
pub fn min_degree_spanning_subgraph(
    g: &DirectedMultigraph,
    k: usize,
    multigraph_capacities: bool,
) -> Result<(DirectedMultigraph, usize)> {
    if !multigraph_capacities && !g.is_simple() {
        return Err(Error::input(
            "h(k, D) is defined on simple digraphs; pass multigraph_capacities to extend",
        ));
    }
    let n = g.n();
    for v in 0..n as u32 {
        if g.out_degree(v) < k {
            return Err(Error::infeasible(format!("vertex {v} has out-degree < {k}"), None));
        }
        if g.in_degree(v) < k {
            return Err(Error::infeasible(format!("vertex {v} has in-degree < {k}"), None));
        }
    }
    // Nodes: 0 = s, 1 = t, tail-copy v = 2+v, head-copy v = 2+n+v.
    let s = 0usize;
    let t = 1usize;
    let tail = |v: u32| 2 + v as usize;
    let head = |v: u32| 2 + n + v as usize;
    let mut arcs = Vec::new();
    for v in 0..n as u32 {
        arcs.push(DemandArc { from: s, to: tail(v), lower: k as i64, cap: INF });
    }
    for v in 0..n as u32 {
        arcs.push(DemandArc { from: head(v), to: t, lower: k as i64, cap: INF });
    }
    let mut edge_arcs = Vec::new();
    for (u, v, m) in g.edges() {
        let cap = if multigraph_capacities { m as i64 } else { 1 };
        edge_arcs.push((u, v));
        arcs.push(DemandArc { from: tail(u), to: head(v), lower: 0, cap });
    }
    let sol = min_flow_with_demands(2 + 2 * n, s, t, &arcs)?;
    let mut kept = Vec::new();
    for (i, &(u, v)) in edge_arcs.iter().enumerate() {
        let f = sol.arc_flows[2 * n + i];
        if f > 0 {
            kept.push((u, v, f as u32));
        }
    }
    let sub = DirectedMultigraph::from_edges(n, &kept)?;
    let h = sub.edge_count();
    debug_assert_eq!(h as i64, sol.value);
    Ok((sub, h))
}


#[cfg(test)]
mod tests {
    use super::*;
    pub use super::tests_support::{brute_is_k_connected, strongly_connected_check};
    use crate::generate::{
        gen_dk, gen_doubled_tree, gen_g_family, gen_random_tournament, gen_t_family,
    };
    use crate::graph::DirectedMultigraph;
    use crate::util::Rng;

    fn directed_cycle(n: usize) -> DirectedMultigraph {
        let edges: Vec<(u32, u32, u32)> =
            (0..n as u32).map(|v| (v, (v + 1) % n as u32, 1)).collect();
        DirectedMultigraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn split_flow_between_opposite_big_side_vertices() {
        // Internally disjoint routes between two big-side vertices of
        // DK_{2,4}: exactly the two small-side hops.
        let g = gen_dk(2, 6).unwrap();
        let mut net = FlowNetwork::new(2 * g.n());
        for x in 0..g.n() {
            net.add_arc(2 * x, 2 * x + 1, 1);
        }
        for (a, b, _) in g.edges() {
            net.add_arc(2 * a as usize + 1, 2 * b as usize, 1);
        }
        assert_eq!(net.max_flow(2 * 2 + 1, 2 * 3, crate::flow::INF), 2);
    }

    #[test]
    fn dk_connectivity() {
        let g = gen_dk(2, 6).unwrap();
        assert!(is_k_connected(&g, 2));
        let w = vertex_connectivity_witness(&g, 3).expect("not 3-connected");
        assert_eq!(w.separator.len(), 2);
        assert_eq!(w.separator, vec![0, 1]); // the small side
        let removed = w.separator.clone();
        assert!(!strongly_connected_check(&g, &removed));
    }

    #[test]
    fn cycle_connectivity() {
        let c = directed_cycle(6);
        assert!(is_k_connected(&c, 1));
        assert!(!is_k_connected(&c, 2));
    }

    #[test]
    fn verifier_matches_brute_force_small() {
        let mut rng = Rng::new(3);
        for trial in 0..60 {
            let n = 4 + (trial % 5);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in 0..n as u32 {
                    if u != v && rng.chance(3, 5) {
                        edges.push((u, v, 1));
                    }
                }
            }
            let g = DirectedMultigraph::from_edges(n, &edges).unwrap();
            for k in 1..=3usize {
                assert_eq!(
                    is_k_connected(&g, k),
                    brute_is_k_connected(&g, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn arc_connectivity_examples() {
        let dt = gen_doubled_tree(7, 2, 5).unwrap();
        assert!(is_k_arc_connected(&dt, 2));
        let w = arc_connectivity_witness(&dt, 3).expect("not 3-arc-connected");
        assert!(w.edges.len() <= 2);
        assert!(is_k_arc_connected(&directed_cycle(5), 1));
        assert!(!is_k_arc_connected(&directed_cycle(5), 2));
    }

    #[test]
    fn arc_witness_disconnects() {
        let dt = gen_doubled_tree(9, 1, 8).unwrap();
        let w = arc_connectivity_witness(&dt, 2).expect("tree doubling is exactly 1-arc-connected");
        let mut g = dt.clone();
        for &(a, b) in &w.edges {
            g.remove_one_edge(a, b);
        }
        let mut seen = vec![false; g.n()];
        seen[w.pair.0 as usize] = true;
        let mut stack = vec![w.pair.0];
        while let Some(x) = stack.pop() {
            for (y, _) in g.out_neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        assert!(!seen[w.pair.1 as usize]);
    }

    #[test]
    fn fan_examples() {
        let g = gen_dk(2, 6).unwrap();
        let set: BTreeSet<u32> = [0u32, 1].into_iter().collect();
        let fan = k_fan(&g, 3, &set, FanDirection::To, 2).unwrap();
        assert!(fan.paths.iter().all(|p| p.len_edges() == 1));

        let c = directed_cycle(7);
        let set: BTreeSet<u32> = [5u32].into_iter().collect();
        let fan = k_fan(&c, 1, &set, FanDirection::To, 1).unwrap();
        assert_eq!(fan.paths[0].vertices(), &[1, 2, 3, 4, 5]);

        let (t, _) = gen_random_tournament(20, 2, 99).unwrap();
        let set: BTreeSet<u32> = [11u32, 13, 17].into_iter().collect();
        let fan = k_fan(&t, 4, &set, FanDirection::To, 2).unwrap();
        assert!(fan.is_fan(&t, 4, &set, FanDirection::To, 2));
        let fan = k_fan(&t, 4, &set, FanDirection::From, 2).unwrap();
        assert!(fan.is_fan(&t, 4, &set, FanDirection::From, 2));
    }

    #[test]
    fn fan_infeasible_carries_witness() {
        let c = directed_cycle(6);
        let set: BTreeSet<u32> = [3u32, 4].into_iter().collect();
        match k_fan(&c, 0, &set, FanDirection::To, 2) {
            Err(Error::Infeasible { witness: Some(CutWitness::Vertices(w)), .. }) => {
                assert!(w.separator.len() < 2);
            }
            other => panic!("expected infeasible with witness, got {other:?}"),
        }
    }

    #[test]
    fn arc_fan_examples() {
        let dt = gen_doubled_tree(7, 2, 5).unwrap();
        let leaf = (1..7u32).find(|&v| dt.out_nbr_count(v) == 1).unwrap();
        let set: BTreeSet<u32> = [0u32].into_iter().collect();
        let fan = k_arc_fan(&dt, leaf, &set, FanDirection::To, 2).unwrap();
        assert!(fan.is_fan(&dt, leaf, &set, FanDirection::To, 2));

        let c = directed_cycle(5);
        let set: BTreeSet<u32> = [3u32].into_iter().collect();
        let fan = k_arc_fan(&c, 0, &set, FanDirection::To, 1).unwrap();
        assert!(fan.is_fan(&c, 0, &set, FanDirection::To, 1));

        let g = gen_dk(2, 6).unwrap();
        let set: BTreeSet<u32> = [0u32, 1].into_iter().collect();
        let fan = k_arc_fan(&g, 2, &set, FanDirection::To, 2).unwrap();
        assert!(fan.is_fan(&g, 2, &set, FanDirection::To, 2));
    }

    #[test]
    fn disjoint_paths_examples() {
        let c = directed_cycle(5);
        let sys = disjoint_paths(&c, &[0], &[3], Mode::Vertex).unwrap();
        assert_eq!(sys.paths[0].first(), 0);
        assert_eq!(sys.paths[0].last(), 3);

        let g = gen_dk(3, 9).unwrap();
        let sys = disjoint_paths(&g, &[3, 4, 5], &[6, 7, 8], Mode::Vertex).unwrap();
        assert!(sys.is_disjoint(&g, None));
        for p in &sys.paths {
            assert_eq!(p.len_edges(), 2);
            assert!(p.vertices()[1] < 3);
        }
        let mids: BTreeSet<u32> = sys.paths.iter().map(|p| p.vertices()[1]).collect();
        assert_eq!(mids.len(), 3);

        assert!(disjoint_paths(&g, &[3, 4], &[4, 5], Mode::Vertex).is_err());
    }

    #[test]
    fn disjoint_paths_arc_mode() {
        let dt = gen_doubled_tree(8, 2, 21).unwrap();
        let sys = disjoint_paths(&dt, &[1, 2], &[3, 4], Mode::Arc).unwrap();
        assert!(sys.is_disjoint(&dt, None));
        let pairing = sys.pairing.unwrap();
        let mut sorted = pairing.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1]);
    }

    #[test]
    fn h_value_examples() {
        let c = directed_cycle(8);
        let (sub, h) = min_degree_spanning_subgraph(&c, 1, false).unwrap();
        assert_eq!(h, 8);
        assert_eq!(sub, c);

        let g = gen_g_family(3, 3, 1, 1).unwrap();
        assert_eq!(g.n(), 8);
        let (_, h) = min_degree_spanning_subgraph(&g, 1, false).unwrap();
        assert_eq!(h, 9); // kn + k·dbar = 8 + 1

        let t = gen_t_family(5, 5, 2).unwrap();
        assert_eq!(t.n(), 12);
        let (sub, h) = min_degree_spanning_subgraph(&t, 2, false).unwrap();
        assert!(h >= 2 * 12 + 1);
        assert!(sub.min_out_degree() >= 2 && sub.min_in_degree() >= 2);
    }

    #[test]
    fn h_with_multigraph_capacities() {
        let dt = gen_doubled_tree(8, 2, 3).unwrap();
        assert!(min_degree_spanning_subgraph(&dt, 2, false).is_err());
        let (sub, h) = min_degree_spanning_subgraph(&dt, 2, true).unwrap();
        assert!(sub.min_out_degree() >= 2 && sub.min_in_degree() >= 2);
        assert!(h >= 2 * 8);
        assert!(h <= dt.edge_count());
    }

    /// DP oracle: process vertices in id order choosing each one's out-edge
    /// set; the state caps every vertex's in-degree at k.
    pub fn brute_h(g: &DirectedMultigraph, k: usize) -> Option<usize> {
        let n = g.n();
        let cap = k + 1;
        let mut state_count = 1usize;
        for _ in 0..n {
            state_count *= cap;
        }
        let digit = |s: usize, v: usize| -> usize {
            let mut s = s;
            for _ in 0..v {
                s /= cap;
            }
            s % cap
        };
        let mut dist = vec![usize::MAX; state_count];
        dist[0] = 0;
        for u in 0..n as u32 {
            let outs: Vec<u32> = g.out_neighbors(u).map(|(w, _)| w).collect();
            if outs.len() < k {
                return None;
            }
            let mut next = vec![usize::MAX; state_count];
            for mask in 0u32..(1 << outs.len()) {
                let pop = mask.count_ones() as usize;
                if pop < k {
                    continue;
                }
                for s in 0..state_count {
                    if dist[s] == usize::MAX {
                        continue;
                    }
                    let mut ns = s;
                    for (i, &w) in outs.iter().enumerate() {
                        if mask >> i & 1 == 1 && digit(ns, w as usize) < k {
                            let mut mult = 1usize;
                            for _ in 0..w {
                                mult *= cap;
                            }
                            ns += mult;
                        }
                    }
                    let cand = dist[s] + pop;
                    if cand < next[ns] {
                        next[ns] = cand;
                    }
                }
            }
            dist = next;
        }
        let mut full = 0usize;
        for v in 0..n {
            let mut mult = 1usize;
            for _ in 0..v {
                mult *= cap;
            }
            full += k * mult;
        }
        if dist[full] == usize::MAX {
            None
        } else {
            Some(dist[full])
        }
    }

    #[test]
    fn h_matches_brute_force_on_tiny_graphs() {
        let mut rng = Rng::new(17);
        let mut checked = 0;
        while checked < 25 {
            let n = 4 + rng.below(2) as usize;
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in 0..n as u32 {
                    if u != v && rng.chance(7, 10) {
                        edges.push((u, v, 1));
                    }
                }
            }
            let g = DirectedMultigraph::from_edges(n, &edges).unwrap();
            let k = 1 + rng.below(2) as usize;
            let brute = brute_h(&g, k);
            let ours = min_degree_spanning_subgraph(&g, k, false).ok().map(|(_, h)| h);
            assert_eq!(ours, brute, "n={n} k={k}");
            checked += 1;
        }
    }

    #[test]
    fn removability_matches_full_verifier() {
        let mut rng = Rng::new(23);
        for _ in 0..40 {
            let n = 5 + rng.below(3) as usize;
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in 0..n as u32 {
                    if u != v && rng.chance(3, 4) {
                        edges.push((u, v, 1));
                    }
                }
            }
            let g = DirectedMultigraph::from_edges(n, &edges).unwrap();
            for k in 1..=2usize {
                if is_k_connected(&g, k) {
                    for (u, v) in g.edges().map(|(u, v, _)| (u, v)).collect::<Vec<_>>() {
                        let mut h = g.clone();
                        let fast = edge_is_removable(&mut h, u, v, k, Mode::Vertex);
                        let mut del = g.clone();
                        del.remove_one_edge(u, v);
                        assert_eq!(fast, is_k_connected(&del, k), "k={k} e=({u},{v})");
                    }
                }
                if is_k_arc_connected(&g, k) {
                    for (u, v) in g.edges().map(|(u, v, _)| (u, v)).collect::<Vec<_>>() {
                        let mut h = g.clone();
                        let fast = edge_is_removable(&mut h, u, v, k, Mode::Arc);
                        let mut del = g.clone();
                        del.remove_one_edge(u, v);
                        assert_eq!(fast, is_k_arc_connected(&del, k), "arc k={k} e=({u},{v})");
                    }
                }
            }
        }
    }

    #[test]
    fn random_subset_spotcheck_on_verified_graph() {
        let (g, _) = gen_random_tournament(24, 2, 7).unwrap();
        assert!(is_k_connected(&g, 2));
        let mut rng = Rng::new(123);
        for _ in 0..100 {
            let v = rng.below(24) as u32;
            assert!(strongly_connected_check(&g, &[v]));
        }
    }
}
