//! Sparse linkage structures: ordered forward spanning subgraphs where
//! everything off the last t positions keeps out-degree k and everything off
//! the first t keeps in-degree k. Under any k-1 removals, every surviving
//! vertex still reaches the tail window and is reached from the head window,
//! which is what the gadget layer consumes.

use crate::error::{Error, Result};
use crate::flow::{min_flow_with_demands, DemandArc, INF};
use crate::graph::{DirectedMultigraph, EdgeBag, Mode, Path};
use crate::util::bits;
use std::collections::{BTreeMap, BTreeSet};

/// A linear ordering of the host's vertices together with a forward edge
/// selection certifying (σ, k, t)-goodness.
#[derive(Debug, Clone)]
pub struct GoodLinkage {
    /// σ: position -> host vertex id.
    pub order: Vec<u32>,
    /// Forward edges selected (host ids), all respecting the ordering.
    pub forward: EdgeBag,
    pub k: usize,
    pub t: usize,
    pub achieved_edges: usize,
    /// kn - k + kΔ̄ for the host: recorded and monitored, never asserted.
    pub target_edges: usize,
    /// kn + 2k(k+Δ̄): enforced as a construction postcondition.
    pub cap_edges: usize,
    succ: BTreeMap<u32, Vec<u32>>,
    pred: BTreeMap<u32, Vec<u32>>,
}

/// Removal set for `link_query`.
#[derive(Debug, Clone)]
pub enum Removal {
    Vertices(BTreeSet<u32>),
    Edges(BTreeSet<(u32, u32)>),
}

impl Removal {
    pub fn none() -> Self {
        Removal::Vertices(BTreeSet::new())
    }

    pub fn size(&self) -> usize {
        match self {
            Removal::Vertices(s) => s.len(),
            Removal::Edges(s) => s.len(),
        }
    }

    fn blocks_vertex(&self, v: u32) -> bool {
        matches!(self, Removal::Vertices(s) if s.contains(&v))
    }

    fn blocks_edge(&self, u: u32, v: u32) -> bool {
        match self {
            Removal::Vertices(s) => s.contains(&u) || s.contains(&v),
            Removal::Edges(s) => s.contains(&(u, v)),
        }
    }
}

/// Answer to a link query: window vertices and the connecting paths inside
/// the forward selection minus the removal.
#[derive(Debug, Clone)]
pub struct LinkAnswer {
    pub from_vertex: u32,
    pub to_vertex: u32,
    pub path_to_u: Path,
    pub path_from_u: Path,
}

impl GoodLinkage {
    /// Assembles a linkage from explicit parts; used by checkers and tests.
    pub fn from_parts(order: Vec<u32>, forward: EdgeBag, k: usize, t: usize) -> Self {
        let mut succ: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        let mut pred: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (u, v, _) in forward.iter() {
            succ.entry(u).or_default().push(v);
            pred.entry(v).or_default().push(u);
        }
        let achieved_edges = forward.count();
        GoodLinkage {
            order,
            forward,
            k,
            t,
            achieved_edges,
            target_edges: 0,
            cap_edges: usize::MAX,
            succ,
            pred,
        }
    }

    /// Literal check of the three goodness conditions.
    pub fn is_good(&self) -> bool {
        let n = self.order.len();
        let mut position = BTreeMap::new();
        for (p, &v) in self.order.iter().enumerate() {
            position.insert(v, p);
        }
        // (a) every selected edge goes forward.
        for (u, v, _) in self.forward.iter() {
            let (Some(&pu), Some(&pv)) = (position.get(&u), position.get(&v)) else {
                return false;
            };
            if pu >= pv {
                return false;
            }
        }
        // (b) out-degree k off the last t positions, (c) in-degree k off the
        // first t.
        let mut outd: BTreeMap<u32, usize> = BTreeMap::new();
        let mut ind: BTreeMap<u32, usize> = BTreeMap::new();
        for (u, v, _) in self.forward.iter() {
            *outd.entry(u).or_insert(0) += 1;
            *ind.entry(v).or_insert(0) += 1;
        }
        for (p, &v) in self.order.iter().enumerate() {
            if p + self.t < n && outd.get(&v).copied().unwrap_or(0) < self.k {
                return false;
            }
            if p >= self.t && ind.get(&v).copied().unwrap_or(0) < self.k {
                return false;
            }
        }
        true
    }

    /// The forward selection is acyclic (implied by (a), asserted directly).
    pub fn forward_is_acyclic(&self) -> bool {
        let mut position = BTreeMap::new();
        for (p, &v) in self.order.iter().enumerate() {
            position.insert(v, p);
        }
        self.forward
            .iter()
            .all(|(u, v, _)| position.get(&u) < position.get(&v))
    }

    pub fn first_window(&self) -> Vec<u32> {
        self.order[..self.t.min(self.order.len())].to_vec()
    }

    pub fn last_window(&self) -> Vec<u32> {
        let n = self.order.len();
        self.order[n.saturating_sub(self.t)..].to_vec()
    }

    /// Walks the forward selection minus the removal: from some vertex of
    /// the first window to `u`, and from `u` to some vertex of the last
    /// window. Guaranteed to succeed whenever |removal| <= k-1 (and u
    /// survives, in vertex mode); a search failure is an internal defect.
    pub fn link_query(&self, u: u32, removed: &Removal) -> Result<LinkAnswer> {
        if removed.size() + 1 > self.k {
            return Err(Error::input(format!(
                "removal of size {} exceeds k-1 = {}",
                removed.size(),
                self.k - 1
            )));
        }
        if self.t < self.k {
            return Err(Error::input("link query requires t >= k"));
        }
        if removed.blocks_vertex(u) {
            return Err(Error::input("query vertex is removed"));
        }
        if !self.order.contains(&u) {
            return Err(Error::input("query vertex not in the linkage"));
        }
        let n = self.order.len();
        let mut position = BTreeMap::new();
        for (p, &v) in self.order.iter().enumerate() {
            position.insert(v, p);
        }
        let bfs = |forward: bool| -> BTreeMap<u32, u32> {
            let mut parent = BTreeMap::new();
            parent.insert(u, u);
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(u);
            let empty: Vec<u32> = Vec::new();
            while let Some(x) = queue.pop_front() {
                let nbrs = if forward {
                    self.succ.get(&x).unwrap_or(&empty)
                } else {
                    self.pred.get(&x).unwrap_or(&empty)
                };
                for &y in nbrs {
                    let (a, b) = if forward { (x, y) } else { (y, x) };
                    if removed.blocks_edge(a, b) || removed.blocks_vertex(y) {
                        continue;
                    }
                    if !parent.contains_key(&y) {
                        parent.insert(y, x);
                        queue.push_back(y);
                    }
                }
            }
            parent
        };
        let fwd = bfs(true);
        let to_vertex = fwd
            .keys()
            .copied()
            .max_by_key(|v| position[v])
            .filter(|v| position[v] + self.t >= n)
            .ok_or_else(|| Error::internal("forward walk never reaches the tail window"))?;
        let bwd = bfs(false);
        let from_vertex = bwd
            .keys()
            .copied()
            .min_by_key(|v| position[v])
            .filter(|v| position[v] < self.t)
            .ok_or_else(|| Error::internal("backward walk never reaches the head window"))?;
        let unwind = |parents: &BTreeMap<u32, u32>, end: u32| -> Vec<u32> {
            let mut seq = vec![end];
            let mut cur = end;
            while parents[&cur] != cur {
                cur = parents[&cur];
                seq.push(cur);
            }
            seq
        };
        // Backward parents follow in-edges away from u, so the unwound list
        // already runs from_vertex -> ... -> u in edge orientation.
        let to_u = unwind(&bwd, from_vertex);
        let from_u = {
            let mut s = unwind(&fwd, to_vertex);
            s.reverse();
            s
        };
        Ok(LinkAnswer {
            from_vertex,
            to_vertex,
            path_to_u: Path::new(to_u)?,
            path_from_u: Path::new(from_u)?,
        })
    }
}

/// Free-function form of the goodness check.
pub fn is_good(l: &GoodLinkage) -> bool {
    l.is_good()
}

// ---------------------------------------------------------------------------
// Construction.
// ---------------------------------------------------------------------------

/// Hamiltonian path of a semicomplete digraph by ordered insertion.
fn hamiltonian_path_order(g: &DirectedMultigraph) -> Vec<u32> {
    let mut path: Vec<u32> = vec![0];
    for v in 1..g.n() as u32 {
        let mut at = path.len();
        for (i, &w) in path.iter().enumerate() {
            if g.has_edge(v, w) {
                at = i;
                break;
            }
        }
        path.insert(at, v);
    }
    path
}

struct Peel<'a> {
    g: &'a DirectedMultigraph,
    n: usize,
    k: usize,
    t: usize,
    pool: Vec<u64>,
    front_bits: Vec<u64>,
    back_bits: Vec<u64>,
    front: Vec<u32>,
    back: Vec<u32>, // in placement order; final order is the reverse
}

impl<'a> Peel<'a> {
    fn new(g: &'a DirectedMultigraph, k: usize, t: usize) -> Self {
        let n = g.n();
        let words = bits::words_for(n);
        let mut pool = vec![u64::MAX; words];
        for i in n..words * 64 {
            bits::clear(&mut pool, i);
        }
        Peel {
            g,
            n,
            k,
            t,
            pool,
            front_bits: vec![0; words],
            back_bits: vec![0; words],
            front: Vec::new(),
            back: Vec::new(),
        }
    }

    /// Back placement: the vertex ends up after everything still unplaced,
    /// so in-neighbours in pool ∪ front are guaranteed earlier. Preference
    /// goes to candidates that already see k out-neighbours among the
    /// back-placed (their later positions), then to pool-sink-like vertices.
    fn place_back(&mut self) -> bool {
        let position = self.n - self.back.len(); // 1-indexed slot being filled
        let needs_in = position >= self.t + 1;
        let needs_out = self.back.len() >= self.t;
        let mut best: Option<(bool, usize, u32)> = None;
        for v in bits::iter_ones(&self.pool) {
            if needs_in {
                let early = bits::count_and(self.g.in_row(v), &self.pool)
                    + bits::count_and(self.g.in_row(v), &self.front_bits);
                if early < self.k {
                    continue;
                }
            }
            let out_ok =
                !needs_out || bits::count_and(self.g.out_row(v), &self.back_bits) >= self.k;
            let pool_out = bits::count_and(self.g.out_row(v), &self.pool);
            let better = match best {
                None => true,
                Some((bo, po, _)) => (out_ok, std::cmp::Reverse(pool_out)) > (bo, std::cmp::Reverse(po)),
            };
            if better {
                best = Some((out_ok, pool_out, v as u32));
            }
        }
        if let Some((_, _, v)) = best {
            bits::clear(&mut self.pool, v as usize);
            bits::set(&mut self.back_bits, v as usize);
            self.back.push(v);
            true
        } else {
            false
        }
    }

    fn place_front(&mut self) -> bool {
        let position = self.front.len() + 1;
        let needs_out = position + self.t <= self.n;
        let needs_in = position >= self.t + 1;
        let mut best: Option<(bool, usize, u32)> = None;
        for v in bits::iter_ones(&self.pool) {
            if needs_out {
                let late = bits::count_and(self.g.out_row(v), &self.pool)
                    + bits::count_and(self.g.out_row(v), &self.back_bits);
                if late < self.k {
                    continue;
                }
            }
            let in_ok =
                !needs_in || bits::count_and(self.g.in_row(v), &self.front_bits) >= self.k;
            let pool_in = bits::count_and(self.g.in_row(v), &self.pool);
            let better = match best {
                None => true,
                Some((io, pi, _)) => (in_ok, std::cmp::Reverse(pool_in)) > (io, std::cmp::Reverse(pi)),
            };
            if better {
                best = Some((in_ok, pool_in, v as u32));
            }
        }
        if let Some((_, _, v)) = best {
            bits::clear(&mut self.pool, v as usize);
            bits::set(&mut self.front_bits, v as usize);
            self.front.push(v);
            true
        } else {
            false
        }
    }

    fn run(mut self) -> Vec<u32> {
        let mut back_turn = true;
        let mut stalls = 0;
        while bits::count(&self.pool) > 0 && stalls < 2 {
            let placed = if back_turn { self.place_back() } else { self.place_front() };
            if placed {
                stalls = 0;
            } else {
                stalls += 1;
            }
            back_turn = !back_turn;
        }
        // Both sides stalled: dump the leftovers into the middle by id.
        let mut order = self.front;
        order.extend(bits::iter_ones(&self.pool).map(|v| v as u32));
        order.extend(self.back.iter().rev());
        order
    }
}

/// Positions (0-indexed) violating the pointwise degree demands under σ.
fn pointwise_violations(
    g: &DirectedMultigraph,
    order: &[u32],
    k: usize,
    t: usize,
) -> (Vec<usize>, Vec<usize>) {
    let n = order.len();
    let words = bits::words_for(g.n());
    let mut after = vec![0u64; words];
    for &v in order {
        bits::set(&mut after, v as usize);
    }
    let mut out_viol = Vec::new();
    let mut in_viol = Vec::new();
    let mut before = vec![0u64; words];
    for (p, &v) in order.iter().enumerate() {
        bits::clear(&mut after, v as usize);
        if p + t < n && bits::count_and(g.out_row(v as usize), &after) < k {
            out_viol.push(p);
        }
        if p >= t && bits::count_and(g.in_row(v as usize), &before) < k {
            in_viol.push(p);
        }
        bits::set(&mut before, v as usize);
    }
    (out_viol, in_viol)
}

/// Builds a (σ, k, t)-good spanning selection over the simple reduction of
/// `d`, with t = 2k + Δ̄ - 1. The ordering comes from a symmetric peel (a
/// Hamiltonian insertion order for k = 1 on semicomplete inputs), violators
/// are relocated toward the exempt windows for a bounded number of rounds,
/// and the minimum forward edge set for the final ordering is selected by
/// the min-flow-with-demands kernel.
pub fn build_good(d: &DirectedMultigraph, k: usize) -> Result<GoodLinkage> {
    if k == 0 {
        return Err(Error::input("goodness parameter k must be >= 1"));
    }
    let g = d.reduce_to_simple();
    let n = g.n();
    let dbar = g.complement_max_degree();
    let t = 2 * k + dbar - 1;
    let target_edges = (k * n).saturating_sub(k) + k * dbar;
    let cap_edges = k * n + 2 * k * (k + dbar);

    let mut order: Vec<u32> = if n <= t {
        (0..n as u32).collect()
    } else if k == 1 && dbar == 0 {
        hamiltonian_path_order(&g)
    } else {
        Peel::new(&g, k, t).run()
    };

    // Repair: push out-violators into the back window, in-violators into the
    // front window, for a bounded number of rounds.
    let rounds = 4 + 2 * (k + dbar);
    for _ in 0..rounds {
        let (out_viol, in_viol) = pointwise_violations(&g, &order, k, t);
        if out_viol.is_empty() && in_viol.is_empty() {
            break;
        }
        let out_set: BTreeSet<usize> = out_viol.iter().copied().collect();
        let in_set: BTreeSet<usize> = in_viol.iter().copied().collect();
        let mut to_back: Vec<u32> = Vec::new();
        let mut to_front: Vec<u32> = Vec::new();
        let mut rest: Vec<u32> = Vec::new();
        for (p, &v) in order.iter().enumerate() {
            if out_set.contains(&p) {
                to_back.push(v);
            } else if in_set.contains(&p) {
                to_front.push(v);
            } else {
                rest.push(v);
            }
        }
        to_back.sort_unstable();
        to_front.sort_unstable();
        let mut next = to_front;
        next.extend(rest);
        next.extend(to_back);
        order = next;
    }
    let (out_viol, in_viol) = pointwise_violations(&g, &order, k, t);
    if !out_viol.is_empty() || !in_viol.is_empty() {
        return Err(Error::Construction(format!(
            "no valid ordering found after {rounds} repair rounds: {} out / {} in violations remain on {} vertices",
            out_viol.len(),
            in_viol.len(),
            n
        )));
    }

    // Minimum forward selection for σ: one unit through an edge arc serves
    // the tail's out-slot and the head's in-slot simultaneously.
    let s = 0usize;
    let t_node = 1usize;
    let tail = |p: usize| 2 + p;
    let head = |p: usize| 2 + n + p;
    let mut arcs = Vec::new();
    for p in 0..n {
        let lower = if p + t < n { k as i64 } else { 0 };
        arcs.push(DemandArc { from: s, to: tail(p), lower, cap: INF });
    }
    for p in 0..n {
        let lower = if p >= t { k as i64 } else { 0 };
        arcs.push(DemandArc { from: head(p), to: t_node, lower, cap: INF });
    }
    let mut pos_of = vec![0usize; g.n()];
    for (p, &v) in order.iter().enumerate() {
        pos_of[v as usize] = p;
    }
    let mut forward_edges = Vec::new();
    for (u, v, _) in g.edges() {
        let (pu, pv) = (pos_of[u as usize], pos_of[v as usize]);
        if pu < pv {
            arcs.push(DemandArc { from: tail(pu), to: head(pv), lower: 0, cap: 1 });
            forward_edges.push((u, v));
        }
    }
    let sol = min_flow_with_demands(2 + 2 * n, s, t_node, &arcs)
        .map_err(|e| Error::internal(format!("forward selection infeasible after pointwise check: {e}")))?;
    let mut forward = EdgeBag::new();
    let mut succ: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut pred: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (i, &(u, v)) in forward_edges.iter().enumerate() {
        if sol.arc_flows[2 * n + i] > 0 {
            forward.insert(u, v);
            succ.entry(u).or_default().push(v);
            pred.entry(v).or_default().push(u);
        }
    }
    let achieved_edges = forward.count();
    let linkage = GoodLinkage {
        order,
        forward,
        k,
        t,
        achieved_edges,
        target_edges,
        cap_edges,
        succ,
        pred,
    };
    if !linkage.is_good() {
        return Err(Error::internal("constructed linkage fails the goodness check"));
    }
    if achieved_edges > cap_edges {
        return Err(Error::Construction(format!(
            "selection needs {achieved_edges} edges, above the cap {cap_edges} (target {target_edges})"
        )));
    }
    Ok(linkage)
}

// ---------------------------------------------------------------------------
// Linkage blocks over vertex subsets and over path interiors.
// ---------------------------------------------------------------------------

/// A goodness-backed block: core edges inside D[U] such that under any k-1
/// removals every surviving member reaches the exit set and is reached from
/// the entry set through the core alone.
#[derive(Debug, Clone)]
pub struct LinkageBlock {
    pub core: EdgeBag,
    pub members: Vec<u32>,
    pub entry: Vec<u32>,
    pub exit: Vec<u32>,
    pub mode: Mode,
    pub k: usize,
    pub t: usize,
}

/// Block over D[U] via a (σ, k, t)-good selection; entry/exit are the first
/// and last t positions of σ.
pub fn linkage_block(
    d: &DirectedMultigraph,
    members: &[u32],
    k: usize,
    mode: Mode,
) -> Result<LinkageBlock> {
    if members.is_empty() {
        return Err(Error::input("linkage block needs a nonempty set"));
    }
    if members.len() == 1 {
        return Ok(LinkageBlock {
            core: EdgeBag::new(),
            members: members.to_vec(),
            entry: members.to_vec(),
            exit: members.to_vec(),
            mode,
            k,
            t: 1,
        });
    }
    let (sub, map) = d.restrict(members)?;
    let lk = build_good(&sub, k)?;
    let mut core = EdgeBag::new();
    for (u, v, _) in lk.forward.iter() {
        core.insert(map[u as usize], map[v as usize]);
    }
    Ok(LinkageBlock {
        core,
        members: map.clone(),
        entry: lk.first_window().iter().map(|&v| map[v as usize]).collect(),
        exit: lk.last_window().iter().map(|&v| map[v as usize]).collect(),
        mode,
        k,
        t: lk.t,
    })
}

/// Block over a subset of path interiors, with core edges avoiding every
/// path pair: the goodness parameter drops to k-1 and escape routes ride the
/// paths themselves to their endpoints. Vertex mode demands vertex-disjoint
/// minimal paths; minimality is load-bearing for the escape argument.
pub fn linkage_on_paths(
    d: &DirectedMultigraph,
    paths: &crate::connectivity::PathSystem,
    members: &[u32],
    k: usize,
    mode: Mode,
) -> Result<LinkageBlock> {
    if members.is_empty() {
        return Err(Error::input("linkage block needs a nonempty set"));
    }
    let interiors: BTreeSet<u32> = paths.interior_vertices().into_iter().collect();
    if members.iter().any(|v| !interiors.contains(v)) {
        return Err(Error::input("members must be interior vertices of the paths"));
    }
    if mode == Mode::Vertex {
        if !paths.is_disjoint(d, None) {
            return Err(Error::input("vertex mode requires vertex-disjoint paths"));
        }
        for p in &paths.paths {
            if !p.is_minimal_in(d) {
                return Err(Error::input("vertex mode requires minimal paths"));
            }
        }
    } else if !paths.is_disjoint(d, None) {
        return Err(Error::input("arc mode requires edge-disjoint paths"));
    }
    if k == 1 {
        // Nothing to demand: members exit along their own path.
        return Ok(LinkageBlock {
            core: EdgeBag::new(),
            members: members.to_vec(),
            entry: Vec::new(),
            exit: Vec::new(),
            mode,
            k,
            t: 0,
        });
    }
    let (sub, map) = d.restrict(members)?;
    // Remove path pairs so the core never aliases a path instance.
    let mut local = BTreeMap::new();
    for (i, &p) in map.iter().enumerate() {
        local.insert(p, i as u32);
    }
    let mut kept: Vec<(u32, u32, u32)> = Vec::new();
    let path_pairs: BTreeSet<(u32, u32)> = paths
        .paths
        .iter()
        .flat_map(|p| p.edges())
        .filter_map(|(a, b)| Some((*local.get(&a)?, *local.get(&b)?)))
        .collect();
    for (u, v, m) in sub.edges() {
        if !path_pairs.contains(&(u, v)) {
            kept.push((u, v, m));
        }
    }
    let stripped = DirectedMultigraph::from_edges(sub.n(), &kept)?;
    let lk = build_good(&stripped, k - 1)?;
    let mut core = EdgeBag::new();
    for (u, v, _) in lk.forward.iter() {
        core.insert(map[u as usize], map[v as usize]);
    }
    Ok(LinkageBlock {
        core,
        members: map.clone(),
        entry: lk.first_window().iter().map(|&v| map[v as usize]).collect(),
        exit: lk.last_window().iter().map(|&v| map[v as usize]).collect(),
        mode,
        k,
        t: lk.t,
    })
}
