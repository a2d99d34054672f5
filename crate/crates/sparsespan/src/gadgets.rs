//! Reachability gadgets assembled by the sparsifier: escapers (small sets
//! keep two-way contact with their complement), hubs (designated sets route
//! onto dominator sinks/sources), and absorbers (every vertex keeps contact
//! with fixed anchor sets). Each construction has an independent checker
//! that replays the definitional clauses by plain graph search over the
//! gadget's own edges.

use crate::connectivity::{k_arc_fan, k_fan, FanDirection, PathSystem};
use crate::dominance::{Trio, TrioParams};
use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, EdgeBag, Mode, Path};
use crate::linkage::{linkage_block, linkage_on_paths};
use crate::minimal::MinimalSubgraph;
use crate::util::{bits, Frac, Rng};
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------------
// Gadget records.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Escaper {
    pub edges: EdgeBag,
    /// U: the covered set.
    pub covered: Vec<u32>,
    /// U_out: exit vertices, disjoint from the covered set.
    pub exits: Vec<u32>,
    pub mode: Mode,
    pub k: usize,
}

#[derive(Debug, Clone)]
pub struct Hub {
    pub edges: EdgeBag,
    pub a0: Vec<u32>,
    pub b0: Vec<u32>,
    pub served_out: Vec<u32>,
    pub served_in: Vec<u32>,
    pub mode: Mode,
    pub k: usize,
}

/// Per-component edge accounting for reports.
#[derive(Debug, Clone, Default)]
pub struct AbsorberParts {
    pub path_edges: usize,
    pub escape_edges: usize,
    pub linkage_edges: usize,
    pub conn_edges: usize,
}

#[derive(Debug, Clone)]
pub struct Absorber {
    pub edges: EdgeBag,
    /// V_ex: the exempt set holding the path endpoints.
    pub exempt: Vec<u32>,
    pub paths: PathSystem,
    pub w_in: Vec<u32>,
    pub w_out: Vec<u32>,
    pub mode: Mode,
    pub k: usize,
    pub parts: AbsorberParts,
}

// ---------------------------------------------------------------------------
// Escapers.
// ---------------------------------------------------------------------------

/// Builds a k-escaper for `covered` from per-vertex fans inside a minimal
/// spanning subgraph of the matching mode. The minimal subgraph is passed in
/// so one extraction can serve a whole pipeline run.
pub fn build_escaper(
    d: &DirectedMultigraph,
    minimal: &MinimalSubgraph,
    covered: &[u32],
    k: usize,
    mode: Mode,
) -> Result<Escaper> {
    if minimal.mode != mode || minimal.k != k {
        return Err(Error::input("minimal subgraph mode/k mismatch"));
    }
    let n = d.n();
    let cov: BTreeSet<u32> = covered.iter().copied().collect();
    if cov.len() != covered.len() {
        return Err(Error::input("duplicate vertices in escaper set"));
    }
    match mode {
        Mode::Vertex => {
            if cov.len() + k > n {
                return Err(Error::input(format!(
                    "escaper needs |U| <= n - k, got |U|={} n={n} k={k}",
                    cov.len()
                )));
            }
        }
        Mode::Arc => {
            if cov.len() >= n {
                return Err(Error::input("escaper needs U to be a proper subset"));
            }
        }
    }
    let outside: BTreeSet<u32> = (0..n as u32).filter(|v| !cov.contains(v)).collect();
    let mut bag = EdgeBag::new();
    let mut exits: BTreeSet<u32> = BTreeSet::new();
    for &u in cov.iter() {
        let (out_fan, in_fan) = match mode {
            Mode::Vertex => (
                k_fan(&minimal.graph, u, &outside, FanDirection::To, k)?,
                k_fan(&minimal.graph, u, &outside, FanDirection::From, k)?,
            ),
            Mode::Arc => (
                k_arc_fan(&minimal.graph, u, &outside, FanDirection::To, k)?,
                k_arc_fan(&minimal.graph, u, &outside, FanDirection::From, k)?,
            ),
        };
        // The two fans of one vertex need their own instance-disjointness
        // but may share instances with each other and with other vertices.
        let mut per_u = out_fan.edge_bag();
        let in_bag = in_fan.edge_bag();
        per_u.union_max(&in_bag);
        bag.union_max(&per_u);
        for p in out_fan.paths.iter() {
            exits.insert(p.last());
        }
        for p in in_fan.paths.iter() {
            exits.insert(p.first());
        }
    }
    if bag.count() > 4 * k * cov.len() {
        return Err(Error::internal(format!(
            "escaper edge bound violated: {} > 4k|U| = {}",
            bag.count(),
            4 * k * cov.len()
        )));
    }
    if exits.len() > 2 * k * cov.len() {
        return Err(Error::internal("escaper exit bound violated"));
    }
    debug_assert!(exits.iter().all(|v| !cov.contains(v)));
    Ok(Escaper {
        edges: bag,
        covered: cov.into_iter().collect(),
        exits: exits.into_iter().collect(),
        mode,
        k,
    })
}

// ---------------------------------------------------------------------------
// Connector fans and hubs.
// ---------------------------------------------------------------------------

fn alive_mask(n: usize, removed: &[u32]) -> Vec<u64> {
    let words = bits::words_for(n);
    let mut mask = vec![u64::MAX; words];
    for i in n..words * 64 {
        bits::clear(&mut mask, i);
    }
    for &v in removed {
        bits::clear(&mut mask, v as usize);
    }
    mask
}

/// Picks the smallest candidate, preferring those outside `avoid`.
fn pick_candidate(
    row: &[u64],
    alive: &[u64],
    class_bits: &[u64],
    avoid: &[u64],
    hard_avoid: &BTreeSet<u32>,
    used: &BTreeSet<u32>,
) -> Option<u32> {
    let mut fallback = None;
    for cand in bits::iter_ones(row) {
        if !bits::get(alive, cand) || bits::get(class_bits, cand) {
            continue;
        }
        let cand32 = cand as u32;
        if hard_avoid.contains(&cand32) || used.contains(&cand32) {
            continue;
        }
        if bits::get(avoid, cand) {
            if fallback.is_none() {
                fallback = Some(cand32);
            }
            continue;
        }
        return Some(cand32);
    }
    fallback
}

/// Connector edges: a fan of at-most-3-edge paths from every w in `w_out`
/// onto `fan_target` dominator sinks, and mirrored fans from sources onto
/// `w_in`. The fan indices per vertex are the lowest qualifying ones.
///
/// Vertex mode keeps exit vertices outside the whole member union (the fan
/// must be vertex-disjoint, and the degree parameter pays for it). Arc mode
/// only needs edge-disjointness, so members are merely dispreferred; the
/// one vertex that must be avoided outright is the dominator's own anchor,
/// which is the only member with no guaranteed dominating step.
pub fn build_conn(
    g: &DirectedMultigraph,
    trio: &Trio,
    w_out: &[u32],
    w_in: &[u32],
    k: usize,
    fan_target: usize,
    mode: Mode,
) -> Result<EdgeBag> {
    let u_param = trio.params.u;
    if fan_target < k {
        return Err(Error::input("fan target below k"));
    }
    let excluded = trio.excluded();
    for &w in w_out.iter().chain(w_in) {
        if excluded.contains(&w) {
            return Err(Error::input(format!(
                "served vertex {w} lies inside the trio's member or exceptional sets"
            )));
        }
    }
    let n = g.n();
    let words = bits::words_for(n);
    let mut a_bits = vec![0u64; words];
    for &v in &trio.a_union {
        bits::set(&mut a_bits, v as usize);
    }
    let mut b_bits = vec![0u64; words];
    for &v in &trio.b_union {
        bits::set(&mut b_bits, v as usize);
    }
    let mut bag = EdgeBag::new();

    for &w in w_out {
        // Qualifying indices: dominated, or inside a large exception class.
        let mut indices: Vec<(usize, bool)> = Vec::new();
        for (i, dom) in trio.ins.iter().enumerate() {
            if dom.members.iter().any(|&a| g.has_edge(w, a)) {
                indices.push((i, true));
            } else if dom.u_plus.binary_search(&w).is_ok()
                && Frac::int(dom.u_plus.len() as i64) >= u_param
            {
                indices.push((i, false));
            }
        }
        if indices.len() < fan_target {
            return Err(Error::internal(format!(
                "vertex {w} qualifies for only {} of {fan_target} fan indices",
                indices.len()
            )));
        }
        indices.truncate(fan_target);
        let mut used_exits: BTreeSet<u32> = BTreeSet::new();
        for (i, dominated) in indices {
            let dom = &trio.ins[i];
            if dominated {
                let step = dom
                    .members
                    .iter()
                    .copied()
                    .filter(|&a| g.has_edge(w, a))
                    .min()
                    .expect("dominated");
                bag.mark(w, step);
                if step != dom.a {
                    bag.mark(step, dom.a);
                }
            } else {
                let alive = alive_mask(n, &dom.removed_before);
                let mut class_bits = vec![0u64; words];
                for &v in dom.u_plus.iter().chain(&dom.f_plus) {
                    bits::set(&mut class_bits, v as usize);
                }
                let mut hard_avoid = BTreeSet::new();
                let avoid: &[u64] = match mode {
                    Mode::Vertex => {
                        // Hard requirement, backed by d >= 6m + 5Δ̄.
                        for v in bits::iter_ones(&a_bits) {
                            hard_avoid.insert(v as u32);
                        }
                        &a_bits
                    }
                    Mode::Arc => {
                        hard_avoid.insert(dom.a);
                        &a_bits
                    }
                };
                let exit = pick_candidate(
                    g.out_row(w as usize),
                    &alive,
                    &class_bits,
                    avoid,
                    &hard_avoid,
                    &used_exits,
                )
                .ok_or_else(|| {
                    Error::internal(format!("no exit neighbour for {w} at index {i}"))
                })?;
                used_exits.insert(exit);
                bag.mark(w, exit);
                let step = dom
                    .members
                    .iter()
                    .copied()
                    .filter(|&a| g.has_edge(exit, a))
                    .min()
                    .ok_or_else(|| Error::internal("exit neighbour is not dominated"))?;
                bag.mark(exit, step);
                if step != dom.a {
                    bag.mark(step, dom.a);
                }
            }
        }
    }

    for &w in w_in {
        let mut indices: Vec<(usize, bool)> = Vec::new();
        for (i, dom) in trio.outs.iter().enumerate() {
            if dom.members.iter().any(|&b| g.has_edge(b, w)) {
                indices.push((i, true));
            } else if dom.u_minus.binary_search(&w).is_ok()
                && Frac::int(dom.u_minus.len() as i64) >= u_param
            {
                indices.push((i, false));
            }
        }
        if indices.len() < fan_target {
            return Err(Error::internal(format!(
                "vertex {w} qualifies for only {} of {fan_target} reverse fan indices",
                indices.len()
            )));
        }
        indices.truncate(fan_target);
        let mut used_entries: BTreeSet<u32> = BTreeSet::new();
        for (i, dominated) in indices {
            let dom = &trio.outs[i];
            if dominated {
                let step = dom
                    .members
                    .iter()
                    .copied()
                    .filter(|&b| g.has_edge(b, w))
                    .min()
                    .expect("dominated");
                bag.mark(step, w);
                if step != dom.b {
                    bag.mark(dom.b, step);
                }
            } else {
                let alive = alive_mask(n, &dom.removed_before);
                let mut class_bits = vec![0u64; words];
                for &v in dom.u_minus.iter().chain(&dom.f_minus) {
                    bits::set(&mut class_bits, v as usize);
                }
                let mut hard_avoid = BTreeSet::new();
                let avoid: &[u64] = match mode {
                    Mode::Vertex => {
                        for v in bits::iter_ones(&b_bits) {
                            hard_avoid.insert(v as u32);
                        }
                        &b_bits
                    }
                    Mode::Arc => {
                        hard_avoid.insert(dom.b);
                        &b_bits
                    }
                };
                let entry = pick_candidate(
                    g.in_row(w as usize),
                    &alive,
                    &class_bits,
                    avoid,
                    &hard_avoid,
                    &used_entries,
                )
                .ok_or_else(|| {
                    Error::internal(format!("no entry neighbour for {w} at index {i}"))
                })?;
                used_entries.insert(entry);
                bag.mark(entry, w);
                let step = dom
                    .members
                    .iter()
                    .copied()
                    .filter(|&b| g.has_edge(b, entry))
                    .min()
                    .ok_or_else(|| Error::internal("entry neighbour is not out-dominated"))?;
                bag.mark(step, entry);
                if step != dom.b {
                    bag.mark(dom.b, step);
                }
            }
        }
    }
    let w = w_out.len().max(w_in.len());
    if bag.count() > 6 * w * fan_target {
        return Err(Error::internal(format!(
            "connector edge bound violated: {} > 6w·r = {}",
            bag.count(),
            6 * w * fan_target
        )));
    }
    Ok(bag)
}

/// Builds a k-hub on the trio's host: connector fans plus all edges from the
/// sinks onto the first k sinks and from the first k sources onto the
/// sources. Under k-1 removals, the degree guarantee on the first k anchors
/// pigeonholes a surviving fan index adjacent to the requested anchor.
pub fn build_hub(
    g: &DirectedMultigraph,
    trio: &Trio,
    w_out: &[u32],
    w_in: &[u32],
    k: usize,
    fan_target: usize,
    mode: Mode,
) -> Result<Hub> {
    let m = trio.params.m;
    if trio.ins.len() < k || trio.outs.len() < k {
        return Err(Error::input("trio smaller than k"));
    }
    // Pigeonhole preflight: worst-case anchor degree plus surviving fans
    // must exceed m.
    let dbar = trio.dbar as i64;
    let worst_known = (m as i64 - k as i64 - dbar).div_euclid(2).max(0);
    if worst_known + fan_target as i64 - (k as i64 - 1) <= m as i64 {
        return Err(Error::input(format!(
            "hub pigeonhole fails: ({m}-{k}-{dbar})/2 + {fan_target} - {} <= {m}",
            k - 1
        )));
    }
    let conn = build_conn(g, trio, w_out, w_in, k, fan_target, mode)?;
    let a_sinks = trio.a_sinks();
    let b_sources = trio.b_sources();
    let a0: Vec<u32> = a_sinks[..k].to_vec();
    let b0: Vec<u32> = b_sources[..k].to_vec();
    if a0.iter().any(|a| b0.contains(a)) {
        return Err(Error::internal("hub anchors overlap"));
    }
    let mut edges = conn;
    for &ai in &a_sinks {
        for &at in &a0 {
            if ai != at && g.has_edge(ai, at) {
                edges.mark(ai, at);
            }
        }
    }
    for &bt in &b0 {
        for &bi in &b_sources {
            if bt != bi && g.has_edge(bt, bi) {
                edges.mark(bt, bi);
            }
        }
    }
    let w = w_out.len().max(w_in.len());
    if edges.count() > 2 * k * m + 6 * w * fan_target {
        return Err(Error::internal("hub edge bound violated"));
    }
    Ok(Hub {
        edges,
        a0,
        b0,
        served_out: w_out.to_vec(),
        served_in: w_in.to_vec(),
        mode,
        k,
    })
}

// ---------------------------------------------------------------------------
// Absorbers.
// ---------------------------------------------------------------------------

/// Inner trio parameters for the absorber, by mode.
pub fn absorber_trio_params(k: usize, dbar: usize, mode: Mode) -> TrioParams {
    let d = match mode {
        Mode::Vertex => 18 * k + 5 * dbar,
        Mode::Arc => 3 * k + 5 * dbar,
    };
    TrioParams {
        t1: k,
        t2: k,
        d,
        m: 3 * k,
        u: Frac::new(d as i64, 15),
    }
}

/// Builds a k-absorber: an inner trio on D - V_ex supplies 3k sink/source
/// anchors; an escaper serves the inflated exempt set; linkage blocks cover
/// the exit vertices, the untouched remainder, and the path interiors; and
/// connector fans lift the block windows onto the anchors.
pub fn build_absorber(
    d: &DirectedMultigraph,
    minimal: &MinimalSubgraph,
    v_ex: &[u32],
    paths: &PathSystem,
    k: usize,
    mode: Mode,
) -> Result<Absorber> {
    let n = d.n();
    let dbar = d.complement_max_degree();
    let ex_set: BTreeSet<u32> = v_ex.iter().copied().collect();
    let headroom = match mode {
        Mode::Vertex => 39 * k + 38 * dbar,
        Mode::Arc => 33 * k + 32 * dbar,
    };
    if n < ex_set.len() + headroom {
        return Err(Error::input(format!(
            "absorber needs |V \\ V_ex| >= {headroom}, got {}",
            n - ex_set.len()
        )));
    }
    if paths.paths.len() != k {
        return Err(Error::input("absorber needs exactly k paths"));
    }
    for p in &paths.paths {
        if !p.is_path_in(d) {
            return Err(Error::input("absorber path not in host graph"));
        }
        if !ex_set.contains(&p.first()) || !ex_set.contains(&p.last()) {
            return Err(Error::input("path endpoints must lie in the exempt set"));
        }
    }
    match mode {
        Mode::Vertex => {
            if !paths.is_disjoint(d, None) {
                return Err(Error::input("vertex absorber needs vertex-disjoint paths"));
            }
            if paths.paths.iter().any(|p| !p.is_minimal_in(d)) {
                return Err(Error::input("vertex absorber needs minimal paths"));
            }
        }
        Mode::Arc => {
            if !paths.is_disjoint(d, None) {
                return Err(Error::input("arc absorber needs edge-disjoint paths"));
            }
        }
    }

    // Inner trio on D - V_ex.
    let (inner, map) = d.remove_vertices(v_ex)?;
    let params = absorber_trio_params(k, dbar, mode);
    let trio = crate::dominance::build_trio(&inner, k, params)?;
    let report = crate::dominance::verify_trio(&inner, &trio, k);
    if !report.ok() {
        return Err(Error::internal(format!(
            "inner trio failed verification: {:?}",
            report.failures()
        )));
    }

    // Inflated exempt set and its escaper.
    let mut v_ex_prime: BTreeSet<u32> = ex_set.clone();
    for &v in trio.a_union.iter().chain(&trio.b_union).chain(&trio.o_star) {
        v_ex_prime.insert(map[v as usize]);
    }
    let v_ex_prime_list: Vec<u32> = v_ex_prime.iter().copied().collect();
    let escaper = build_escaper(d, minimal, &v_ex_prime_list, k, mode)?;
    let v_out: BTreeSet<u32> = escaper.exits.iter().copied().collect();

    // Partition of the remainder.
    let interiors: BTreeSet<u32> = paths.interior_vertices().into_iter().collect();
    let x1_prime: Vec<u32> = interiors
        .iter()
        .copied()
        .filter(|v| !v_ex_prime.contains(v) && !v_out.contains(v))
        .collect();
    let x1p_set: BTreeSet<u32> = x1_prime.iter().copied().collect();
    let x1: Vec<u32> = (0..n as u32)
        .filter(|v| !v_ex_prime.contains(v) && !v_out.contains(v) && !x1p_set.contains(v))
        .collect();

    let mut linkage_edges = EdgeBag::new();
    let mut u_o: BTreeSet<u32> = BTreeSet::new();
    let mut u_i: BTreeSet<u32> = BTreeSet::new();
    let v_out_list: Vec<u32> = v_out.iter().copied().collect();
    if !v_out_list.is_empty() {
        let block = linkage_block(d, &v_out_list, k, mode)?;
        linkage_edges.union_max(&block.core);
        u_o.extend(block.exit.iter().copied());
        u_i.extend(block.entry.iter().copied());
    }
    if !x1.is_empty() {
        let block = linkage_block(d, &x1, k, mode)?;
        linkage_edges.union_max(&block.core);
        u_o.extend(block.exit.iter().copied());
        u_i.extend(block.entry.iter().copied());
    }
    if !x1_prime.is_empty() {
        let block = linkage_on_paths(d, paths, &x1_prime, k, mode)?;
        linkage_edges.union_max(&block.core);
        u_o.extend(block.exit.iter().copied());
        u_i.extend(block.entry.iter().copied());
    }

    // Connector fans in the inner graph, mapped back to host ids.
    let mut local_of = vec![u32::MAX; n];
    for (i, &p) in map.iter().enumerate() {
        local_of[p as usize] = i as u32;
    }
    let u_o_local: Vec<u32> = u_o.iter().map(|&v| local_of[v as usize]).collect();
    let u_i_local: Vec<u32> = u_i.iter().map(|&v| local_of[v as usize]).collect();
    if u_o_local.iter().chain(&u_i_local).any(|&v| v == u32::MAX) {
        return Err(Error::internal("linkage window leaked into the exempt set"));
    }
    let conn_local = build_conn(&inner, &trio, &u_o_local, &u_i_local, k, k, mode)?;
    let mut conn = EdgeBag::new();
    for (a, b, m) in conn_local.iter() {
        conn.insert_mult(map[a as usize], map[b as usize], m);
    }

    let w_out: Vec<u32> = trio.a_sinks().iter().map(|&v| map[v as usize]).collect();
    let w_in: Vec<u32> = trio.b_sources().iter().map(|&v| map[v as usize]).collect();

    let path_bag = paths.edge_bag();
    let mut edges = path_bag.clone();
    edges.union_max(&escaper.edges);
    edges.union_max(&linkage_edges);
    edges.union_max(&conn);
    let parts = AbsorberParts {
        path_edges: path_bag.count(),
        escape_edges: escaper.edges.count(),
        linkage_edges: linkage_edges.count(),
        conn_edges: conn.count(),
    };
    Ok(Absorber {
        edges,
        exempt: ex_set.into_iter().collect(),
        paths: paths.clone(),
        w_in,
        w_out,
        mode,
        k,
        parts,
    })
}

impl Absorber {
    /// The per-mode size bound in terms of n, k, Δ̄ and |V_ex|, for
    /// monitoring against the achieved edge count.
    pub fn size_bound(&self, n: usize, dbar: usize) -> usize {
        let k = self.k;
        let base = match self.mode {
            Mode::Vertex => 226 * k * (k + dbar) + 38 * (k + dbar),
            Mode::Arc => 210 * k * (k + dbar) + 32 * (k + dbar),
        };
        k * n + base + (5 * k + 1) * self.exempt.len()
    }
}

// ---------------------------------------------------------------------------
// Checkers.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum RemovalBudget {
    /// Exhaustive when the number of removal sets stays under 10^5,
    /// otherwise seeded sampling plus anchor-biased sets.
    Auto { seed: u64 },
    Sampled { trials: usize, seed: u64 },
}

const EXHAUSTIVE_CAP: usize = 100_000;
const DEFAULT_TRIALS: usize = 200;

#[derive(Debug, Clone)]
pub enum RemovalSet {
    Vertices(Vec<u32>),
    Arcs(Vec<(u32, u32)>),
}

#[derive(Debug, Clone)]
pub struct GadgetCheck {
    pub ok: bool,
    pub sets_checked: usize,
    pub exhaustive: bool,
    pub failure: Option<(RemovalSet, u32, &'static str)>,
}

/// All subsets of {0..universe_len} with size <= max_size, if their number
/// stays under the exhaustive cap.
fn subsets_upto(universe_len: usize, max_size: usize) -> Option<Vec<Vec<usize>>> {
    let mut total = 1usize;
    let mut binom = 1usize;
    for j in 1..=max_size {
        binom = binom.saturating_mul(universe_len.saturating_sub(j - 1)) / j;
        total = total.saturating_add(binom);
        if total > EXHAUSTIVE_CAP {
            return None;
        }
    }
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for set in &frontier {
            let start = set.last().map_or(0, |&x| x + 1);
            for i in start..universe_len {
                let mut s = set.clone();
                s.push(i);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Some(out)
}

fn vertex_removals(
    n: usize,
    k: usize,
    anchors: &[u32],
    budget: &RemovalBudget,
) -> (Vec<Vec<u32>>, bool) {
    let max_size = k.saturating_sub(1);
    if max_size == 0 {
        return (vec![vec![]], true);
    }
    let (trials, seed) = match budget {
        RemovalBudget::Auto { seed } => {
            if let Some(sets) = subsets_upto(n, max_size) {
                return (
                    sets.into_iter()
                        .map(|s| s.into_iter().map(|i| i as u32).collect())
                        .collect(),
                    true,
                );
            }
            (DEFAULT_TRIALS, *seed)
        }
        RemovalBudget::Sampled { trials, seed } => (*trials, *seed),
    };
    let mut sets: Vec<Vec<u32>> = vec![vec![]];
    for &a in anchors {
        sets.push(vec![a]);
    }
    if max_size >= 2 && anchors.len() <= 64 {
        for (i, &a) in anchors.iter().enumerate() {
            for &b in &anchors[i + 1..] {
                if a != b {
                    sets.push(vec![a, b]);
                }
            }
        }
    }
    let mut rng = Rng::new(seed);
    for _ in 0..trials {
        let mut set = BTreeSet::new();
        while set.len() < max_size {
            set.insert(rng.below(n as u64) as u32);
        }
        sets.push(set.into_iter().collect());
    }
    (sets, false)
}

fn arc_removals(bag: &EdgeBag, k: usize, budget: &RemovalBudget) -> (Vec<Vec<(u32, u32)>>, bool) {
    let max_size = k.saturating_sub(1);
    if max_size == 0 {
        return (vec![vec![]], true);
    }
    let mut instances: Vec<(u32, u32)> = Vec::new();
    for (u, v, m) in bag.iter() {
        for _ in 0..m {
            instances.push((u, v));
        }
    }
    let (trials, seed) = match budget {
        RemovalBudget::Auto { seed } => {
            if let Some(sets) = subsets_upto(instances.len(), max_size) {
                return (
                    sets.into_iter()
                        .map(|s| s.into_iter().map(|i| instances[i]).collect())
                        .collect(),
                    true,
                );
            }
            (DEFAULT_TRIALS, *seed)
        }
        RemovalBudget::Sampled { trials, seed } => (*trials, *seed),
    };
    let mut sets: Vec<Vec<(u32, u32)>> = vec![vec![]];
    let mut rng = Rng::new(seed);
    for _ in 0..trials {
        let mut idx = BTreeSet::new();
        while idx.len() < max_size.min(instances.len()) {
            idx.insert(rng.below(instances.len() as u64) as usize);
        }
        sets.push(idx.into_iter().map(|i| instances[i]).collect());
    }
    (sets, false)
}

struct BagAdjacency {
    fwd: BTreeMap<u32, Vec<(u32, u32)>>,
    rev: BTreeMap<u32, Vec<(u32, u32)>>,
}

impl BagAdjacency {
    fn new(bag: &EdgeBag) -> Self {
        let mut fwd: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        let mut rev: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (u, v, m) in bag.iter() {
            fwd.entry(u).or_default().push((v, m));
            rev.entry(v).or_default().push((u, m));
        }
        BagAdjacency { fwd, rev }
    }

    /// Forward: vertices reached from the sources. Reverse: vertices that
    /// reach the sources.
    fn reach(
        &self,
        sources: impl IntoIterator<Item = u32>,
        forward: bool,
        removed_v: &BTreeSet<u32>,
        removed_e: &BTreeMap<(u32, u32), u32>,
    ) -> BTreeSet<u32> {
        let adj = if forward { &self.fwd } else { &self.rev };
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut stack: Vec<u32> = Vec::new();
        for s in sources {
            if !removed_v.contains(&s) && seen.insert(s) {
                stack.push(s);
            }
        }
        while let Some(x) = stack.pop() {
            for &(y, m) in adj.get(&x).into_iter().flatten() {
                if removed_v.contains(&y) {
                    continue;
                }
                let pair = if forward { (x, y) } else { (y, x) };
                if removed_e.get(&pair).copied().unwrap_or(0) >= m {
                    continue;
                }
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

fn removal_parts(set: &RemovalSet) -> (BTreeSet<u32>, BTreeMap<(u32, u32), u32>) {
    match set {
        RemovalSet::Vertices(vs) => (vs.iter().copied().collect(), BTreeMap::new()),
        RemovalSet::Arcs(es) => {
            let mut map = BTreeMap::new();
            for &e in es {
                *map.entry(e).or_insert(0) += 1;
            }
            (BTreeSet::new(), map)
        }
    }
}

fn removal_sets_for(
    mode: Mode,
    n: usize,
    k: usize,
    bag: &EdgeBag,
    anchors: &[u32],
    budget: &RemovalBudget,
) -> (Vec<RemovalSet>, bool) {
    match mode {
        Mode::Vertex => {
            let (sets, exhaustive) = vertex_removals(n, k, anchors, budget);
            (sets.into_iter().map(RemovalSet::Vertices).collect(), exhaustive)
        }
        Mode::Arc => {
            let (sets, exhaustive) = arc_removals(bag, k, budget);
            (sets.into_iter().map(RemovalSet::Arcs).collect(), exhaustive)
        }
    }
}

/// Checks the escaper clauses E1-E3 over the removal budget.
pub fn check_escaper(d: &DirectedMultigraph, e: &Escaper, budget: &RemovalBudget) -> GadgetCheck {
    let covered: BTreeSet<u32> = e.covered.iter().copied().collect();
    if e.exits.iter().any(|v| covered.contains(v)) || !e.edges.contained_in(d) {
        return GadgetCheck {
            ok: false,
            sets_checked: 0,
            exhaustive: false,
            failure: Some((RemovalSet::Vertices(vec![]), 0, "E1")),
        };
    }
    let adj = BagAdjacency::new(&e.edges);
    let mut anchors: Vec<u32> = e.exits.clone();
    anchors.extend(e.covered.iter().copied());
    let (sets, exhaustive) = removal_sets_for(e.mode, d.n(), e.k, &e.edges, &anchors, budget);
    for set in &sets {
        let (rv, re) = removal_parts(set);
        let live_exits: Vec<u32> = e.exits.iter().copied().filter(|v| !rv.contains(v)).collect();
        let reaches_exit = adj.reach(live_exits.iter().copied(), false, &rv, &re);
        let reached_from_exit = adj.reach(live_exits.iter().copied(), true, &rv, &re);
        for &u in &e.covered {
            if rv.contains(&u) {
                continue;
            }
            if !reaches_exit.contains(&u) {
                return GadgetCheck {
                    ok: false,
                    sets_checked: sets.len(),
                    exhaustive,
                    failure: Some((set.clone(), u, "E2")),
                };
            }
            if !reached_from_exit.contains(&u) {
                return GadgetCheck {
                    ok: false,
                    sets_checked: sets.len(),
                    exhaustive,
                    failure: Some((set.clone(), u, "E3")),
                };
            }
        }
    }
    GadgetCheck { ok: true, sets_checked: sets.len(), exhaustive, failure: None }
}

/// Checks the hub clauses H1-H3 over the removal budget.
pub fn check_hub(d: &DirectedMultigraph, h: &Hub, budget: &RemovalBudget) -> GadgetCheck {
    let distinct: BTreeSet<u32> = h.a0.iter().chain(&h.b0).copied().collect();
    if h.a0.len() != h.k
        || h.b0.len() != h.k
        || distinct.len() != 2 * h.k
        || !h.edges.contained_in(d)
    {
        return GadgetCheck {
            ok: false,
            sets_checked: 0,
            exhaustive: false,
            failure: Some((RemovalSet::Vertices(vec![]), 0, "H1")),
        };
    }
    let adj = BagAdjacency::new(&h.edges);
    let mut anchors: Vec<u32> = h.a0.clone();
    anchors.extend(h.b0.iter().copied());
    let (sets, exhaustive) = removal_sets_for(h.mode, d.n(), h.k, &h.edges, &anchors, budget);
    for set in &sets {
        let (rv, re) = removal_parts(set);
        for &at in &h.a0 {
            if rv.contains(&at) {
                continue;
            }
            let reaches = adj.reach([at], false, &rv, &re);
            for &u in &h.served_out {
                if !rv.contains(&u) && !reaches.contains(&u) {
                    return GadgetCheck {
                        ok: false,
                        sets_checked: sets.len(),
                        exhaustive,
                        failure: Some((set.clone(), u, "H2")),
                    };
                }
            }
        }
        for &bt in &h.b0 {
            if rv.contains(&bt) {
                continue;
            }
            let reached = adj.reach([bt], true, &rv, &re);
            for &v in &h.served_in {
                if !rv.contains(&v) && !reached.contains(&v) {
                    return GadgetCheck {
                        ok: false,
                        sets_checked: sets.len(),
                        exhaustive,
                        failure: Some((set.clone(), v, "H3")),
                    };
                }
            }
        }
    }
    GadgetCheck { ok: true, sets_checked: sets.len(), exhaustive, failure: None }
}

/// Checks the absorber clauses A1-A4 over the removal budget.
pub fn check_absorber(
    d: &DirectedMultigraph,
    a: &Absorber,
    budget: &RemovalBudget,
) -> GadgetCheck {
    let ex: BTreeSet<u32> = a.exempt.iter().copied().collect();
    let structural_ok = a
        .paths
        .paths
        .iter()
        .all(|p: &Path| ex.contains(&p.first()) && ex.contains(&p.last()))
        && a.paths
            .edge_bag()
            .iter()
            .all(|(u, v, m)| a.edges.get(u, v) >= m)
        && a.edges.contained_in(d);
    if !structural_ok {
        return GadgetCheck {
            ok: false,
            sets_checked: 0,
            exhaustive: false,
            failure: Some((RemovalSet::Vertices(vec![]), 0, "A1/A2")),
        };
    }
    let adj = BagAdjacency::new(&a.edges);
    let mut anchors: Vec<u32> = a.w_out.clone();
    anchors.extend(a.w_in.iter().copied());
    let (sets, exhaustive) = removal_sets_for(a.mode, d.n(), a.k, &a.edges, &anchors, budget);
    for set in &sets {
        let (rv, re) = removal_parts(set);
        let live_out: Vec<u32> = a.w_out.iter().copied().filter(|v| !rv.contains(v)).collect();
        let reaches_w = adj.reach(live_out.iter().copied(), false, &rv, &re);
        for u in 0..d.n() as u32 {
            if !rv.contains(&u) && !reaches_w.contains(&u) {
                return GadgetCheck {
                    ok: false,
                    sets_checked: sets.len(),
                    exhaustive,
                    failure: Some((set.clone(), u, "A3")),
                };
            }
        }
        let live_in: Vec<u32> = a.w_in.iter().copied().filter(|v| !rv.contains(v)).collect();
        let reached = adj.reach(live_in.iter().copied(), true, &rv, &re);
        for v in 0..d.n() as u32 {
            if !rv.contains(&v) && !reached.contains(&v) {
                return GadgetCheck {
                    ok: false,
                    sets_checked: sets.len(),
                    exhaustive,
                    failure: Some((set.clone(), v, "A4")),
                };
            }
        }
    }
    GadgetCheck { ok: true, sets_checked: sets.len(), exhaustive, failure: None }
}

/// Unified entry point over the three gadget kinds.
pub enum GadgetRef<'a> {
    Escaper(&'a Escaper),
    Hub(&'a Hub),
    Absorber(&'a Absorber),
}

pub fn check_gadget(
    d: &DirectedMultigraph,
    g: GadgetRef<'_>,
    budget: &RemovalBudget,
) -> GadgetCheck {
    match g {
        GadgetRef::Escaper(e) => check_escaper(d, e, budget),
        GadgetRef::Hub(h) => check_hub(d, h, budget),
        GadgetRef::Absorber(a) => check_absorber(d, a, budget),
    }
}
