//! Greedy 5-in/out-dominators by iterated out-neighbourhood halving, and the
//! trio construction: m in-dominators, m out-dominators, and a small
//! exceptional set, with the full T1-T9 checker evaluated independently of
//! the construction.

use crate::error::{Error, Result};
use crate::graph::{top_in_degree_vertices, top_out_degree_vertices, DirectedMultigraph};
use crate::util::{bits, Frac};
use std::collections::BTreeSet;

fn full_mask(n: usize) -> Vec<u64> {
    let words = bits::words_for(n);
    let mut mask = vec![u64::MAX; words];
    for i in n..words * 64 {
        bits::clear(&mut mask, i);
    }
    mask
}

/// Bits strictly above `v` within the first `words` words.
fn count_oriented_out(
    g: &DirectedMultigraph,
    v: usize,
    restrict: &[u64],
) -> usize {
    // Oriented row: out(v) minus the 2-cycle halves that the tie rule drops.
    // Keep (v,w) iff w is not an in-neighbour, or v < w.
    let out = g.out_row(v);
    let inn = g.in_row(v);
    let mut count = 0usize;
    let wv = v / 64;
    for (i, ((&o, &inw), &r)) in out.iter().zip(inn).zip(restrict).enumerate() {
        let gt = match i.cmp(&wv) {
            std::cmp::Ordering::Less => 0u64,
            std::cmp::Ordering::Greater => u64::MAX,
            std::cmp::Ordering::Equal => (u64::MAX << (v % 64)) << 1,
        };
        count += (o & r & (!inw | gt)).count_ones() as usize;
    }
    count
}

fn oriented_out_row(g: &DirectedMultigraph, v: usize, alive: &[u64]) -> Vec<u64> {
    let out = g.out_row(v);
    let inn = g.in_row(v);
    let wv = v / 64;
    out.iter()
        .zip(inn)
        .zip(alive)
        .enumerate()
        .map(|(i, ((&o, &inw), &a))| {
            let gt = match i.cmp(&wv) {
                std::cmp::Ordering::Less => 0u64,
                std::cmp::Ordering::Greater => u64::MAX,
                std::cmp::Ordering::Equal => (u64::MAX << (v % 64)) << 1,
            };
            o & a & (!inw | gt)
        })
        .collect()
}

/// A t-indominator: a small transitive tournament reaching x whose sink `a`
/// is an out-neighbour of almost everything the members jointly dominate.
#[derive(Debug, Clone)]
pub struct InDominator {
    /// Members in transitive order: source x first, sink a last.
    pub members: Vec<u32>,
    pub x: u32,
    pub a: u32,
    /// Vertices absent from this dominator's host subgraph (sorted).
    pub removed_before: Vec<u32>,
    /// U_i^+: jointly out-dominated non-in-neighbours, in the host subgraph.
    pub u_plus: Vec<u32>,
    /// F_i^+: neither in-dominating nor in U^+ (non-neighbour exceptions).
    pub f_plus: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct OutDominator {
    /// Members in transitive order: source b first, sink x' last.
    pub members: Vec<u32>,
    pub x: u32,
    pub b: u32,
    pub removed_before: Vec<u32>,
    pub u_minus: Vec<u32>,
    pub f_minus: Vec<u32>,
}

/// Raw halving run on the oriented reduction of g restricted to `alive`:
/// v1 = x, V1 = oriented out-neighbourhood of x, then repeatedly pick the
/// minimum-out-degree vertex inside the shrinking candidate set.
fn halving_members(g: &DirectedMultigraph, alive: &[u64], x: u32, t: usize) -> Vec<u32> {
    let mut members = vec![x];
    let mut candidates = oriented_out_row(g, x as usize, alive);
    while members.len() < t && bits::count(&candidates) > 0 {
        let mut best: Option<(usize, u32)> = None;
        for v in bits::iter_ones(&candidates) {
            let deg = count_oriented_out(g, v, &candidates);
            match best {
                Some((d, _)) if deg >= d => {}
                _ => best = Some((deg, v as u32)),
            }
        }
        let (_, pick) = best.expect("candidate set nonempty");
        members.push(pick);
        let row = oriented_out_row(g, pick as usize, alive);
        for (c, r) in candidates.iter_mut().zip(&row) {
            *c &= r;
        }
    }
    members
}

fn exception_sets(
    g: &DirectedMultigraph,
    alive: &[u64],
    members: &[u32],
) -> (Vec<u32>, Vec<u32>) {
    let words = alive.len();
    let mut inter = alive.to_vec();
    let mut dominated = vec![0u64; words];
    let mut member_bits = vec![0u64; words];
    for &v in members {
        bits::set(&mut member_bits, v as usize);
        for (i, w) in inter.iter_mut().enumerate() {
            *w &= g.out_row(v as usize)[i];
        }
        for (i, w) in dominated.iter_mut().enumerate() {
            *w |= g.in_row(v as usize)[i] & alive[i];
        }
    }
    // U^+ = (∩ out) \ (∪ in), inside alive.
    let u_plus: Vec<u32> = (0..words)
        .flat_map(|i| {
            let word = inter[i] & !dominated[i];
            bits::iter_ones(&[word]).map(move |b| (i * 64 + b) as u32).collect::<Vec<_>>()
        })
        .collect();
    let mut u_bits = vec![0u64; words];
    for &v in &u_plus {
        bits::set(&mut u_bits, v as usize);
    }
    let f_plus: Vec<u32> = (0..words)
        .flat_map(|i| {
            let word = alive[i] & !member_bits[i] & !u_bits[i] & !dominated[i];
            bits::iter_ones(&[word]).map(move |b| (i * 64 + b) as u32).collect::<Vec<_>>()
        })
        .collect();
    (u_plus, f_plus)
}

fn removed_list(n: usize, alive: &[u64]) -> Vec<u32> {
    (0..n as u32).filter(|&v| !bits::get(alive, v as usize)).collect()
}

/// Finds a t-indominator rooted at x inside the subgraph on `alive`.
/// Always succeeds.
pub fn find_indominator_in(
    g: &DirectedMultigraph,
    alive: &[u64],
    x: u32,
    t: usize,
) -> InDominator {
    debug_assert!(bits::get(alive, x as usize));
    let members = halving_members(g, alive, x, t);
    let (u_plus, f_plus) = exception_sets(g, alive, &members);
    let a = *members.last().unwrap();
    InDominator {
        x,
        a,
        removed_before: removed_list(g.n(), alive),
        u_plus,
        f_plus,
        members,
    }
}

/// Whole-graph convenience form.
pub fn find_indominator(g: &DirectedMultigraph, x: u32, t: usize) -> InDominator {
    find_indominator_in(g, &full_mask(g.n()), x, t)
}

pub fn find_outdominator_in(
    g: &DirectedMultigraph,
    rev: &DirectedMultigraph,
    alive: &[u64],
    x: u32,
    t: usize,
) -> OutDominator {
    let _ = g;
    let members_rev = halving_members(rev, alive, x, t);
    let (u_minus, f_minus) = exception_sets(rev, alive, &members_rev);
    // Transitive order in the original graph is the reverse: source b first.
    let mut members = members_rev;
    members.reverse();
    let b = members[0];
    OutDominator {
        x,
        b,
        removed_before: removed_list(rev.n(), alive),
        u_minus,
        f_minus,
        members,
    }
}

pub fn find_outdominator(g: &DirectedMultigraph, x: u32, t: usize) -> OutDominator {
    find_outdominator_in(g, &g.reverse(), &full_mask(g.n()), x, t)
}

/// The dominator width used throughout: 2^(5-1) = 16 in the degree bound.
pub const DOMINATOR_T: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrioParams {
    pub t1: usize,
    pub t2: usize,
    pub d: usize,
    pub m: usize,
    pub u: Frac,
}

#[derive(Debug, Clone)]
pub struct Trio {
    pub params: TrioParams,
    pub ins: Vec<InDominator>,
    pub outs: Vec<OutDominator>,
    pub o_star: Vec<u32>,
    /// Union caches.
    pub a_union: Vec<u32>,
    pub b_union: Vec<u32>,
    /// Complement max degree of the host, measured at build time.
    pub dbar: usize,
}

impl Trio {
    pub fn a_sinks(&self) -> Vec<u32> {
        self.ins.iter().map(|d| d.a).collect()
    }

    pub fn b_sources(&self) -> Vec<u32> {
        self.outs.iter().map(|d| d.b).collect()
    }

    pub fn excluded(&self) -> BTreeSet<u32> {
        self.a_union
            .iter()
            .chain(&self.b_union)
            .chain(&self.o_star)
            .copied()
            .collect()
    }
}

/// Builds a (t1, t2, d, m, u)-trio: m sequential in-dominators rooted at
/// minimum-out-neighbour vertices, then m out-dominators on the remainder,
/// exceptional sets from the I/F index census, and a final reordering so the
/// first k sinks and sources carry the degree guarantee.
pub fn build_trio(
    g: &DirectedMultigraph,
    k: usize,
    params: TrioParams,
) -> Result<Trio> {
    let n = g.n();
    let TrioParams { t1, t2, d: _, m, u } = params;
    if t1 < 1 || t2 < 1 || m < 1 {
        return Err(Error::input("trio parameters must be positive"));
    }
    if m < k {
        return Err(Error::input(format!("trio needs m >= k, got m={m} k={k}")));
    }
    if n < 10 * m {
        return Err(Error::input(format!("trio needs n >= 10m, got n={n} m={m}")));
    }
    if u < Frac::new(params.d as i64, 15) {
        return Err(Error::input("trio needs u >= d/15"));
    }
    let rev = g.reverse();
    let mut alive = full_mask(n);
    let mut ins = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best: Option<(usize, u32)> = None;
        for v in bits::iter_ones(&alive) {
            let deg = bits::count_and(g.out_row(v), &alive);
            match best {
                Some((b, _)) if deg >= b => {}
                _ => best = Some((deg, v as u32)),
            }
        }
        let (_, x) = best.ok_or_else(|| Error::internal("alive pool exhausted"))?;
        let dom = find_indominator_in(g, &alive, x, DOMINATOR_T);
        for &v in &dom.members {
            bits::clear(&mut alive, v as usize);
        }
        ins.push(dom);
    }
    let mut alive2 = full_mask(n);
    for dom in &ins {
        for &v in &dom.members {
            bits::clear(&mut alive2, v as usize);
        }
    }
    let mut outs = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best: Option<(usize, u32)> = None;
        for v in bits::iter_ones(&alive2) {
            let deg = bits::count_and(g.in_row(v), &alive2);
            match best {
                Some((b, _)) if deg >= b => {}
                _ => best = Some((deg, v as u32)),
            }
        }
        let (_, x) = best.ok_or_else(|| Error::internal("alive pool exhausted"))?;
        let dom = find_outdominator_in(g, &rev, &alive2, x, DOMINATOR_T);
        for &v in &dom.members {
            bits::clear(&mut alive2, v as usize);
        }
        outs.push(dom);
    }

    // Exceptional sets from the index census.
    let small_u = |len: usize| Frac::int(len as i64) < u;
    let mut o_count = vec![0usize; n]; // over I^+ with |U^+| < u
    let mut f_count = vec![0usize; n];
    for dom in &ins {
        let in_i_plus = small_u(dom.u_plus.len());
        for &v in &dom.u_plus {
            if in_i_plus {
                o_count[v as usize] += 1;
            }
        }
        for &v in &dom.f_plus {
            f_count[v as usize] += 1;
        }
    }
    let mut o_count_m = vec![0usize; n];
    let mut f_count_m = vec![0usize; n];
    for dom in &outs {
        let in_i_minus = small_u(dom.u_minus.len());
        for &v in &dom.u_minus {
            if in_i_minus {
                o_count_m[v as usize] += 1;
            }
        }
        for &v in &dom.f_minus {
            f_count_m[v as usize] += 1;
        }
    }
    let o_star: Vec<u32> = (0..n as u32)
        .filter(|&v| {
            o_count[v as usize] > t1
                || o_count_m[v as usize] > t1
                || f_count[v as usize] > t2
                || f_count_m[v as usize] > t2
        })
        .collect();

    // Reorder so the first k sinks/sources carry the T4 degree guarantee.
    let a_list: Vec<u32> = ins.iter().map(|d| d.a).collect();
    let (suba, mapa) = g.restrict(&a_list)?;
    let picks = top_in_degree_vertices(&suba, k)?;
    let picked: Vec<u32> = picks.iter().map(|&p| mapa[p as usize]).collect();
    let mut new_ins = Vec::with_capacity(m);
    for &a in &picked {
        let idx = ins.iter().position(|d| d.a == a).expect("sink present");
        new_ins.push(ins[idx].clone());
    }
    for dom in &ins {
        if !picked.contains(&dom.a) {
            new_ins.push(dom.clone());
        }
    }
    let ins = new_ins;

    let b_list: Vec<u32> = outs.iter().map(|d| d.b).collect();
    let (subb, mapb) = g.restrict(&b_list)?;
    let picks = top_out_degree_vertices(&subb, k)?;
    let picked: Vec<u32> = picks.iter().map(|&p| mapb[p as usize]).collect();
    let mut new_outs = Vec::with_capacity(m);
    for &b in &picked {
        let idx = outs.iter().position(|d| d.b == b).expect("source present");
        new_outs.push(outs[idx].clone());
    }
    for dom in &outs {
        if !picked.contains(&dom.b) {
            new_outs.push(dom.clone());
        }
    }
    let outs = new_outs;

    let mut a_union: Vec<u32> = ins.iter().flat_map(|d| d.members.iter().copied()).collect();
    a_union.sort_unstable();
    let mut b_union: Vec<u32> = outs.iter().flat_map(|d| d.members.iter().copied()).collect();
    b_union.sort_unstable();
    Ok(Trio {
        params,
        ins,
        outs,
        o_star,
        a_union,
        b_union,
        dbar: g.complement_max_degree(),
    })
}

/// Per-condition trio report. `dominators` covers ID1/ID2 and OD1/OD2 of
/// every member dominator; `t` holds the nine trio conditions in order.
#[derive(Debug, Clone)]
pub struct TrioReport {
    pub dominators: bool,
    pub t: [bool; 9],
}

impl TrioReport {
    pub fn ok(&self) -> bool {
        self.dominators && self.t.iter().all(|&b| b)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.dominators {
            out.push("dominator validity".to_string());
        }
        for (i, &b) in self.t.iter().enumerate() {
            if !b {
                out.push(format!("T{}", i + 1));
            }
        }
        out
    }
}

fn alive_from_removed(n: usize, removed: &[u32]) -> Vec<u64> {
    let mut alive = full_mask(n);
    for &v in removed {
        bits::clear(&mut alive, v as usize);
    }
    alive
}

/// Independent evaluation of every trio condition by direct set arithmetic
/// over the stored member/removal lists; nothing from the construction path
/// is trusted beyond the dominator shapes themselves.
pub fn verify_trio(g: &DirectedMultigraph, trio: &Trio, k: usize) -> TrioReport {
    let n = g.n();
    let TrioParams { t1, t2, d, m, u } = trio.params;
    let dbar = g.complement_max_degree() as i64;
    let mut t_flags = [true; 9];
    let mut dominators_ok = trio.ins.len() == m && trio.outs.len() == m;

    // Recomputed per-dominator data.
    struct Side {
        members: Vec<u32>,
        anchor: u32, // a_i or b_i
        u_set: BTreeSet<u32>,
        alive: Vec<u64>,
    }
    let mut in_sides = Vec::with_capacity(m);
    for dom in &trio.ins {
        let alive = alive_from_removed(n, &dom.removed_before);
        let (u_plus, _) = exception_sets(g, &alive, &dom.members);
        // ID1: transitive tournament with source x, sink a.
        let mut ok = dom.members.len() <= DOMINATOR_T
            && dom.members.first() == Some(&dom.x)
            && dom.members.last() == Some(&dom.a);
        for i in 0..dom.members.len() {
            if !bits::get(&alive, dom.members[i] as usize) {
                ok = false;
            }
            for j in i + 1..dom.members.len() {
                if !g.has_edge(dom.members[i], dom.members[j]) {
                    ok = false;
                }
            }
        }
        // ID2: |N^+(x)| >= 2^(t-1) |U^+| inside the host subgraph.
        let outdeg = bits::count_and(g.out_row(dom.x as usize), &alive);
        if outdeg < (1usize << (DOMINATOR_T - 1)) * u_plus.len() {
            ok = false;
        }
        dominators_ok &= ok;
        in_sides.push(Side {
            members: dom.members.clone(),
            anchor: dom.a,
            u_set: u_plus.into_iter().collect(),
            alive,
        });
    }
    let rev = g.reverse();
    let mut out_sides = Vec::with_capacity(m);
    for dom in &trio.outs {
        let alive = alive_from_removed(n, &dom.removed_before);
        let rev_members: Vec<u32> = dom.members.iter().rev().copied().collect();
        let (u_minus, _) = exception_sets(&rev, &alive, &rev_members);
        let mut ok = dom.members.len() <= DOMINATOR_T
            && dom.members.first() == Some(&dom.b)
            && dom.members.last() == Some(&dom.x);
        for i in 0..dom.members.len() {
            if !bits::get(&alive, dom.members[i] as usize) {
                ok = false;
            }
            for j in i + 1..dom.members.len() {
                if !g.has_edge(dom.members[i], dom.members[j]) {
                    ok = false;
                }
            }
        }
        let indeg = bits::count_and(g.in_row(dom.x as usize), &alive);
        if indeg < (1usize << (DOMINATOR_T - 1)) * u_minus.len() {
            ok = false;
        }
        dominators_ok &= ok;
        out_sides.push(Side {
            members: dom.members.clone(),
            anchor: dom.b,
            u_set: u_minus.into_iter().collect(),
            alive,
        });
    }

    let a_union: BTreeSet<u32> = trio.a_union.iter().copied().collect();
    let b_union: BTreeSet<u32> = trio.b_union.iter().copied().collect();
    let o_star: BTreeSet<u32> = trio.o_star.iter().copied().collect();

    // T1: hosts of in-dominators sit between D and D - (A ∪ B).
    t_flags[0] = trio.ins.iter().all(|dom| {
        dom.removed_before
            .iter()
            .all(|v| a_union.contains(v) || b_union.contains(v))
    });
    // T2: hosts of out-dominators sit between D - A and D - (A ∪ B).
    t_flags[1] = trio.outs.iter().all(|dom| {
        let removed: BTreeSet<u32> = dom.removed_before.iter().copied().collect();
        a_union.iter().all(|v| removed.contains(v))
            && removed.iter().all(|v| a_union.contains(v) || b_union.contains(v))
    });
    // T3: all member sets pairwise disjoint.
    {
        let mut seen = BTreeSet::new();
        let mut disjoint = true;
        for side in in_sides.iter().chain(&out_sides) {
            for &v in &side.members {
                if !seen.insert(v) {
                    disjoint = false;
                }
            }
        }
        t_flags[2] = disjoint;
    }
    // T4: first k sinks/sources have >= (m-k-dbar)/2 in/out-neighbours among
    // the anchors.
    {
        let a_list: Vec<u32> = in_sides.iter().map(|s| s.anchor).collect();
        let b_list: Vec<u32> = out_sides.iter().map(|s| s.anchor).collect();
        let ok_side = |list: &[u32], incoming: bool| -> bool {
            (0..k.min(list.len())).all(|i| {
                let v = list[i];
                let count = list
                    .iter()
                    .filter(|&&w| {
                        w != v && if incoming { g.has_edge(w, v) } else { g.has_edge(v, w) }
                    })
                    .count() as i64;
                2 * count >= m as i64 - k as i64 - dbar
            })
        };
        t_flags[3] = ok_side(&a_list, true) && ok_side(&b_list, false);
    }
    // T5/T6: membership census for every outside vertex.
    {
        let qualifies = |v: u32, sides: &[Side], incoming: bool| -> usize {
            sides
                .iter()
                .filter(|s| {
                    let dominated = s.members.iter().any(|&w| {
                        if incoming {
                            g.has_edge(v, w)
                        } else {
                            g.has_edge(w, v)
                        }
                    });
                    dominated
                        || (s.u_set.contains(&v) && Frac::int(s.u_set.len() as i64) >= u)
                })
                .count()
        };
        let mut t5 = true;
        let mut t6 = true;
        for v in 0..n as u32 {
            if a_union.contains(&v) || b_union.contains(&v) || o_star.contains(&v) {
                continue;
            }
            if qualifies(v, &in_sides, true) + t1 + t2 < m {
                t5 = false;
            }
            if qualifies(v, &out_sides, false) + t1 + t2 < m {
                t6 = false;
            }
        }
        t_flags[4] = t5;
        t_flags[5] = t6;
    }
    // T7/T8: large exception classes force large degree.
    {
        let deg_ok = |sides: &[Side], outgoing: bool| -> bool {
            sides.iter().all(|s| {
                if Frac::int(s.u_set.len() as i64) < u {
                    return true;
                }
                s.u_set.iter().all(|&w| {
                    let deg = if outgoing {
                        bits::count_and(g.out_row(w as usize), &s.alive)
                    } else {
                        bits::count_and(g.in_row(w as usize), &s.alive)
                    };
                    deg >= d + s.u_set.len()
                })
            })
        };
        t_flags[6] = deg_ok(&in_sides, true);
        t_flags[7] = deg_ok(&out_sides, false);
    }
    // T9: |O*| <= 2mu/t1 + 10·dbar·m/t2, and <= 2mu/t1 when t2 >= dbar.
    {
        let o_size = Frac::int(o_star.len() as i64);
        let bound_o = u.mul_int(2 * m as i64).div_int(t1 as i64);
        let bound_f = Frac::new(10 * dbar * m as i64, t2 as i64);
        t_flags[8] = if t2 as i64 >= dbar {
            o_size <= bound_o
        } else {
            o_size <= bound_o.add(bound_f)
        };
    }

    TrioReport { dominators: dominators_ok, t: t_flags }
}
