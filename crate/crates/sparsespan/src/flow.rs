//! Unit-capacity oriented blocking-flow kernel (Dinic) plus the two-phase
//! min-flow-with-lower-bounds reduction. Every Menger-shaped argument in the
//! crate runs through this module.

use crate::error::{Error, Result};

pub const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct FlowArc {
    to: u32,
    cap: i64, // residual capacity
}

/// A flow network with paired forward/backward arcs. Arc `2i` is the forward
/// copy of the i-th added arc, `2i+1` its residual twin. Adjacency is a CSR
/// built once per network, so a construction costs three flat allocations
/// regardless of size.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<FlowArc>,
    tails: Vec<u32>, // tail per arc index
    caps: Vec<i64>,  // original capacity of forward arcs, by arc pair index
    csr_start: Vec<u32>,
    csr_arcs: Vec<u32>,
    csr_valid: bool,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            n,
            arcs: Vec::new(),
            tails: Vec::new(),
            caps: Vec::new(),
            csr_start: Vec::new(),
            csr_arcs: Vec::new(),
            csr_valid: false,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Returns the pair index of the new arc.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        debug_assert!(from < self.n && to < self.n && cap >= 0);
        let id = self.arcs.len();
        self.arcs.push(FlowArc { to: to as u32, cap });
        self.tails.push(from as u32);
        self.arcs.push(FlowArc { to: from as u32, cap: 0 });
        self.tails.push(to as u32);
        self.caps.push(cap);
        self.csr_valid = false;
        id / 2
    }

    fn finalize(&mut self) {
        if self.csr_valid {
            return;
        }
        let mut counts = vec![0u32; self.n + 1];
        for &t in &self.tails {
            counts[t as usize + 1] += 1;
        }
        for i in 0..self.n {
            counts[i + 1] += counts[i];
        }
        let mut cursor = counts.clone();
        let mut list = vec![0u32; self.tails.len()];
        for (a, &t) in self.tails.iter().enumerate() {
            list[cursor[t as usize] as usize] = a as u32;
            cursor[t as usize] += 1;
        }
        self.csr_start = counts;
        self.csr_arcs = list;
        self.csr_valid = true;
    }

    fn out_arcs(&self, v: usize) -> &[u32] {
        &self.csr_arcs[self.csr_start[v] as usize..self.csr_start[v + 1] as usize]
    }

    /// Flow currently on the forward arc with the given pair index.
    pub fn flow_on(&self, pair: usize) -> i64 {
        self.caps[pair] - self.arcs[2 * pair].cap
    }

    pub fn reset(&mut self) {
        for (pair, &cap) in self.caps.iter().enumerate() {
            self.arcs[2 * pair].cap = cap;
            self.arcs[2 * pair + 1].cap = 0;
        }
    }

    fn bfs_levels(&self, s: usize, t: usize, level: &mut [u32], queue: &mut Vec<u32>) -> bool {
        level.fill(u32::MAX);
        level[s] = 0;
        queue.clear();
        queue.push(s as u32);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            if u == t {
                return true;
            }
            for &a in self.out_arcs(u) {
                let arc = &self.arcs[a as usize];
                if arc.cap > 0 && level[arc.to as usize] == u32::MAX {
                    level[arc.to as usize] = level[u] + 1;
                    queue.push(arc.to);
                }
            }
        }
        level[t] != u32::MAX
    }

    fn dfs_block(
        &mut self,
        u: usize,
        t: usize,
        pushed: i64,
        level: &[u32],
        iter: &mut [u32],
    ) -> i64 {
        if u == t {
            return pushed;
        }
        while (iter[u] as usize) < self.csr_start[u + 1] as usize - self.csr_start[u] as usize {
            let a = self.csr_arcs[self.csr_start[u] as usize + iter[u] as usize] as usize;
            let (to, cap) = (self.arcs[a].to as usize, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let d = self.dfs_block(to, t, pushed.min(cap), level, iter);
                if d > 0 {
                    self.arcs[a].cap -= d;
                    self.arcs[a ^ 1].cap += d;
                    return d;
                }
            }
            iter[u] += 1;
        }
        0
    }

    /// Maximum s-t flow, stopping early once `limit` is reached.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        assert!(s != t);
        self.finalize();
        let mut flow = 0i64;
        let mut level = vec![u32::MAX; self.n];
        let mut queue = Vec::with_capacity(self.n);
        let mut iter = vec![0u32; self.n];
        while flow < limit && self.bfs_levels(s, t, &mut level, &mut queue) {
            iter.fill(0);
            loop {
                let pushed = self.dfs_block(s, t, limit - flow, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
                if flow >= limit {
                    break;
                }
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network. Call after
    /// `max_flow`, which builds the adjacency structure.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        assert!(self.csr_valid, "run max_flow before residual queries");
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in self.out_arcs(u) {
                let arc = &self.arcs[a as usize];
                if arc.cap > 0 && !seen[arc.to as usize] {
                    seen[arc.to as usize] = true;
                    stack.push(arc.to as usize);
                }
            }
        }
        seen
    }
}

/// An arc with a lower bound, for demand problems.
#[derive(Debug, Clone, Copy)]
pub struct DemandArc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    pub cap: i64,
}

#[derive(Debug)]
pub struct MinFlowSolution {
    pub value: i64,
    /// Flow per demand arc, in input order.
    pub arc_flows: Vec<i64>,
}

/// Minimum feasible s->t flow in a network with lower bounds, by the classic
/// two-phase reduction: saturate demands against an auxiliary source/sink,
/// then push back from t to s in the residual network.
pub fn min_flow_with_demands(
    n: usize,
    s: usize,
    t: usize,
    arcs: &[DemandArc],
) -> Result<MinFlowSolution> {
    for a in arcs {
        if a.lower < 0 || a.lower > a.cap {
            return Err(Error::input("demand arc with lower > cap"));
        }
    }
    // Nodes: 0..n original, n = aux source, n+1 = aux sink.
    let aux_s = n;
    let aux_t = n + 1;
    let mut net = FlowNetwork::new(n + 2);
    let mut excess = vec![0i64; n];
    let mut pair_of_arc = Vec::with_capacity(arcs.len());
    for a in arcs {
        let pair = net.add_arc(a.from, a.to, a.cap - a.lower);
        pair_of_arc.push(pair);
        excess[a.to] += a.lower;
        excess[a.from] -= a.lower;
    }
    let ts_pair = net.add_arc(t, s, INF);
    let mut demand_total = 0i64;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            net.add_arc(aux_s, v, e);
            demand_total += e;
        } else if e < 0 {
            net.add_arc(v, aux_t, -e);
        }
    }
    let pushed = net.max_flow(aux_s, aux_t, INF);
    if pushed != demand_total {
        return Err(Error::infeasible(
            format!("demands unsatisfiable: covered {pushed} of {demand_total}"),
            None,
        ));
    }
    // Feasible flow value on t->s arc; now minimize by draining it.
    let feasible = net.flow_on(ts_pair);
    // Freeze the t->s arc so reduction happens through the real network.
    net.arcs[2 * ts_pair].cap = 0;
    net.arcs[2 * ts_pair + 1].cap = 0;
    let drained = net.max_flow(t, s, INF);
    let value = feasible - drained;
    let arc_flows: Vec<i64> = arcs
        .iter()
        .zip(&pair_of_arc)
        .map(|(a, &p)| a.lower + net.flow_on(p))
        .collect();
    debug_assert_eq!(
        value,
        arc_flows
            .iter()
            .zip(arcs)
            .filter(|(_, a)| a.from == s)
            .map(|(f, _)| *f)
            .sum::<i64>()
    );
    Ok(MinFlowSolution { value, arc_flows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::Rng;

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::new(2);
        net.add_arc(0, 1, 3);
        assert_eq!(net.max_flow(0, 1, INF), 3);
    }

    #[test]
    fn two_disjoint_paths() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 1);
        net.add_arc(1, 3, 1);
        net.add_arc(0, 2, 1);
        net.add_arc(2, 3, 1);
        assert_eq!(net.max_flow(0, 3, INF), 2);
    }

    #[test]
    fn early_exit_limit() {
        let mut net = FlowNetwork::new(2);
        net.add_arc(0, 1, 100);
        assert_eq!(net.max_flow(0, 1, 5), 5);
    }

    /// Brute-force min cut: enumerate all source-side subsets.
    fn brute_min_cut(n: usize, arcs: &[(usize, usize, i64)], s: usize, t: usize) -> i64 {
        let mut best = INF;
        for mask in 0u32..(1 << n) {
            if mask & (1 << s) == 0 || mask & (1 << t) != 0 {
                continue;
            }
            let cut: i64 = arcs
                .iter()
                .filter(|&&(u, v, _)| mask & (1 << u) != 0 && mask & (1 << v) == 0)
                .map(|&(_, _, c)| c)
                .sum();
            best = best.min(cut);
        }
        best
    }

    #[test]
    fn max_flow_equals_brute_min_cut_on_small_networks() {
        let mut rng = Rng::new(7);
        for _ in 0..200 {
            let n = 3 + rng.below(7) as usize; // up to 9 nodes
            let m = 1 + rng.below(2 * n as u64) as usize;
            let mut arcs = Vec::new();
            for _ in 0..m {
                let u = rng.below(n as u64) as usize;
                let v = rng.below(n as u64) as usize;
                if u == v {
                    continue;
                }
                arcs.push((u, v, 1 + rng.below(3) as i64));
            }
            let s = 0;
            let t = n - 1;
            let mut net = FlowNetwork::new(n);
            for &(u, v, c) in &arcs {
                net.add_arc(u, v, c);
            }
            assert_eq!(net.max_flow(s, t, INF), brute_min_cut(n, &arcs, s, t));
        }
    }

    #[test]
    fn min_flow_simple_demand() {
        // s -> a (lower 2), a -> t (lower 0, cap 5): minimum flow is 2.
        let arcs = [
            DemandArc { from: 0, to: 1, lower: 2, cap: 10 },
            DemandArc { from: 1, to: 2, lower: 0, cap: 5 },
        ];
        let sol = min_flow_with_demands(3, 0, 2, &arcs).unwrap();
        assert_eq!(sol.value, 2);
        assert_eq!(sol.arc_flows[0], 2);
    }

    #[test]
    fn min_flow_infeasible() {
        let arcs = [
            DemandArc { from: 0, to: 1, lower: 4, cap: 10 },
            DemandArc { from: 1, to: 2, lower: 0, cap: 2 },
        ];
        assert!(min_flow_with_demands(3, 0, 2, &arcs).is_err());
    }

    #[test]
    fn min_flow_shares_units_across_demands() {
        // Diamond where one middle arc can serve both lower-bounded ends.
        let arcs = [
            DemandArc { from: 0, to: 1, lower: 1, cap: 10 },
            DemandArc { from: 1, to: 2, lower: 0, cap: 10 },
            DemandArc { from: 2, to: 3, lower: 1, cap: 10 },
        ];
        let sol = min_flow_with_demands(4, 0, 3, &arcs).unwrap();
        assert_eq!(sol.value, 1);
    }
}
