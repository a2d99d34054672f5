//! End-to-end sparsifiers: given a strongly k-connected digraph (or
//! k-arc-connected multigraph), produce a spanning subgraph preserving the
//! connectivity with kn + O(k(k+Δ̄)) edges, with small-n fallbacks, exact
//! parameter preflight, and full reporting.

use crate::connectivity::{
    arc_connectivity_witness, disjoint_paths, is_k_arc_connected, is_k_connected,
    vertex_connectivity_witness, PathSystem,
};
use crate::dominance::{build_trio, verify_trio, TrioParams};
use crate::error::{CutWitness, Error, Result};
use crate::gadgets::{build_absorber, build_hub};
use crate::graph::{minimalize_path, DirectedMultigraph, EdgeBag, Mode, Path};
use crate::minimal::{minimal_k_arc_connected, minimal_k_connected};
use crate::util::Frac;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Trivial,
    MinimalFallback,
    FullPipeline,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Trivial => write!(f, "trivial"),
            Branch::MinimalFallback => write!(f, "minimal-fallback"),
            Branch::FullPipeline => write!(f, "full-pipeline"),
        }
    }
}

/// Resolved pipeline parameters plus the inequality chain they satisfy.
#[derive(Debug, Clone)]
pub struct PipelineParams {
    pub trio: TrioParams,
    /// Fan width per served vertex; m - t1 - Δ̄ exception indices are always
    /// available since a vertex has at most Δ̄ non-neighbour collisions with
    /// the disjoint member sets.
    pub fan_target: usize,
    pub mode: Mode,
}

/// Small-n threshold below which the pipeline falls back to greedy
/// minimalization.
pub fn pipeline_threshold(k: usize, dbar: usize, mode: Mode) -> usize {
    match mode {
        Mode::Vertex => 200 * (k + dbar),
        Mode::Arc => 100 * (k + dbar),
    }
}

/// Instantiates and validates the parameter chain for a full pipeline run.
/// Every inequality consumed downstream is asserted here, exactly.
pub fn preflight(n: usize, k: usize, dbar: usize, mode: Mode) -> Result<PipelineParams> {
    if k < 1 {
        return Err(Error::input("k must be >= 1"));
    }
    if n < pipeline_threshold(k, dbar, mode) {
        return Err(Error::input(format!(
            "n = {n} below the pipeline threshold {}",
            pipeline_threshold(k, dbar, mode)
        )));
    }
    let t1 = k + dbar;
    let t2 = dbar.max(1);
    let (d, u) = match mode {
        Mode::Vertex => (30 * k + 35 * dbar, Frac::new(7 * (k + dbar) as i64, 3)),
        Mode::Arc => (5 * k + 10 * dbar, Frac::new((k + 2 * dbar) as i64, 3)),
    };
    let m = 5 * (k + dbar);
    if u < Frac::new(d as i64, 15) {
        return Err(Error::input("preflight: u < d/15"));
    }
    if n < 10 * m {
        return Err(Error::input("preflight: n < 10m"));
    }
    if m < t1 + dbar + k {
        return Err(Error::input("preflight: m < t1 + Δ̄ + k (fan target below k)"));
    }
    let fan_target = m - t1 - dbar;
    // Hub pigeonhole with the worst anchor degree guaranteed by the trio.
    let worst_anchor = (m as i64 - k as i64 - dbar as i64).div_euclid(2).max(0);
    if worst_anchor + fan_target as i64 - (k as i64 - 1) <= m as i64 {
        return Err(Error::input("preflight: hub pigeonhole inequality fails"));
    }
    // Hub degree condition.
    let hub_degree = match mode {
        Mode::Vertex => 6 * m + 5 * dbar,
        Mode::Arc => m + 5 * dbar,
    };
    if d < hub_degree {
        return Err(Error::input("preflight: trio degree parameter below the hub requirement"));
    }
    // Absorber headroom against the worst-case exempt set.
    let (worst_ex, headroom) = match mode {
        Mode::Vertex => (74 * (k + dbar), 39 * k + 38 * dbar),
        Mode::Arc => (57 * (k + dbar), 33 * k + 32 * dbar),
    };
    if n < worst_ex + headroom {
        return Err(Error::input("preflight: absorber headroom inequality fails"));
    }
    if n < worst_ex + 30 * k {
        return Err(Error::input("preflight: inner trio needs 30k vertices"));
    }
    Ok(PipelineParams {
        trio: TrioParams { t1, t2, d, m, u },
        fan_target,
        mode,
    })
}

/// Per-gadget edge accounting, bound comparison and verification verdict.
#[derive(Debug, Clone)]
pub struct SparsifyReport {
    pub mode: Mode,
    pub n: usize,
    pub k: usize,
    pub delta_bar: usize,
    pub branch: Branch,
    pub paths_edges: usize,
    pub escaper_edges: usize,
    pub linkage_edges: usize,
    pub conn_edges: usize,
    pub absorber_edges: usize,
    pub hub_edges: usize,
    pub total_edges: usize,
    /// kn + 800k(k+Δ̄) in vertex mode, kn + 670k(k+Δ̄) in arc mode.
    pub bound_value: usize,
    pub bound_met: bool,
    /// The tighter constants (790/666), logged per run.
    pub proof_bound_value: usize,
    pub proof_bound_met: bool,
    pub verified: bool,
}

impl SparsifyReport {
    /// Stable key-value rendering; identical runs produce identical bytes.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("mode: {}\n", self.mode));
        s.push_str(&format!("n: {}\n", self.n));
        s.push_str(&format!("k: {}\n", self.k));
        s.push_str(&format!("delta_bar: {}\n", self.delta_bar));
        s.push_str(&format!("branch: {}\n", self.branch));
        s.push_str(&format!("edges.paths: {}\n", self.paths_edges));
        s.push_str(&format!("edges.escaper: {}\n", self.escaper_edges));
        s.push_str(&format!("edges.linkage: {}\n", self.linkage_edges));
        s.push_str(&format!("edges.conn: {}\n", self.conn_edges));
        s.push_str(&format!("edges.absorber: {}\n", self.absorber_edges));
        s.push_str(&format!("edges.hub: {}\n", self.hub_edges));
        s.push_str(&format!("total_edges: {}\n", self.total_edges));
        s.push_str(&format!("bound_value: {}\n", self.bound_value));
        s.push_str(&format!("bound_met: {}\n", self.bound_met));
        s.push_str(&format!("proof_bound_value: {}\n", self.proof_bound_value));
        s.push_str(&format!("proof_bound_met: {}\n", self.proof_bound_met));
        s.push_str(&format!("verified: {}\n", self.verified));
        s
    }
}

fn headline_bounds(mode: Mode, n: usize, k: usize, dbar: usize) -> (usize, usize) {
    match mode {
        Mode::Vertex => (k * n + 800 * k * (k + dbar), k * n + 790 * k * (k + dbar)),
        Mode::Arc => (k * n + 670 * k * (k + dbar), k * n + 666 * k * (k + dbar)),
    }
}

fn report_for(
    mode: Mode,
    n: usize,
    k: usize,
    dbar: usize,
    branch: Branch,
    out: &DirectedMultigraph,
    parts: (usize, usize, usize, usize, usize, usize),
    verified: bool,
) -> SparsifyReport {
    let (bound_value, proof_bound_value) = headline_bounds(mode, n, k, dbar);
    let total_edges = out.edge_count();
    SparsifyReport {
        mode,
        n,
        k,
        delta_bar: dbar,
        branch,
        paths_edges: parts.0,
        escaper_edges: parts.1,
        linkage_edges: parts.2,
        conn_edges: parts.3,
        absorber_edges: parts.4,
        hub_edges: parts.5,
        total_edges,
        bound_value,
        bound_met: total_edges <= bound_value,
        proof_bound_value,
        proof_bound_met: total_edges <= proof_bound_value,
        verified,
    }
}

/// Sparse strongly k-connected spanning subgraph of a simple digraph.
pub fn sparsify_vertex(d: &DirectedMultigraph, k: usize) -> Result<(DirectedMultigraph, SparsifyReport)> {
    if k < 1 {
        return Err(Error::input("k must be >= 1"));
    }
    if !d.is_simple() {
        return Err(Error::input("vertex sparsifier takes simple digraphs"));
    }
    if let Some(w) = vertex_connectivity_witness(d, k) {
        return Err(Error::infeasible(
            format!("input is not strongly {k}-connected"),
            Some(CutWitness::Vertices(w)),
        ));
    }
    let n = d.n();
    let dbar = d.complement_max_degree();
    if n < 4 * k + 3 {
        let out = d.clone();
        let verified = is_k_connected(&out, k);
        let report =
            report_for(Mode::Vertex, n, k, dbar, Branch::Trivial, &out, (0, 0, 0, 0, 0, 0), verified);
        return Ok((out, report));
    }
    if n < pipeline_threshold(k, dbar, Mode::Vertex) {
        let minimal = minimal_k_connected(d, k)?;
        let out = minimal.graph;
        let verified = is_k_connected(&out, k);
        let report = report_for(
            Mode::Vertex,
            n,
            k,
            dbar,
            Branch::MinimalFallback,
            &out,
            (0, 0, 0, 0, 0, 0),
            verified,
        );
        return Ok((out, report));
    }
    let params = preflight(n, k, dbar, Mode::Vertex)
        .map_err(|e| Error::internal(format!("preflight failed above the threshold: {e}")))?;
    run_pipeline(d, k, dbar, params)
}

/// Sparse strongly k-arc-connected spanning subgraph of a directed
/// multigraph.
pub fn sparsify_arc(d: &DirectedMultigraph, k: usize) -> Result<(DirectedMultigraph, SparsifyReport)> {
    if k < 1 {
        return Err(Error::input("k must be >= 1"));
    }
    if let Some(w) = arc_connectivity_witness(d, k) {
        return Err(Error::infeasible(
            format!("input is not strongly {k}-arc-connected"),
            Some(CutWitness::Arcs(w)),
        ));
    }
    let n = d.n();
    let dbar = d.complement_max_degree();
    if n < pipeline_threshold(k, dbar, Mode::Arc) {
        let minimal = minimal_k_arc_connected(d, k)?;
        let out = minimal.graph;
        let verified = is_k_arc_connected(&out, k);
        let report = report_for(
            Mode::Arc,
            n,
            k,
            dbar,
            Branch::MinimalFallback,
            &out,
            (0, 0, 0, 0, 0, 0),
            verified,
        );
        return Ok((out, report));
    }
    let params = preflight(n, k, dbar, Mode::Arc)
        .map_err(|e| Error::internal(format!("preflight failed above the threshold: {e}")))?;
    run_pipeline(d, k, dbar, params)
}

fn run_pipeline(
    d: &DirectedMultigraph,
    k: usize,
    dbar: usize,
    params: PipelineParams,
) -> Result<(DirectedMultigraph, SparsifyReport)> {
    let mode = params.mode;
    let n = d.n();
    let mut trio = build_trio(d, k, params.trio)?;
    let report = verify_trio(d, &trio, k);
    if !report.ok() {
        return Err(Error::internal(format!(
            "pipeline trio failed verification: {:?}",
            report.failures()
        )));
    }
    let sources: Vec<u32> = trio.a_sinks()[..k].to_vec();
    let targets: Vec<u32> = trio.b_sources()[..k].to_vec();
    let sys = disjoint_paths(d, &sources, &targets, mode)?;
    // Relabel the first k out-dominators along the pairing so path i runs
    // a_i -> b_i; permuting within the first k preserves the T4 guarantee.
    if let Some(pairing) = &sys.pairing {
        let prefix: Vec<_> = (0..k).map(|i| trio.outs[pairing[i]].clone()).collect();
        for (i, dom) in prefix.into_iter().enumerate() {
            trio.outs[i] = dom;
        }
    }
    let paths: Vec<Path> = match mode {
        Mode::Vertex => sys
            .paths
            .iter()
            .map(|p| minimalize_path(d, p))
            .collect::<Result<_>>()?,
        Mode::Arc => sys.paths.clone(),
    };
    let paths = PathSystem { paths, mode, pairing: None };
    let minimal = match mode {
        Mode::Vertex => minimal_k_connected(d, k)?,
        Mode::Arc => minimal_k_arc_connected(d, k)?,
    };
    let v_ex: Vec<u32> = trio.excluded().into_iter().collect();
    let absorber = build_absorber(d, &minimal, &v_ex, &paths, k, mode)?;
    let hub = build_hub(d, &trio, &absorber.w_out, &absorber.w_in, k, params.fan_target, mode)?;
    let mut edges: EdgeBag = absorber.edges.clone();
    edges.union_max(&hub.edges);
    let out = edges.to_graph(n);
    let verified = match mode {
        Mode::Vertex => is_k_connected(&out, k),
        Mode::Arc => is_k_arc_connected(&out, k),
    };
    let parts = (
        absorber.parts.path_edges,
        absorber.parts.escape_edges,
        absorber.parts.linkage_edges,
        absorber.parts.conn_edges,
        absorber.edges.count(),
        hub.edges.count(),
    );
    let report = report_for(mode, n, k, dbar, Branch::FullPipeline, &out, parts, verified);
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{
        gen_dk, gen_doubled_tree, gen_random_arc_tournament, gen_random_tournament,
    };

    #[test]
    fn preflight_examples() {
        let p = preflight(250, 1, 0, Mode::Vertex).unwrap();
        assert_eq!(
            (p.trio.t1, p.trio.t2, p.trio.d, p.trio.m),
            (1, 1, 30, 5)
        );
        assert_eq!(p.trio.u, Frac::new(7, 3));
        assert_eq!(p.fan_target, 4);

        let p = preflight(1100, 2, 3, Mode::Vertex).unwrap();
        assert_eq!((p.trio.t1, p.trio.t2, p.trio.m), (5, 3, 25));
        assert_eq!(p.trio.d, 30 * 2 + 35 * 3);
        assert_eq!(p.trio.u, Frac::new(35, 3));

        assert!(preflight(40, 2, 0, Mode::Vertex).is_err());
    }

    #[test]
    fn trivial_branch_returns_input() {
        let g = gen_dk(2, 6).unwrap();
        let (out, report) = sparsify_vertex(&g, 2).unwrap();
        assert_eq!(report.branch, Branch::Trivial);
        assert_eq!(out, g);
        assert_eq!(report.total_edges, 16);
        assert!(report.verified);
        assert!(report.bound_met);
    }

    #[test]
    fn fallback_branch_minimalizes() {
        let (g, _) = gen_random_tournament(120, 1, 3).unwrap();
        let (out, report) = sparsify_vertex(&g, 1).unwrap();
        assert_eq!(report.branch, Branch::MinimalFallback);
        assert!(report.total_edges <= 2 * 120 - 1 - 1); // 2kn - k - 1
        assert!(report.verified);
        assert!(is_k_connected(&out, 1));
    }

    #[test]
    fn full_pipeline_tournament() {
        let (g, _) = gen_random_tournament(300, 1, 11).unwrap();
        let (out, report) = sparsify_vertex(&g, 1).unwrap();
        assert_eq!(report.branch, Branch::FullPipeline);
        assert!(report.verified, "output must re-verify");
        assert!(
            report.total_edges <= 300 + 800,
            "bound: {} edges",
            report.total_edges
        );
        assert!(report.bound_met);
        assert!(is_k_connected(&out, 1));
        assert!(report.total_edges >= 300); // kn lower bound
    }

    #[test]
    fn component_accounting_covers_total() {
        let (g, _) = gen_random_tournament(280, 1, 77).unwrap();
        let (_, r) = sparsify_vertex(&g, 1).unwrap();
        let parts = r.paths_edges + r.escaper_edges + r.linkage_edges + r.conn_edges + r.hub_edges;
        assert!(parts >= r.total_edges, "unions may overlap but never exceed the parts");
        assert!(r.absorber_edges <= parts - r.hub_edges);
        assert!(r.absorber_edges + r.hub_edges >= r.total_edges);
    }

    #[test]
    fn full_pipeline_is_deterministic() {
        let (g, _) = gen_random_tournament(260, 1, 5).unwrap();
        let (out1, report1) = sparsify_vertex(&g, 1).unwrap();
        let (out2, report2) = sparsify_vertex(&g, 1).unwrap();
        assert_eq!(out1, out2);
        assert_eq!(report1.to_kv(), report2.to_kv());
    }

    #[test]
    fn idempotent_safety() {
        let (g, _) = gen_random_tournament(300, 1, 19).unwrap();
        let (out, report) = sparsify_vertex(&g, 1).unwrap();
        let (again, report2) = sparsify_vertex(&out, 1).unwrap();
        assert!(report2.total_edges <= report.total_edges);
        assert!(report2.verified);
        assert!(is_k_connected(&again, 1));
    }

    #[test]
    fn arc_fallback_on_doubled_tree() {
        let g = gen_doubled_tree(20, 2, 9).unwrap();
        let (out, report) = sparsify_arc(&g, 2).unwrap();
        assert_eq!(report.branch, Branch::MinimalFallback);
        assert_eq!(out, g); // already minimal: 2k(n-1) edges
        assert_eq!(report.total_edges, 2 * 2 * 19);
        assert!(report.verified);
    }

    #[test]
    fn arc_pipeline_tournament() {
        let (g, _) = gen_random_arc_tournament(150, 1, 23).unwrap();
        let (out, report) = sparsify_arc(&g, 1).unwrap();
        assert_eq!(report.branch, Branch::FullPipeline);
        assert!(report.verified);
        assert!(report.total_edges <= 150 + 670, "got {}", report.total_edges);
        assert!(report.total_edges >= 150);
        assert!(is_k_arc_connected(&out, 1));
    }

    #[test]
    fn arc_pipeline_k3() {
        let (g, _) = gen_random_arc_tournament(320, 3, 2).unwrap();
        let (out, report) = sparsify_arc(&g, 3).unwrap();
        assert_eq!(report.branch, Branch::FullPipeline);
        assert!(report.verified);
        assert!(report.bound_met);
        assert!(is_k_arc_connected(&out, 3));
    }

    #[test]
    fn arc_pipeline_on_multigraph() {
        // Doubling a slice of edges keeps arc connectivity and exercises the
        // multiplicity handling through the whole arc pipeline.
        let (base, _) = gen_random_arc_tournament(160, 1, 31).unwrap();
        let mut edges: Vec<(u32, u32, u32)> = base.edges().collect();
        for e in edges.iter_mut().take(300) {
            e.2 = 2;
        }
        let g = DirectedMultigraph::from_edges(160, &edges).unwrap();
        assert!(!g.is_simple());
        let (out, report) = sparsify_arc(&g, 1).unwrap();
        assert_eq!(report.branch, Branch::FullPipeline);
        assert!(report.verified);
        assert!(report.bound_met);
        assert!(is_k_arc_connected(&out, 1));
    }

    #[test]
    fn rejects_disconnected_inputs() {
        let g = gen_dk(1, 8).unwrap();
        match sparsify_vertex(&g, 2) {
            Err(Error::Infeasible { witness: Some(_), .. }) => {}
            other => panic!("expected infeasible with witness, got {other:?}"),
        }
    }
}
