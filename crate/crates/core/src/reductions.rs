//! Generators for the hardness gadget instances: given a Hamiltonian-cycle
//! instance, build a matching reconfiguration instance whose optimum is 2
//! exactly when a (directed) Hamiltonian cycle exists, together with the
//! explicit two-flip witness for yes-instances.
//!
//! Planar route: each vertex of a 3-regular graph becomes an 8-vertex gadget
//! wired through twice-subdivided edges. Bipartite route: each vertex of a
//! digraph with in/out-degree at most 2 becomes an 8-vertex chain gadget with
//! one undirected edge per arc.

use crate::error::{Error, Result};
use crate::graph::{flip, Cycle, EdgeId, Multigraph, PerfectMatching, ReconfigSequence, VertexId};
use crate::solver::SpmrInstance;

/// A 3-regular simple graph, optionally with a rotation system (per-vertex
/// cyclic order of incident edges from a planar embedding). Without it the
/// incident order is ascending by id; the distance-2 characterization of the
/// output does not depend on the order, planarity of the output might.
#[derive(Debug, Clone)]
pub struct PlanarHcInstance {
    pub graph: Multigraph,
    pub rotation: Option<Vec<[EdgeId; 3]>>,
}

impl PlanarHcInstance {
    pub fn new(graph: Multigraph, rotation: Option<Vec<[EdgeId; 3]>>) -> Result<Self> {
        for v in 0..graph.vertex_count() {
            if graph.incident(v).len() != 3 {
                return Err(Error::Input(format!(
                    "vertex {v} has degree {}, need 3-regular",
                    graph.incident(v).len()
                )));
            }
        }
        let mut pairs: Vec<(VertexId, VertexId)> = graph
            .edges()
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("graph has parallel edges, need simple".into()));
        }
        if let Some(rot) = &rotation {
            if rot.len() != graph.vertex_count() {
                return Err(Error::Input("rotation system must cover every vertex".into()));
            }
            for (v, order) in rot.iter().enumerate() {
                let mut sorted = *order;
                sorted.sort_unstable();
                if sorted != *<&[EdgeId; 3]>::try_from(graph.incident(v)).unwrap() {
                    return Err(Error::Input(format!(
                        "rotation at vertex {v} is not a permutation of its incident edges"
                    )));
                }
            }
        }
        Ok(PlanarHcInstance { graph, rotation })
    }
}

/// A digraph with maximum in-degree and out-degree 2.
#[derive(Debug, Clone)]
pub struct DirectedHcInstance {
    pub vertex_count: usize,
    pub arcs: Vec<(VertexId, VertexId)>,
}

impl DirectedHcInstance {
    pub fn new(vertex_count: usize, arcs: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut indeg = vec![0usize; vertex_count];
        let mut outdeg = vec![0usize; vertex_count];
        for &(u, v) in &arcs {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Input(format!("arc ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            outdeg[u] += 1;
            indeg[v] += 1;
        }
        if let Some(v) = (0..vertex_count).find(|&v| indeg[v] > 2 || outdeg[v] > 2) {
            return Err(Error::Input(format!("vertex {v} exceeds in/out degree 2")));
        }
        Ok(DirectedHcInstance { vertex_count, arcs })
    }
}

/// Output of the planar-route reduction with provenance back to the source.
#[derive(Debug, Clone)]
pub struct PlanarReduction {
    pub instance: SpmrInstance,
    /// Per source vertex: the gadget vertices `v1..v8`.
    pub gadget_vertices: Vec<[VertexId; 8]>,
    /// Per source edge `uv`: the subdivision vertices `(u_e, v_e)`.
    pub sub_vertices: Vec<(VertexId, VertexId)>,
    pub gadget_edges: Vec<[EdgeId; 8]>,
    pub wiring_edges: Vec<[EdgeId; 4]>,
    /// Per source edge: the id of the `u_e v_e` edge.
    pub sub_edges: Vec<EdgeId>,
    /// The incident edges `e1, e2, e3` used at each source vertex.
    pub incident_order: Vec<[EdgeId; 3]>,
    /// The source edge list, for mapping cycles back.
    pub source_edges: Vec<(VertexId, VertexId)>,
}

// gadget edge layout: [v1v2, v2v3, v3v4, v4v1, v4v5, v5v7, v3v6, v6v8]
const PG_V1V2: usize = 0;
const PG_V2V3: usize = 1;
const PG_V3V4: usize = 2;
const PG_V4V1: usize = 3;
const PG_V4V5: usize = 4;
const PG_V5V7: usize = 5;
const PG_V3V6: usize = 6;
const PG_V6V8: usize = 7;

pub fn reduce_planar(hc: &PlanarHcInstance) -> Result<PlanarReduction> {
    let h = &hc.graph;
    let nv = h.vertex_count();
    let ne = h.edge_count();
    let gadget_vertices: Vec<[VertexId; 8]> =
        (0..nv).map(|v| std::array::from_fn(|k| 8 * v + k)).collect();
    let sub_base = 8 * nv;
    let sub_vertices: Vec<(VertexId, VertexId)> =
        (0..ne).map(|e| (sub_base + 2 * e, sub_base + 2 * e + 1)).collect();
    // the subdivision vertex of edge e on the side of endpoint `at`
    let sub_at = |e: EdgeId, at: VertexId| -> VertexId {
        let (u, v) = h.endpoints(e);
        if at == u {
            sub_vertices[e].0
        } else {
            debug_assert_eq!(at, v);
            sub_vertices[e].1
        }
    };

    let incident_order: Vec<[EdgeId; 3]> = (0..nv)
        .map(|v| match &hc.rotation {
            Some(rot) => rot[v],
            None => *<&[EdgeId; 3]>::try_from(h.incident(v)).unwrap(),
        })
        .collect();

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut gadget_edges = Vec::with_capacity(nv);
    for v in 0..nv {
        let [v1, v2, v3, v4, v5, v6, v7, v8] = gadget_vertices[v];
        let local =
            [(v1, v2), (v2, v3), (v3, v4), (v4, v1), (v4, v5), (v5, v7), (v3, v6), (v6, v8)];
        let ids: [EdgeId; 8] = std::array::from_fn(|k| edges.len() + k);
        edges.extend(local);
        gadget_edges.push(ids);
    }
    let mut wiring_edges = Vec::with_capacity(nv);
    for v in 0..nv {
        let [e1, e2, e3] = incident_order[v];
        let v7 = gadget_vertices[v][6];
        let v8 = gadget_vertices[v][7];
        let local = [
            (v7, sub_at(e1, v)),
            (v7, sub_at(e2, v)),
            (v8, sub_at(e2, v)),
            (v8, sub_at(e3, v)),
        ];
        let ids: [EdgeId; 4] = std::array::from_fn(|k| edges.len() + k);
        edges.extend(local);
        wiring_edges.push(ids);
    }
    let mut sub_edges = Vec::with_capacity(ne);
    for e in 0..ne {
        sub_edges.push(edges.len());
        edges.push(sub_vertices[e]);
    }

    let graph = Multigraph::new(8 * nv + 2 * ne, edges)?;
    if (0..graph.vertex_count()).any(|v| graph.incident(v).len() > 3) {
        return Err(Error::Internal("reduction output exceeds degree 3".into()));
    }
    let mut m_ids = Vec::new();
    let mut n_ids = Vec::new();
    for v in 0..nv {
        let g = gadget_edges[v];
        m_ids.extend([g[PG_V1V2], g[PG_V3V4], g[PG_V5V7], g[PG_V6V8]]);
        n_ids.extend([g[PG_V4V1], g[PG_V2V3], g[PG_V5V7], g[PG_V6V8]]);
    }
    m_ids.extend(&sub_edges);
    n_ids.extend(&sub_edges);

    let instance = SpmrInstance::new(graph, m_ids, n_ids, vec![])?;
    Ok(PlanarReduction {
        instance,
        gadget_vertices,
        sub_vertices,
        gadget_edges,
        wiring_edges,
        sub_edges,
        incident_order,
        source_edges: h.edges().to_vec(),
    })
}

/// Output of the bipartite-route reduction with provenance.
#[derive(Debug, Clone)]
pub struct BipartiteReduction {
    pub instance: SpmrInstance,
    /// Per source vertex: `v+, v1..v6, v-`.
    pub gadget_vertices: Vec<[VertexId; 8]>,
    pub gadget_edges: Vec<[EdgeId; 8]>,
    /// Per source arc `u -> v`: the id of the `u- v+` edge.
    pub arc_edges: Vec<EdgeId>,
    /// The distance-2 characterization assumes at least 3 source vertices.
    pub below_recommended_size: bool,
}

// gadget edge layout: [v+v1, v1v2, v2v3, v3v4, v4v5, v5v2, v5v6, v6v-]
const BG_VPV1: usize = 0;
const BG_V1V2: usize = 1;
const BG_V2V3: usize = 2;
const BG_V3V4: usize = 3;
const BG_V4V5: usize = 4;
const BG_V5V2: usize = 5;
const BG_V5V6: usize = 6;
const BG_V6VM: usize = 7;

pub fn reduce_bipartite(dhc: &DirectedHcInstance) -> Result<BipartiteReduction> {
    let nv = dhc.vertex_count;
    let gadget_vertices: Vec<[VertexId; 8]> =
        (0..nv).map(|v| std::array::from_fn(|k| 8 * v + k)).collect();
    let plus = |v: VertexId| 8 * v;
    let minus = |v: VertexId| 8 * v + 7;

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut gadget_edges = Vec::with_capacity(nv);
    for v in 0..nv {
        let [vp, v1, v2, v3, v4, v5, v6, vm] = gadget_vertices[v];
        let local =
            [(vp, v1), (v1, v2), (v2, v3), (v3, v4), (v4, v5), (v5, v2), (v5, v6), (v6, vm)];
        let ids: [EdgeId; 8] = std::array::from_fn(|k| edges.len() + k);
        edges.extend(local);
        gadget_edges.push(ids);
    }
    let mut arc_edges = Vec::with_capacity(dhc.arcs.len());
    for &(u, v) in &dhc.arcs {
        arc_edges.push(edges.len());
        edges.push((minus(u), plus(v)));
    }

    let graph = Multigraph::new(8 * nv, edges)?;
    if (0..graph.vertex_count()).any(|v| graph.incident(v).len() > 3) {
        return Err(Error::Internal("reduction output exceeds degree 3".into()));
    }
    if !is_bipartite(&graph) {
        return Err(Error::Internal("reduction output is not bipartite".into()));
    }
    let mut m_ids = Vec::new();
    let mut n_ids = Vec::new();
    for v in 0..nv {
        let g = gadget_edges[v];
        m_ids.extend([g[BG_VPV1], g[BG_V2V3], g[BG_V4V5], g[BG_V6VM]]);
        n_ids.extend([g[BG_VPV1], g[BG_V5V2], g[BG_V3V4], g[BG_V6VM]]);
    }
    let instance = SpmrInstance::new(graph, m_ids, n_ids, vec![])?;
    Ok(BipartiteReduction {
        instance,
        gadget_vertices,
        gadget_edges,
        arc_edges,
        below_recommended_size: nv < 3,
    })
}

/// Proper 2-coloring check.
pub fn is_bipartite(g: &Multigraph) -> bool {
    let mut color = vec![u8::MAX; g.vertex_count()];
    for root in 0..g.vertex_count() {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &e in g.incident(v) {
                let w = g.other_end(e, v);
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// A Hamiltonian cycle of the source instance, as a vertex sequence.
#[derive(Debug, Clone)]
pub enum HamiltonianWitness<'a> {
    /// Undirected cycle in a planar-route source.
    Planar(&'a PlanarReduction, Vec<VertexId>),
    /// Directed cycle in a bipartite-route source.
    Bipartite(&'a BipartiteReduction, Vec<VertexId>),
}

/// Builds the explicit two-flip sequence witnessing optimality on a
/// yes-instance; fails if the supplied cycle is not Hamiltonian.
pub fn witness_sequence_from_hc(witness: &HamiltonianWitness) -> Result<ReconfigSequence> {
    match witness {
        HamiltonianWitness::Planar(red, cycle) => planar_witness(red, cycle),
        HamiltonianWitness::Bipartite(red, cycle) => bipartite_witness(red, cycle),
    }
}

fn check_vertex_sequence(cycle: &[VertexId], nv: usize) -> Result<()> {
    if cycle.len() != nv || nv < 3 {
        return Err(Error::Input(format!(
            "cycle visits {} of {nv} vertices",
            cycle.len()
        )));
    }
    let mut seen = vec![false; nv];
    for &v in cycle {
        if v >= nv || seen[v] {
            return Err(Error::Input("cycle repeats or skips a vertex".into()));
        }
        seen[v] = true;
    }
    Ok(())
}

fn planar_witness(red: &PlanarReduction, cycle: &[VertexId]) -> Result<ReconfigSequence> {
    let h = &red.instance;
    let nv = red.gadget_vertices.len();
    check_vertex_sequence(cycle, nv)?;

    // the source edge joining each consecutive pair
    let mut hc_edges = Vec::with_capacity(nv);
    for i in 0..nv {
        let (a, b) = (cycle[i], cycle[(i + 1) % nv]);
        let e = red
            .source_edges
            .iter()
            .position(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
            .ok_or_else(|| Error::Input(format!("no edge joins {a} and {b}")))?;
        hc_edges.push(e);
    }

    // per gadget: the two wiring edges serving its two cycle edges
    let mut first_cycle: Vec<EdgeId> = Vec::new();
    let mut second_cycle: Vec<EdgeId> = Vec::new();
    for i in 0..nv {
        let v = cycle[i];
        let e_prev = hc_edges[(i + nv - 1) % nv];
        let e_next = hc_edges[i];
        let (w_a, w_b) = wiring_pair(red, v, e_prev, e_next)?;
        let g = red.gadget_edges[v];
        first_cycle.extend([g[PG_V5V7], g[PG_V4V5], g[PG_V3V4], g[PG_V3V6], g[PG_V6V8]]);
        first_cycle.extend([w_a, w_b]);
        second_cycle.extend([
            g[PG_V1V2],
            g[PG_V2V3],
            g[PG_V4V1],
            g[PG_V4V5],
            g[PG_V5V7],
            g[PG_V3V6],
            g[PG_V6V8],
        ]);
        second_cycle.extend([w_a, w_b]);
    }
    for &e in &hc_edges {
        first_cycle.push(red.sub_edges[e]);
        second_cycle.push(red.sub_edges[e]);
    }
    assemble_witness(&h.graph, &h.m, &h.n, first_cycle, second_cycle)
}

/// The wiring edges at gadget `v` serving source edges `a` and `b`:
/// `e1` is wired through the first terminal, `e3` through the second, and
/// `e2` through whichever the pairing leaves free.
fn wiring_pair(
    red: &PlanarReduction,
    v: VertexId,
    a: EdgeId,
    b: EdgeId,
) -> Result<(EdgeId, EdgeId)> {
    let [e1, e2, e3] = red.incident_order[v];
    let w = red.wiring_edges[v];
    let pick = |e: EdgeId, partner: EdgeId| -> Result<EdgeId> {
        if e == e1 {
            Ok(w[0])
        } else if e == e3 {
            Ok(w[3])
        } else if e == e2 {
            Ok(if partner == e1 { w[2] } else { w[1] })
        } else {
            Err(Error::Input(format!("edge {e} is not incident to vertex {v}")))
        }
    };
    Ok((pick(a, b)?, pick(b, a)?))
}

fn bipartite_witness(red: &BipartiteReduction, cycle: &[VertexId]) -> Result<ReconfigSequence> {
    let h = &red.instance;
    let nv = red.gadget_vertices.len();
    check_vertex_sequence(cycle, nv)?;

    // locate the arc of every consecutive directed pair
    let mut arc_of = std::collections::HashMap::new();
    for (j, &(u, v)) in arcsource(red).iter().enumerate() {
        arc_of.entry((u, v)).or_insert(j);
    }
    let mut hc_arcs = Vec::with_capacity(nv);
    for i in 0..nv {
        let (a, b) = (cycle[i], cycle[(i + 1) % nv]);
        let j = arc_of
            .get(&(a, b))
            .copied()
            .ok_or_else(|| Error::Input(format!("no arc from {a} to {b}")))?;
        hc_arcs.push(j);
    }

    let mut first_cycle: Vec<EdgeId> = Vec::new();
    let mut second_cycle: Vec<EdgeId> = Vec::new();
    for &v in cycle {
        let g = red.gadget_edges[v];
        first_cycle.extend([
            g[BG_VPV1],
            g[BG_V1V2],
            g[BG_V2V3],
            g[BG_V3V4],
            g[BG_V4V5],
            g[BG_V5V6],
            g[BG_V6VM],
        ]);
        second_cycle.extend([g[BG_VPV1], g[BG_V1V2], g[BG_V5V2], g[BG_V5V6], g[BG_V6VM]]);
    }
    for &j in &hc_arcs {
        first_cycle.push(red.arc_edges[j]);
        second_cycle.push(red.arc_edges[j]);
    }
    assemble_witness(&h.graph, &h.m, &h.n, first_cycle, second_cycle)
}

/// Arc list recovered from the stored arc edges.
fn arcsource(red: &BipartiteReduction) -> Vec<(VertexId, VertexId)> {
    red.arc_edges
        .iter()
        .map(|&id| {
            let (um, vp) = red.instance.graph.endpoints(id);
            (um / 8, vp / 8)
        })
        .collect()
}

fn assemble_witness(
    g: &Multigraph,
    m: &PerfectMatching,
    n: &PerfectMatching,
    first: Vec<EdgeId>,
    second: Vec<EdgeId>,
) -> Result<ReconfigSequence> {
    let c1 = Cycle::new(g, first)
        .map_err(|e| Error::Internal(format!("first witness flip is not a cycle: {e}")))?;
    let mid = flip(g, m, &c1)
        .map_err(|e| Error::Internal(format!("first witness flip not alternating: {e}")))?;
    let c2 = Cycle::new(g, second)
        .map_err(|e| Error::Internal(format!("second witness flip is not a cycle: {e}")))?;
    let last = flip(g, &mid, &c2)
        .map_err(|e| Error::Internal(format!("second witness flip not alternating: {e}")))?;
    if &last != n {
        return Err(Error::Internal("witness sequence does not end at the target".into()));
    }
    Ok(ReconfigSequence { matchings: vec![m.clone(), mid, last], cycles: vec![c1, c2] })
}
