//! Multigraph, perfect matching, and alternating-cycle machinery.
//!
//! Edge identity is positional: edge id = index into the edge list, so
//! parallel edges are distinct ids. Cycles are stored as edge-id sets (not
//! vertex walks) so that length-2 cycles through a parallel pair are
//! representable. All values are immutable after construction and every
//! operation iterates in ascending id order, so outputs are reproducible.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Undirected multigraph. Parallel edges allowed, loops forbidden.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Input(format!(
                    "edge {id} = ({u}, {v}) has an endpoint >= vertex count {vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("edge {id} is a loop at vertex {u}")));
            }
        }
        let mut incident = vec![Vec::new(); vertex_count];
        for (id, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(id);
            incident[v].push(id);
        }
        Ok(Multigraph { vertex_count, edges, incident })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    fn check_edge_ids(&self, ids: &[EdgeId]) -> Result<()> {
        for &e in ids {
            if e >= self.edges.len() {
                return Err(Error::Input(format!(
                    "edge id {e} out of range (graph has {} edges)",
                    self.edges.len()
                )));
            }
        }
        Ok(())
    }
}

/// Returns true iff `ids` covers every vertex exactly once.
pub fn validate_perfect_matching(g: &Multigraph, ids: &[EdgeId]) -> Result<bool> {
    g.check_edge_ids(ids)?;
    let mut seen = vec![false; g.edge_count()];
    let mut degree = vec![0u8; g.vertex_count()];
    for &e in ids {
        if seen[e] {
            return Err(Error::Input(format!("edge id {e} listed twice")));
        }
        seen[e] = true;
        let (u, v) = g.endpoints(e);
        degree[u] += 1;
        degree[v] += 1;
    }
    Ok(degree.iter().all(|&d| d == 1))
}

/// A perfect matching, stored as a sorted edge-id set with a vertex -> edge map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfectMatching {
    ids: Vec<EdgeId>,
    matched_edge: Vec<EdgeId>,
}

impl PerfectMatching {
    pub fn new(g: &Multigraph, mut ids: Vec<EdgeId>) -> Result<Self> {
        if !validate_perfect_matching(g, &ids)? {
            return Err(Error::Input("edge set is not a perfect matching".into()));
        }
        ids.sort_unstable();
        let mut matched_edge = vec![usize::MAX; g.vertex_count()];
        for &e in &ids {
            let (u, v) = g.endpoints(e);
            matched_edge[u] = e;
            matched_edge[v] = e;
        }
        Ok(PerfectMatching { ids, matched_edge })
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.ids.binary_search(&e).is_ok()
    }

    /// The matching edge covering `v`.
    pub fn edge_at(&self, v: VertexId) -> EdgeId {
        self.matched_edge[v]
    }
}

/// A simple cycle, stored as a sorted edge-id set. Every touched vertex has
/// degree exactly 2 within the set and the set is one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    ids: Vec<EdgeId>,
}

impl Cycle {
    pub fn new(g: &Multigraph, mut ids: Vec<EdgeId>) -> Result<Self> {
        g.check_edge_ids(&ids)?;
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("cycle lists an edge id twice".into()));
        }
        if !is_cycle_edge_set(g, &ids) {
            return Err(Error::Input("edge set is not a single simple cycle".into()));
        }
        Ok(Cycle { ids })
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.ids.binary_search(&e).is_ok()
    }
}

/// Checks the degree-2 plus single-component condition for a nonempty,
/// duplicate-free edge-id set.
pub(crate) fn is_cycle_edge_set(g: &Multigraph, ids: &[EdgeId]) -> bool {
    if ids.is_empty() {
        return false;
    }
    let mut degree = vec![0u8; g.vertex_count()];
    for &e in ids {
        let (u, v) = g.endpoints(e);
        if degree[u] == 2 || degree[v] == 2 {
            return false;
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    if degree.contains(&1) {
        return false;
    }
    // walk from one edge; a single cycle visits every listed edge
    let in_set = {
        let mut f = vec![false; g.edge_count()];
        for &e in ids {
            f[e] = true;
        }
        f
    };
    let start_edge = ids[0];
    let (start, mut cur) = g.endpoints(start_edge);
    let mut prev_edge = start_edge;
    let mut visited = 1usize;
    while cur != start {
        let next = g
            .incident(cur)
            .iter()
            .copied()
            .find(|&e| in_set[e] && e != prev_edge)
            .expect("degree-2 vertex must have a second cycle edge");
        prev_edge = next;
        cur = g.other_end(next, cur);
        visited += 1;
    }
    visited == ids.len()
}

/// True iff membership in `m` alternates when traversing `c`.
///
/// Equivalent per-vertex form: every cycle vertex has exactly one of its two
/// incident cycle edges in `m`. This also covers length-2 cycles through a
/// parallel pair.
pub fn is_alternating_cycle(g: &Multigraph, m: &PerfectMatching, c: &Cycle) -> bool {
    let mut balance = vec![0i8; g.vertex_count()];
    for &e in c.ids() {
        let (u, v) = g.endpoints(e);
        let delta = if m.contains(e) { 1 } else { -1 };
        balance[u] += delta;
        balance[v] += delta;
    }
    c.ids().iter().all(|&e| {
        let (u, v) = g.endpoints(e);
        balance[u] == 0 && balance[v] == 0
    })
}

/// `m` triangle `c` for an `m`-alternating cycle `c`.
pub fn flip(g: &Multigraph, m: &PerfectMatching, c: &Cycle) -> Result<PerfectMatching> {
    if !is_alternating_cycle(g, m, c) {
        return Err(Error::Input("cycle is not alternating for the matching".into()));
    }
    let mut ids: Vec<EdgeId> = m.ids().iter().copied().filter(|&e| !c.contains(e)).collect();
    ids.extend(c.ids().iter().copied().filter(|&e| !m.contains(e)));
    PerfectMatching::new(g, ids)
}

/// Decomposes `m` triangle `n` into vertex-disjoint simple cycles, each
/// alternating for both matchings. Empty iff `m == n`.
pub fn symmetric_difference_cycles(
    g: &Multigraph,
    m: &PerfectMatching,
    n: &PerfectMatching,
) -> Result<Vec<Cycle>> {
    let mut in_diff = vec![false; g.edge_count()];
    for &e in m.ids() {
        in_diff[e] = true;
    }
    for &e in n.ids() {
        in_diff[e] = !in_diff[e];
    }
    let mut used = vec![false; g.edge_count()];
    let mut cycles = Vec::new();
    for start in 0..g.edge_count() {
        if !in_diff[start] || used[start] {
            continue;
        }
        // trace this component; every vertex has degree exactly 2 in the diff
        let mut ids = vec![start];
        used[start] = true;
        let (anchor, mut cur) = g.endpoints(start);
        let mut prev = start;
        while cur != anchor {
            let next = g
                .incident(cur)
                .iter()
                .copied()
                .find(|&e| in_diff[e] && e != prev)
                .ok_or_else(|| {
                    Error::Internal("symmetric difference is not a union of cycles".into())
                })?;
            used[next] = true;
            ids.push(next);
            prev = next;
            cur = g.other_end(next, cur);
        }
        cycles.push(Cycle::new(g, ids)?);
    }
    Ok(cycles)
}

/// One 2-connected block: its vertex set and edge-id set, both ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<VertexId>,
    pub edge_ids: Vec<EdgeId>,
}

/// Standard block decomposition (Hopcroft-Tarjan lowpoint DFS, iterative).
/// Every edge lands in exactly one block; a parallel pair forms or joins a
/// block; blocks are returned sorted by their smallest edge id.
pub fn biconnected_components(g: &Multigraph) -> Vec<Block> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks = Vec::new();

    // DFS frame: (vertex, incoming tree edge, index into incident list)
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, None, 0));
        while let Some(&mut (v, parent_edge, ref mut idx)) = stack.last_mut() {
            if *idx < g.incident(v).len() {
                let e = g.incident(v)[*idx];
                *idx += 1;
                if Some(e) == parent_edge {
                    continue;
                }
                let w = g.other_end(e, v);
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    // back edge (strict: forward copies already handled)
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (u, _, _)) = stack.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // u is an articulation point (or root): pop one block
                        let tree_edge = *parent_edge.as_ref().expect("non-root has a parent edge");
                        let mut ids = Vec::new();
                        loop {
                            let e = edge_stack.pop().expect("edge stack must contain the tree edge");
                            ids.push(e);
                            if e == tree_edge {
                                break;
                            }
                        }
                        blocks.push(make_block(g, ids));
                    }
                }
            }
        }
    }
    blocks.sort_by_key(|b| b.edge_ids[0]);
    blocks
}

fn make_block(g: &Multigraph, mut ids: Vec<EdgeId>) -> Block {
    ids.sort_unstable();
    let mut vertices: Vec<VertexId> = ids
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    Block { vertices, edge_ids: ids }
}

/// A reconfiguration sequence: matchings `M_0 ... M_t` and the alternating
/// cycles `C_1 ... C_t` with `M_i = M_{i-1}` triangle `C_i`.
#[derive(Debug, Clone)]
pub struct ReconfigSequence {
    pub matchings: Vec<PerfectMatching>,
    pub cycles: Vec<Cycle>,
}

impl ReconfigSequence {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Checks every sequence invariant against `g`.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.matchings.len() != self.cycles.len() + 1 {
            return Err(Error::Input(format!(
                "sequence has {} matchings but {} cycles",
                self.matchings.len(),
                self.cycles.len()
            )));
        }
        for (i, c) in self.cycles.iter().enumerate() {
            if !is_alternating_cycle(g, &self.matchings[i], c) {
                return Err(Error::Input(format!("cycle {i} is not alternating for M_{i}")));
            }
            let next = flip(g, &self.matchings[i], c)?;
            if next != self.matchings[i + 1] {
                return Err(Error::Input(format!("M_{} != M_{} triangle C_{}", i + 1, i, i + 1)));
            }
        }
        Ok(())
    }
}

/// The trivial sequence flipping each cycle of `m` triangle `n` in ascending
/// order. Its length is the naive upper bound, not necessarily shortest.
pub fn naive_sequence(
    g: &Multigraph,
    m: &PerfectMatching,
    n: &PerfectMatching,
) -> Result<ReconfigSequence> {
    let cycles = symmetric_difference_cycles(g, m, n)?;
    let mut matchings = vec![m.clone()];
    for c in &cycles {
        let next = flip(g, matchings.last().unwrap(), c)?;
        matchings.push(next);
    }
    if matchings.last().unwrap() != n {
        return Err(Error::Internal("naive sequence did not reach the target".into()));
    }
    Ok(ReconfigSequence { matchings, cycles })
}

/// A vertex/edge-induced subgraph with maps back to the parent graph.
/// Local vertex ids follow ascending parent ids; local edge ids follow the
/// order of `edge_ids` given to `induce`.
#[derive(Debug, Clone)]
pub struct SubGraph {
    pub graph: Multigraph,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

impl SubGraph {
    /// Builds the subgraph spanned by `edge_ids` (vertices are those touched).
    pub fn induce(g: &Multigraph, edge_ids: &[EdgeId]) -> SubGraph {
        let mut vertex_map: Vec<VertexId> = edge_ids
            .iter()
            .flat_map(|&e| {
                let (u, v) = g.endpoints(e);
                [u, v]
            })
            .collect();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        let mut local = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in vertex_map.iter().enumerate() {
            local[v] = i;
        }
        let edges = edge_ids
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                (local[u], local[v])
            })
            .collect();
        let graph = Multigraph::new(vertex_map.len(), edges)
            .expect("induced subgraph inherits validity");
        SubGraph { graph, vertex_map, edge_map: edge_ids.to_vec() }
    }

    /// Restricts a parent edge-id set to this subgraph, in local ids.
    pub fn restrict_edges(&self, parent_ids: &[EdgeId]) -> Vec<EdgeId> {
        let mut out = self.restrict_edges_ordered(parent_ids);
        out.sort_unstable();
        out
    }

    /// Like `restrict_edges` but keeps the input order (absent ids dropped).
    pub fn restrict_edges_ordered(&self, parent_ids: &[EdgeId]) -> Vec<EdgeId> {
        let mut member = std::collections::HashMap::new();
        for (local, &parent) in self.edge_map.iter().enumerate() {
            member.insert(parent, local);
        }
        parent_ids.iter().filter_map(|e| member.get(e).copied()).collect()
    }

    pub fn to_parent_edges(&self, local_ids: &[EdgeId]) -> Vec<EdgeId> {
        local_ids.iter().map(|&e| self.edge_map[e]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle_graph(n: usize) -> Multigraph {
        Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn matching(g: &Multigraph, ids: &[EdgeId]) -> PerfectMatching {
        PerfectMatching::new(g, ids.to_vec()).unwrap()
    }

    #[test]
    fn multigraph_rejects_bad_edges() {
        assert!(matches!(Multigraph::new(2, vec![(0, 2)]), Err(Error::Input(_))));
        assert!(matches!(Multigraph::new(2, vec![(1, 1)]), Err(Error::Input(_))));
    }

    #[test]
    fn validate_matching_on_four_cycle() {
        let g = cycle_graph(4);
        assert!(validate_perfect_matching(&g, &[0, 2]).unwrap());
        assert!(!validate_perfect_matching(&g, &[0, 1]).unwrap());
        assert!(matches!(validate_perfect_matching(&g, &[9]), Err(Error::Input(_))));
    }

    #[test]
    fn validate_matching_with_parallel_edges() {
        let g = Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(validate_perfect_matching(&g, &[0]).unwrap());
        assert!(validate_perfect_matching(&g, &[1]).unwrap());
        assert!(!validate_perfect_matching(&g, &[0, 1]).unwrap());
    }

    #[test]
    fn alternating_cycles() {
        let g = cycle_graph(4);
        let m = matching(&g, &[0, 2]);
        let c = Cycle::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert!(is_alternating_cycle(&g, &m, &c));

        let g6 = cycle_graph(6);
        let m6 = matching(&g6, &[0, 2, 4]);
        let c6 = Cycle::new(&g6, vec![0, 1, 2, 3, 4, 5]).unwrap();
        assert!(is_alternating_cycle(&g6, &m6, &c6));

        // length-2 alternation through a parallel pair
        let g2 = Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let m2 = matching(&g2, &[0]);
        let c2 = Cycle::new(&g2, vec![0, 1]).unwrap();
        assert!(is_alternating_cycle(&g2, &m2, &c2));
    }

    #[test]
    fn cycle_rejects_non_cycles() {
        let g = cycle_graph(4);
        assert!(Cycle::new(&g, vec![0, 1]).is_err());
        assert!(Cycle::new(&g, vec![]).is_err());
        assert!(Cycle::new(&g, vec![0, 0]).is_err());
        // two disjoint 4-cycles are not a single cycle
        let g8 = Multigraph::new(
            8,
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        .unwrap();
        assert!(Cycle::new(&g8, (0..8).collect()).is_err());
    }

    #[test]
    fn flip_four_cycle_and_involution() {
        let g = cycle_graph(4);
        let m = matching(&g, &[0, 2]);
        let c = Cycle::new(&g, vec![0, 1, 2, 3]).unwrap();
        let flipped = flip(&g, &m, &c).unwrap();
        assert_eq!(flipped.ids(), &[1, 3]);
        assert_eq!(flip(&g, &flipped, &c).unwrap(), m);

        let g6 = cycle_graph(6);
        let m6 = matching(&g6, &[0, 2, 4]);
        let c6 = Cycle::new(&g6, (0..6).collect()).unwrap();
        assert_eq!(flip(&g6, &m6, &c6).unwrap().ids(), &[1, 3, 5]);
    }

    #[test]
    fn flip_rejects_non_alternating() {
        // the cycle 0-3-4-7 in the chorded octagon carries no matching edge
        let g = Multigraph::new(
            8,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 0),
                (0, 3),
                (4, 7),
            ],
        )
        .unwrap();
        let m = matching(&g, &[0, 2, 4, 6]);
        let c = Cycle::new(&g, vec![3, 8, 9, 7]).unwrap(); // 0-3-4-7-0, no m edge alternation
        assert!(!is_alternating_cycle(&g, &m, &c));
        assert!(matches!(flip(&g, &m, &c), Err(Error::Input(_))));
    }

    #[test]
    fn symmetric_difference_octagon_two_chords() {
        // octagon + chords 0-3 (id 8) and 4-7 (id 9)
        let g = Multigraph::new(
            8,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 0),
                (0, 3),
                (4, 7),
            ],
        )
        .unwrap();
        let m = matching(&g, &[0, 2, 4, 6]);
        let n = matching(&g, &[1, 8, 5, 9]);
        let cycles = symmetric_difference_cycles(&g, &m, &n).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].ids(), &[0, 1, 2, 8]);
        assert_eq!(cycles[1].ids(), &[4, 5, 6, 9]);

        assert!(symmetric_difference_cycles(&g, &m, &m).unwrap().is_empty());
    }

    #[test]
    fn naive_sequence_lengths() {
        let g = Multigraph::new(
            8,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 0),
                (0, 3),
                (4, 7),
            ],
        )
        .unwrap();
        let m = matching(&g, &[0, 2, 4, 6]);
        let n = matching(&g, &[1, 8, 5, 9]);
        let seq = naive_sequence(&g, &m, &n).unwrap();
        assert_eq!(seq.len(), 2);
        seq.validate(&g).unwrap();
        assert_eq!(seq.matchings.last().unwrap(), &n);

        let trivial = naive_sequence(&g, &m, &m).unwrap();
        assert_eq!(trivial.len(), 0);
    }

    #[test]
    fn blocks_simple_shapes() {
        let g = cycle_graph(5);
        let blocks = biconnected_components(&g);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].edge_ids, (0..5).collect::<Vec<_>>());

        // two triangles sharing vertex 2
        let g = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let blocks = biconnected_components(&g);
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].edge_ids, vec![0, 1, 2]);
        assert_eq!(blocks[1].edge_ids, vec![3, 4, 5]);

        // parallel pair forms a block; bridge is its own block
        let g = Multigraph::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        let blocks = biconnected_components(&g);
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].edge_ids, vec![0, 1]);
        assert_eq!(blocks[1].edge_ids, vec![2]);
    }

    /// Brute-force block oracle: edges are equivalent iff some simple cycle
    /// contains both; blocks are the equivalence classes plus singleton
    /// bridges.
    fn blocks_bruteforce(g: &Multigraph) -> Vec<Vec<EdgeId>> {
        let m = g.edge_count();
        let mut together = vec![vec![false; m]; m];
        // enumerate all simple cycles: DFS over edge paths anchored at the
        // smallest vertex of the cycle
        fn dfs(
            g: &Multigraph,
            anchor: VertexId,
            cur: VertexId,
            used_v: &mut Vec<bool>,
            path: &mut Vec<EdgeId>,
            together: &mut Vec<Vec<bool>>,
        ) {
            for &e in g.incident(cur) {
                if path.contains(&e) {
                    continue;
                }
                let w = g.other_end(e, cur);
                if w == anchor && !path.is_empty() {
                    path.push(e);
                    for &a in path.iter() {
                        for &b in path.iter() {
                            together[a][b] = true;
                        }
                    }
                    path.pop();
                } else if w > anchor && !used_v[w] {
                    used_v[w] = true;
                    path.push(e);
                    dfs(g, anchor, w, used_v, path, together);
                    path.pop();
                    used_v[w] = false;
                }
            }
        }
        for anchor in 0..g.vertex_count() {
            let mut used_v = vec![false; g.vertex_count()];
            let mut path = Vec::new();
            dfs(g, anchor, anchor, &mut used_v, &mut path, &mut together);
        }
        // union-find over the co-cycle relation
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for a in 0..m {
            for b in 0..m {
                if together[a][b] {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let mut classes: std::collections::BTreeMap<usize, Vec<EdgeId>> = Default::default();
        for e in 0..m {
            let r = find(&mut parent, e);
            classes.entry(r).or_default().push(e);
        }
        let mut out: Vec<Vec<EdgeId>> = classes.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    #[test]
    fn blocks_match_bruteforce_on_random_graphs() {
        let mut rng = crate::rng::Rng::seeded(42);
        for _ in 0..120 {
            let n = rng.range(2, 10);
            let m = rng.range(0, 14);
            let mut edges = Vec::new();
            for _ in 0..m {
                let u = rng.below(n);
                let v = rng.below(n);
                if u != v {
                    edges.push((u, v));
                }
            }
            let g = Multigraph::new(n, edges).unwrap();
            let fast: Vec<Vec<EdgeId>> =
                biconnected_components(&g).into_iter().map(|b| b.edge_ids).collect();
            let slow = blocks_bruteforce(&g);
            assert_eq!(fast, slow, "graph: {:?}", g.edges());
        }
    }

    #[test]
    fn bridges_agree_across_perfect_matchings() {
        // two 4-cycles joined by a bridge: the bridge lies in no cycle, so it
        // is in m iff in n for any two perfect matchings
        let g = Multigraph::new(
            8,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
            ],
        )
        .unwrap();
        let ms = crate::oracle::enumerate_perfect_matchings(&g, 100).unwrap();
        assert!(ms.len() >= 2);
        let blocks = biconnected_components(&g);
        let bridges: Vec<EdgeId> = blocks
            .iter()
            .filter(|b| b.edge_ids.len() == 1)
            .map(|b| b.edge_ids[0])
            .collect();
        assert_eq!(bridges, vec![4]);
        for a in &ms {
            for b in &ms {
                for &e in &bridges {
                    assert_eq!(a.contains(e), b.contains(e));
                }
            }
        }
    }

    #[test]
    fn subgraph_roundtrip() {
        let g = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let sub = SubGraph::induce(&g, &[3, 4, 5]);
        assert_eq!(sub.vertex_map, vec![2, 3, 4]);
        assert_eq!(sub.graph.vertex_count(), 3);
        assert_eq!(sub.restrict_edges(&[0, 3, 5]), vec![0, 2]);
        assert_eq!(sub.to_parent_edges(&[0, 2]), vec![3, 5]);
    }
}
