//! Outerplane embeddings of 2-connected multigraphs.
//!
//! An embedding is a cyclic outer vertex order plus the induced edge
//! partition: the outer cycle realizing consecutive pairs and the remaining
//! chords, which must be pairwise non-crossing with respect to the order.
//! That condition is exactly outerplanarity relative to the given order.

use crate::error::{Error, Result};
use crate::graph::{biconnected_components, EdgeId, Multigraph, VertexId};

#[derive(Debug, Clone)]
pub struct OuterplaneEmbedding {
    graph: Multigraph,
    outer_order: Vec<VertexId>,
    outer_edge_ids: Vec<EdgeId>,
    chord_ids: Vec<EdgeId>,
    position: Vec<usize>,
    outer_flag: Vec<bool>,
}

impl OuterplaneEmbedding {
    /// Builds the embedding induced by `outer_order`, or fails with a domain
    /// error if the order is not an outerplane boundary of `graph`.
    pub fn from_order(graph: Multigraph, outer_order: Vec<VertexId>) -> Result<Self> {
        match assemble(&graph, &outer_order)? {
            Some((outer_edge_ids, chord_ids)) => {
                Self::build(graph, outer_order, outer_edge_ids, chord_ids)
            }
            None => Err(Error::Domain("vertex order is not an outerplane boundary".into())),
        }
    }

    /// Builds the embedding with an explicitly pinned outer cycle. Needed
    /// when parallel edges make the outer choice ambiguous and the caller
    /// already knows which copy bounds the region.
    pub fn from_parts(
        graph: Multigraph,
        outer_order: Vec<VertexId>,
        outer_edge_ids: Vec<EdgeId>,
    ) -> Result<Self> {
        if outer_edge_ids.len() != outer_order.len() {
            return Err(Error::Input("one outer edge per consecutive pair required".into()));
        }
        let n = outer_order.len();
        let mut used = vec![false; graph.edge_count()];
        for (i, &e) in outer_edge_ids.iter().enumerate() {
            if e >= graph.edge_count() || used[e] {
                return Err(Error::Input(format!("bad or repeated outer edge id {e}")));
            }
            used[e] = true;
            let (a, b) = (outer_order[i], outer_order[(i + 1) % n]);
            let (u, v) = graph.endpoints(e);
            if (u, v) != (a, b) && (u, v) != (b, a) {
                return Err(Error::Input(format!(
                    "outer edge {e} does not join consecutive vertices {a} and {b}"
                )));
            }
        }
        let chord_ids: Vec<EdgeId> = (0..graph.edge_count()).filter(|&e| !used[e]).collect();
        match assemble_pinned(&graph, &outer_order, &outer_edge_ids, &chord_ids)? {
            true => Self::build(graph, outer_order, outer_edge_ids, chord_ids),
            false => Err(Error::Domain("pinned outer cycle has crossing chords".into())),
        }
    }

    fn build(
        graph: Multigraph,
        outer_order: Vec<VertexId>,
        outer_edge_ids: Vec<EdgeId>,
        chord_ids: Vec<EdgeId>,
    ) -> Result<Self> {
        let mut position = vec![usize::MAX; graph.vertex_count()];
        for (i, &v) in outer_order.iter().enumerate() {
            position[v] = i;
        }
        let mut outer_flag = vec![false; graph.edge_count()];
        for &e in &outer_edge_ids {
            outer_flag[e] = true;
        }
        Ok(OuterplaneEmbedding { graph, outer_order, outer_edge_ids, chord_ids, position, outer_flag })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.outer_order.len()
    }

    pub fn outer_order(&self) -> &[VertexId] {
        &self.outer_order
    }

    /// `outer_edge_ids[i]` joins `outer_order[i]` and `outer_order[i+1 mod n]`.
    pub fn outer_edge_ids(&self) -> &[EdgeId] {
        &self.outer_edge_ids
    }

    pub fn chord_ids(&self) -> &[EdgeId] {
        &self.chord_ids
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }

    pub fn is_outer_edge(&self, e: EdgeId) -> bool {
        self.outer_flag[e]
    }
}

fn is_two_connected(g: &Multigraph) -> bool {
    if g.vertex_count() < 2 {
        return false;
    }
    let blocks = biconnected_components(g);
    blocks.len() == 1
        && blocks[0].vertices.len() == g.vertex_count()
        && blocks[0].edge_ids.len() >= 2
}

/// Tries to realize `order` as the outer boundary: picks one edge per
/// consecutive pair (lowest unused id) and checks the remaining chords are
/// pairwise non-crossing. Returns `None` when either part fails.
fn assemble(g: &Multigraph, order: &[VertexId]) -> Result<Option<(Vec<EdgeId>, Vec<EdgeId>)>> {
    check_order(g, order)?;
    let n = g.vertex_count();
    let mut used = vec![false; g.edge_count()];
    let mut outer = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (order[i], order[(i + 1) % n]);
        let pick = g
            .incident(a)
            .iter()
            .copied()
            .find(|&e| !used[e] && g.other_end(e, a) == b);
        match pick {
            Some(e) => {
                used[e] = true;
                outer.push(e);
            }
            None => return Ok(None),
        }
    }
    let chords: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| !used[e]).collect();
    if chords_non_crossing(g, order, &chords) {
        Ok(Some((outer, chords)))
    } else {
        Ok(None)
    }
}

fn assemble_pinned(
    g: &Multigraph,
    order: &[VertexId],
    _outer: &[EdgeId],
    chords: &[EdgeId],
) -> Result<bool> {
    check_order(g, order)?;
    Ok(chords_non_crossing(g, order, chords))
}

fn check_order(g: &Multigraph, order: &[VertexId]) -> Result<()> {
    if !is_two_connected(g) {
        return Err(Error::Structure("graph is not 2-connected".into()));
    }
    let n = g.vertex_count();
    if order.len() != n {
        return Err(Error::Input(format!("outer order lists {} of {n} vertices", order.len())));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::Input("outer order is not a permutation of the vertices".into()));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Two chords cross iff their position pairs strictly interleave.
fn chords_non_crossing(g: &Multigraph, order: &[VertexId], chords: &[EdgeId]) -> bool {
    let mut position = vec![0usize; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let spans: Vec<(usize, usize)> = chords
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            let (pu, pv) = (position[u], position[v]);
            (pu.min(pv), pu.max(pv))
        })
        .collect();
    for i in 0..spans.len() {
        for j in (i + 1)..spans.len() {
            let (a1, b1) = spans[i];
            let (a2, b2) = spans[j];
            if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                return false;
            }
        }
    }
    true
}

/// True iff `outer_order` induces the claimed edge partition with
/// non-crossing chords. Errors if the graph is not 2-connected.
pub fn validate_embedding(g: &Multigraph, outer_order: &[VertexId]) -> Result<bool> {
    Ok(assemble(g, outer_order)?.is_some())
}

/// Reconstructs an outerplane embedding of a 2-connected graph, or fails if
/// the graph is not outerplanar.
///
/// The outer cycle of a 2-connected outerplanar graph is its unique
/// Hamiltonian cycle, so this backtracks over Hamiltonian cycles and checks
/// each candidate order. Exponential in the worst case; intended for
/// instances that do not carry an explicit order.
pub fn find_outer_order(g: &Multigraph) -> Result<OuterplaneEmbedding> {
    if !is_two_connected(g) {
        return Err(Error::Structure("graph is not 2-connected".into()));
    }
    let n = g.vertex_count();
    if n == 2 {
        // a parallel pair; the outer cycle is the two lowest-id copies
        return OuterplaneEmbedding::from_order(g.clone(), vec![0, 1])
            .map_err(|_| Error::Domain("graph is not outerplanar".into()));
    }

    // distinct neighbor lists, ascending
    let neighbors: Vec<Vec<VertexId>> = (0..n)
        .map(|v| {
            let mut ns: Vec<VertexId> =
                g.incident(v).iter().map(|&e| g.other_end(e, v)).collect();
            ns.sort_unstable();
            ns.dedup();
            ns
        })
        .collect();

    let mut order = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;

    fn search(
        g: &Multigraph,
        neighbors: &[Vec<VertexId>],
        order: &mut Vec<VertexId>,
        used: &mut Vec<bool>,
    ) -> Option<OuterplaneEmbedding> {
        let n = g.vertex_count();
        if order.len() == n {
            let last = *order.last().unwrap();
            if neighbors[last].binary_search(&0).is_ok() {
                // kill the reflected duplicate of each cycle
                if order[1] < order[n - 1] {
                    if let Ok(emb) = OuterplaneEmbedding::from_order(g.clone(), order.clone()) {
                        return Some(emb);
                    }
                }
            }
            return None;
        }
        let cur = *order.last().unwrap();
        for &w in &neighbors[cur] {
            if !used[w] {
                used[w] = true;
                order.push(w);
                if let Some(found) = search(g, neighbors, order, used) {
                    return Some(found);
                }
                order.pop();
                used[w] = false;
            }
        }
        None
    }

    search(g, &neighbors, &mut order, &mut used)
        .ok_or_else(|| Error::Domain("graph is not outerplanar".into()))
}

/// One inner face: its boundary edges and the subset lying on the outer cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<EdgeId>,
    pub outer_part: Vec<EdgeId>,
}

/// Inner faces of an embedding, in chord-closing order (the outer-closing
/// face last). For a 2-connected outerplane multigraph with parallel chords
/// counted individually there are exactly `chords + 1` of them.
#[derive(Debug, Clone)]
pub struct FaceSet {
    pub faces: Vec<Face>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Sweeps the outer positions with a stack: each chord closes the face of the
/// boundary items strictly inside its arc that are not yet consumed, plus
/// itself; the items left at the end form the last face. Nested parallel
/// chords are processed innermost-first by ascending id.
pub fn enumerate_faces(emb: &OuterplaneEmbedding) -> FaceSet {
    let g = emb.graph();
    let n = emb.n();

    // group chords by right endpoint position; innermost (largest left
    // position) first, parallel copies by ascending id
    let mut closings: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
    for &c in emb.chord_ids() {
        let (u, v) = g.endpoints(c);
        let (pu, pv) = (emb.position(u), emb.position(v));
        let (lo, hi) = (pu.min(pv), pu.max(pv));
        closings[hi].push((lo, c));
    }
    for list in &mut closings {
        list.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    }

    let mut stack: Vec<(EdgeId, usize)> = Vec::new();
    let mut faces = Vec::new();
    for p in 0..n {
        for &(lo, chord) in &closings[p] {
            let mut boundary = vec![chord];
            while stack.last().is_some_and(|&(_, start)| start >= lo) {
                boundary.push(stack.pop().unwrap().0);
            }
            faces.push(make_face(emb, boundary));
            stack.push((chord, lo));
        }
        stack.push((emb.outer_edge_ids()[p], p));
    }
    faces.push(make_face(emb, stack.into_iter().map(|(e, _)| e).collect()));
    debug_assert_eq!(faces.len(), emb.chord_ids().len() + 1);
    FaceSet { faces }
}

fn make_face(emb: &OuterplaneEmbedding, mut boundary: Vec<EdgeId>) -> Face {
    boundary.sort_unstable();
    let outer_part = boundary.iter().copied().filter(|&e| emb.is_outer_edge(e)).collect();
    Face { boundary, outer_part }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon_with_chord() -> Multigraph {
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        Multigraph::new(6, edges).unwrap()
    }

    #[test]
    fn validate_hexagon_orders() {
        let g = hexagon_with_chord();
        assert!(validate_embedding(&g, &[0, 1, 2, 3, 4, 5]).unwrap());

        // crossing chords 0-3 and 1-4
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        edges.push((1, 4));
        let g = Multigraph::new(6, edges).unwrap();
        assert!(!validate_embedding(&g, &[0, 1, 2, 3, 4, 5]).unwrap());

        // nested chords 0-2 and 0-3
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 2));
        edges.push((0, 3));
        let g = Multigraph::new(6, edges).unwrap();
        assert!(validate_embedding(&g, &[0, 1, 2, 3, 4, 5]).unwrap());
    }

    #[test]
    fn validate_rejects_non_2_connected() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(validate_embedding(&g, &[0, 1, 2]), Err(Error::Structure(_))));
    }

    #[test]
    fn find_order_hexagon() {
        let g = hexagon_with_chord();
        let emb = find_outer_order(&g).unwrap();
        // 0,1,2,3,4,5 up to rotation/reflection; our canonical search starts at 0
        assert_eq!(emb.outer_order(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(emb.chord_ids(), &[6]);
    }

    #[test]
    fn find_order_rejects_k4() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(find_outer_order(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn find_order_fan() {
        // fan: path 1..7 plus hub 0 joined to everything; outerplanar
        let n = 8;
        let mut edges = Vec::new();
        for i in 1..n - 1 {
            edges.push((i, i + 1));
        }
        for i in 1..n {
            edges.push((0, i));
        }
        let g = Multigraph::new(n, edges).unwrap();
        let emb = find_outer_order(&g).unwrap();
        assert!(validate_embedding(&g, emb.outer_order()).unwrap());
        assert_eq!(emb.chord_ids().len(), g.edge_count() - n);
    }

    #[test]
    fn faces_hexagon_one_chord() {
        let g = hexagon_with_chord();
        let emb = OuterplaneEmbedding::from_order(g, (0..6).collect()).unwrap();
        let fs = enumerate_faces(&emb);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs.faces[0].boundary, vec![0, 1, 2, 6]);
        assert_eq!(fs.faces[1].boundary, vec![3, 4, 5, 6]);
        assert_eq!(fs.faces[0].outer_part, vec![0, 1, 2]);
    }

    #[test]
    fn faces_parallel_chords() {
        // hexagon plus two parallel chords 0-3 (ids 6, 7): a 2-edge face between them
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        edges.push((0, 3));
        let g = Multigraph::new(6, edges).unwrap();
        let emb = OuterplaneEmbedding::from_order(g, (0..6).collect()).unwrap();
        let fs = enumerate_faces(&emb);
        assert_eq!(fs.len(), 3);
        assert_eq!(fs.faces[0].boundary, vec![0, 1, 2, 6]);
        assert_eq!(fs.faces[1].boundary, vec![6, 7]);
        assert_eq!(fs.faces[2].boundary, vec![3, 4, 5, 7]);
        assert!(fs.faces[1].outer_part.is_empty());
    }

    #[test]
    fn faces_octagon_two_chords() {
        let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.push((0, 3)); // id 8
        edges.push((4, 7)); // id 9
        let g = Multigraph::new(8, edges).unwrap();
        let emb = OuterplaneEmbedding::from_order(g, (0..8).collect()).unwrap();
        let fs = enumerate_faces(&emb);
        assert_eq!(fs.len(), 3);
        assert_eq!(fs.faces[0].boundary, vec![0, 1, 2, 8]);
        assert_eq!(fs.faces[1].boundary, vec![4, 5, 6, 9]);
        assert_eq!(fs.faces[2].boundary, vec![3, 7, 8, 9]);
    }

    #[test]
    fn every_edge_on_one_or_two_faces() {
        let g = hexagon_with_chord();
        let emb = OuterplaneEmbedding::from_order(g, (0..6).collect()).unwrap();
        let fs = enumerate_faces(&emb);
        for e in 0..emb.graph().edge_count() {
            let count = fs.faces.iter().filter(|f| f.boundary.contains(&e)).count();
            if emb.is_outer_edge(e) {
                assert_eq!(count, 1);
            } else {
                assert_eq!(count, 2);
            }
        }
    }
}
