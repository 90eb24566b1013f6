//! The weak dual tree of an outerplane embedding, with edge lengths measuring
//! the disagreement of two perfect matchings.
//!
//! Nodes are the inner faces plus one mirror copy of every face touching the
//! outer cycle. A chord shared by two faces contributes a dual edge of length
//! `|m cap {e}| + |n cap {e}|`; a mirror edge has length 1 when the face's
//! outer boundary lies inside `m` triangle `n` and 0 otherwise. The gap of
//! the instance is the length diameter of this tree, and a connected set of
//! inner faces corresponds to a primal cycle through cut-cycle duality.

use crate::embedding::{enumerate_faces, FaceSet, OuterplaneEmbedding};
use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeId, PerfectMatching};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualEdgeKind {
    /// Dual of a chord; carries the chord's edge id.
    Chord(EdgeId),
    /// Mirror edge of an outer-touching face; carries the face index.
    Mirror(usize),
}

#[derive(Debug, Clone)]
pub struct DualEdge {
    pub a: usize,
    pub b: usize,
    pub len: u64,
    pub kind: DualEdgeKind,
}

/// Dual tree: inner-face nodes `0..inner_count`, then mirror leaves.
#[derive(Debug, Clone)]
pub struct DualTree {
    faces: FaceSet,
    inner_count: usize,
    mirror_faces: Vec<usize>,
    edges: Vec<DualEdge>,
    adj: Vec<Vec<usize>>,
}

impl DualTree {
    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn inner_count(&self) -> usize {
        self.inner_count
    }

    pub fn node_count(&self) -> usize {
        self.inner_count + self.mirror_faces.len()
    }

    pub fn is_mirror(&self, node: usize) -> bool {
        node >= self.inner_count
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    pub fn incident(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    /// Chord-degree of an inner face (mirror edges not counted).
    pub fn chord_degree(&self, face: usize) -> usize {
        self.adj[face]
            .iter()
            .filter(|&&i| matches!(self.edges[i].kind, DualEdgeKind::Chord(_)))
            .count()
    }

    /// Length of the mirror edge at `face`, if the face touches the outer cycle.
    pub fn mirror_len(&self, face: usize) -> Option<u64> {
        self.adj[face].iter().find_map(|&i| match self.edges[i].kind {
            DualEdgeKind::Mirror(f) if f == face => Some(self.edges[i].len),
            _ => None,
        })
    }

    /// Path lengths from `from` to every node.
    pub fn distances(&self, from: usize) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.node_count()];
        dist[from] = 0;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &i in &self.adj[v] {
                let e = &self.edges[i];
                let w = if e.a == v { e.b } else { e.a };
                if dist[w] == u64::MAX {
                    dist[w] = dist[v] + e.len;
                    stack.push(w);
                }
            }
        }
        dist
    }
}

/// How chord duals are weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ChordLengths {
    /// `|m cap {e}| + |n cap {e}|`: a chord in both matchings costs 2. This
    /// is the weighting the decomposition DP minimizes over.
    Matched,
    /// 1 only where the matchings disagree. Coincides with `Matched` when no
    /// chord lies in both matchings, and measures the remaining flip work of
    /// intermediate matchings that have already picked up target chords.
    Difference,
}

/// Builds the dual tree of `emb` with lengths induced by `m` and `n`.
pub fn build_dual(
    emb: &OuterplaneEmbedding,
    m: &PerfectMatching,
    n: &PerfectMatching,
) -> Result<DualTree> {
    build_dual_with(emb, m, n, ChordLengths::Matched)
}

pub(crate) fn build_dual_with(
    emb: &OuterplaneEmbedding,
    m: &PerfectMatching,
    n: &PerfectMatching,
    mode: ChordLengths,
) -> Result<DualTree> {
    let g = emb.graph();
    let faces = enumerate_faces(emb);
    let inner_count = faces.len();

    // locate the two faces of every chord
    let mut chord_faces: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (fi, face) in faces.faces.iter().enumerate() {
        for &e in &face.boundary {
            if !emb.is_outer_edge(e) {
                chord_faces[e].push(fi);
            }
        }
    }

    let mut edges = Vec::new();
    for &c in emb.chord_ids() {
        let fs = &chord_faces[c];
        if fs.len() != 2 {
            return Err(Error::Internal(format!(
                "chord {c} lies on {} faces instead of 2",
                fs.len()
            )));
        }
        let len = match mode {
            ChordLengths::Matched => (m.contains(c) as u64) + (n.contains(c) as u64),
            ChordLengths::Difference => (m.contains(c) != n.contains(c)) as u64,
        };
        edges.push(DualEdge { a: fs[0], b: fs[1], len, kind: DualEdgeKind::Chord(c) });
    }

    let in_diff = |e: EdgeId| m.contains(e) != n.contains(e);
    let mut mirror_faces = Vec::new();
    for (fi, face) in faces.faces.iter().enumerate() {
        if face.outer_part.is_empty() {
            continue;
        }
        // all outer-boundary paths of one face agree on membership in m triangle n
        let first = in_diff(face.outer_part[0]);
        if face.outer_part.iter().any(|&e| in_diff(e) != first) {
            return Err(Error::Internal(format!(
                "face {fi} has outer edges both inside and outside the symmetric difference"
            )));
        }
        let node = inner_count + mirror_faces.len();
        mirror_faces.push(fi);
        edges.push(DualEdge {
            a: fi,
            b: node,
            len: first as u64,
            kind: DualEdgeKind::Mirror(fi),
        });
    }

    let node_count = inner_count + mirror_faces.len();
    if edges.len() + 1 != node_count {
        return Err(Error::Internal("dual graph is not a tree".into()));
    }
    let mut adj = vec![Vec::new(); node_count];
    for (i, e) in edges.iter().enumerate() {
        adj[e.a].push(i);
        adj[e.b].push(i);
    }
    let dual = DualTree { faces, inner_count, mirror_faces, edges, adj };
    if dual.distances(0).contains(&u64::MAX) {
        return Err(Error::Internal("dual graph is disconnected".into()));
    }
    Ok(dual)
}

/// The gap under disagreement lengths: chords count 1 only where the two
/// matchings differ. Equals `gap(build_dual(..))` whenever no chord lies in
/// both matchings; this is the measure the flip loop drives to zero.
pub fn difference_gap(
    emb: &OuterplaneEmbedding,
    m: &PerfectMatching,
    n: &PerfectMatching,
) -> Result<u64> {
    gap(&build_dual_with(emb, m, n, ChordLengths::Difference)?)
}

/// The gap: the length diameter of the dual tree, by double sweep.
/// Rejects the degenerate single-inner-face dual (chordless cycle); callers
/// must special-case that upstream.
pub fn gap(dual: &DualTree) -> Result<u64> {
    if dual.inner_count() < 2 {
        return Err(Error::Degenerate(
            "gap is undefined for a single-inner-face dual (chordless cycle)".into(),
        ));
    }
    let d0 = dual.distances(0);
    let far = (0..dual.node_count()).max_by_key(|&v| (d0[v], usize::MAX - v)).unwrap();
    let d1 = dual.distances(far);
    Ok(*d1.iter().max().unwrap())
}

/// Maps a nonempty connected set of inner faces to the primal cycle bounding
/// their union: the symmetric difference of the face boundaries, equivalently
/// the primal edges dual to the cut leaving `x_star` (mirror edges contribute
/// their face's outer edges).
pub fn cut_to_cycle(
    emb: &OuterplaneEmbedding,
    dual: &DualTree,
    x_star: &[usize],
) -> Result<Cycle> {
    if x_star.is_empty() {
        return Err(Error::Input("x_star is empty".into()));
    }
    let mut in_set = vec![false; dual.inner_count()];
    for &f in x_star {
        if f >= dual.inner_count() {
            return Err(Error::Input(format!("{f} is not an inner face node")));
        }
        if in_set[f] {
            return Err(Error::Input(format!("face {f} listed twice")));
        }
        in_set[f] = true;
    }
    // connectivity within the inner part
    let mut seen = vec![false; dual.inner_count()];
    let mut stack = vec![x_star[0]];
    seen[x_star[0]] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &i in dual.incident(v) {
            if let DualEdgeKind::Chord(_) = dual.edges()[i].kind {
                let e = &dual.edges()[i];
                let w = if e.a == v { e.b } else { e.a };
                if in_set[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
    }
    if reached != x_star.len() {
        return Err(Error::Input("x_star does not induce a connected subtree".into()));
    }

    let g = emb.graph();
    let mut odd = vec![false; g.edge_count()];
    for &f in x_star {
        for &e in &dual.faces().faces[f].boundary {
            odd[e] = !odd[e];
        }
    }
    let ids: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| odd[e]).collect();
    Cycle::new(g, ids)
        .map_err(|e| Error::Internal(format!("cut does not bound a single simple cycle: {e}")))
}
