//! Ground-truth brute-force solvers over the configuration graph: the graph
//! on all perfect matchings whose adjacency is "symmetric difference is a
//! single cycle" (the skeleton of the perfect matching polytope).
//!
//! Neighbors are generated lazily by enumerating alternating cycles of the
//! current matching, so the visit cap applies to reached states rather than
//! to the full configuration graph.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{flip, is_cycle_edge_set, Cycle, EdgeId, Multigraph, PerfectMatching,
                   ReconfigSequence, VertexId};

/// Default cap on matchings visited by the breadth-first search.
pub const DEFAULT_BFS_CAP: usize = 200_000;
/// Default guard on enumerated alternating cycles.
pub const DEFAULT_CYCLE_GUARD: usize = 1_000_000;

/// All perfect matchings, by backtracking on the lowest-id uncovered vertex.
/// Fails once more than `cap` matchings are found.
pub fn enumerate_perfect_matchings(g: &Multigraph, cap: usize) -> Result<Vec<PerfectMatching>> {
    fn recurse(
        g: &Multigraph,
        covered: &mut Vec<bool>,
        picked: &mut Vec<EdgeId>,
        out: &mut Vec<PerfectMatching>,
        cap: usize,
    ) -> Result<()> {
        let Some(v) = covered.iter().position(|&c| !c) else {
            if out.len() >= cap {
                return Err(Error::Size(format!("more than {cap} perfect matchings")));
            }
            out.push(PerfectMatching::new(g, picked.clone()).expect("cover built greedily"));
            return Ok(());
        };
        for &e in g.incident(v) {
            let w = g.other_end(e, v);
            if covered[w] {
                continue;
            }
            covered[v] = true;
            covered[w] = true;
            picked.push(e);
            recurse(g, covered, picked, out, cap)?;
            picked.pop();
            covered[v] = false;
            covered[w] = false;
        }
        Ok(())
    }

    if g.vertex_count() % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    recurse(g, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// All `m`-alternating cycles, each exactly once.
///
/// A cycle is anchored at its smallest vertex `v0` and traversed starting
/// along the matched edge of `v0`, so every other vertex is larger and the
/// closing edge is unmatched. Matched steps are forced; only unmatched steps
/// branch.
pub fn enumerate_alternating_cycles(
    g: &Multigraph,
    m: &PerfectMatching,
    guard: usize,
) -> Result<Vec<Cycle>> {
    struct Walk<'a> {
        g: &'a Multigraph,
        m: &'a PerfectMatching,
        anchor: VertexId,
        visited: Vec<bool>,
        path: Vec<EdgeId>,
        out: Vec<Cycle>,
        guard: usize,
    }

    impl Walk<'_> {
        fn unmatched_step(&mut self, cur: VertexId) -> Result<()> {
            for i in 0..self.g.incident(cur).len() {
                let e = self.g.incident(cur)[i];
                if self.m.contains(e) || Some(&e) == self.path.last() {
                    continue;
                }
                let w = self.g.other_end(e, cur);
                if w == self.anchor {
                    if self.out.len() >= self.guard {
                        return Err(Error::Size(format!(
                            "more than {} alternating cycles",
                            self.guard
                        )));
                    }
                    let mut ids = self.path.clone();
                    ids.push(e);
                    self.out.push(Cycle::new(self.g, ids).expect("walk builds a simple cycle"));
                } else if w > self.anchor && !self.visited[w] {
                    self.visited[w] = true;
                    self.path.push(e);
                    self.matched_step(w)?;
                    self.path.pop();
                    self.visited[w] = false;
                }
            }
            Ok(())
        }

        fn matched_step(&mut self, cur: VertexId) -> Result<()> {
            let e = self.m.edge_at(cur);
            let w = self.g.other_end(e, cur);
            if w > self.anchor && !self.visited[w] {
                self.visited[w] = true;
                self.path.push(e);
                self.unmatched_step(w)?;
                self.path.pop();
                self.visited[w] = false;
            }
            Ok(())
        }
    }

    let mut all = Vec::new();
    for anchor in 0..g.vertex_count() {
        let first = m.edge_at(anchor);
        let partner = g.other_end(first, anchor);
        if partner < anchor {
            continue;
        }
        let mut walk = Walk {
            g,
            m,
            anchor,
            visited: vec![false; g.vertex_count()],
            path: vec![first],
            out: Vec::new(),
            guard: guard.saturating_sub(all.len()),
        };
        walk.visited[anchor] = true;
        walk.visited[partner] = true;
        walk.unmatched_step(partner)?;
        all.extend(walk.out);
    }
    Ok(all)
}

/// Exact shortest reconfiguration by breadth-first search, with a witness
/// sequence. Reachability always holds, so this fails only on the cap.
pub fn bfs_shortest(
    g: &Multigraph,
    m: &PerfectMatching,
    n: &PerfectMatching,
    cap: usize,
) -> Result<(usize, ReconfigSequence)> {
    if m == n {
        return Ok((0, ReconfigSequence { matchings: vec![m.clone()], cycles: vec![] }));
    }
    let mut index: HashMap<Vec<EdgeId>, usize> = HashMap::new();
    let mut nodes: Vec<PerfectMatching> = vec![m.clone()];
    let mut parent: Vec<Option<(usize, Cycle)>> = vec![None];
    index.insert(m.ids().to_vec(), 0);

    let mut head = 0;
    while head < nodes.len() {
        let cur = nodes[head].clone();
        for c in enumerate_alternating_cycles(g, &cur, DEFAULT_CYCLE_GUARD)? {
            let next = flip(g, &cur, &c).expect("enumerated cycles are alternating");
            if index.contains_key(next.ids()) {
                continue;
            }
            if nodes.len() >= cap {
                return Err(Error::Size(format!("more than {cap} matchings visited")));
            }
            index.insert(next.ids().to_vec(), nodes.len());
            nodes.push(next.clone());
            parent.push(Some((head, c.clone())));
            if &next == n {
                // unwind the witness
                let mut rev_cycles = Vec::new();
                let mut at = nodes.len() - 1;
                let mut rev_matchings = vec![nodes[at].clone()];
                while let Some((p, c)) = &parent[at] {
                    rev_cycles.push(c.clone());
                    rev_matchings.push(nodes[*p].clone());
                    at = *p;
                }
                rev_cycles.reverse();
                rev_matchings.reverse();
                let seq = ReconfigSequence { matchings: rev_matchings, cycles: rev_cycles };
                let len = seq.len();
                return Ok((len, seq));
            }
        }
        head += 1;
    }
    Err(Error::Internal("target matching unreachable; inputs are inconsistent".into()))
}

/// Whether the two matchings are at flip distance at most two: equal, one
/// flip apart, or joined through a common neighbor. The common-neighbor test
/// enumerates `m`-alternating cycles and checks whether `(m triangle C)
/// triangle n` is a single cycle, avoiding full matching enumeration.
pub fn t_star_at_most_two(g: &Multigraph, m: &PerfectMatching, n: &PerfectMatching) -> Result<bool> {
    let start_diff = edge_set_difference(m.ids(), n.ids());
    if start_diff.is_empty() || is_cycle_edge_set(g, &start_diff) {
        return Ok(true);
    }
    for c in enumerate_alternating_cycles(g, m, DEFAULT_CYCLE_GUARD)? {
        let mid = flip(g, m, &c).expect("enumerated cycles are alternating");
        let diff = edge_set_difference(mid.ids(), n.ids());
        if diff.is_empty() || is_cycle_edge_set(g, &diff) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn edge_set_difference(a: &[EdgeId], b: &[EdgeId]) -> Vec<EdgeId> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) if x < y => {
                out.push(x);
                i += 1;
            }
            (Some(_), Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
