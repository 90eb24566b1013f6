//! Min-sum diameter decomposition on trees: delete a subset of the deletable
//! edges minimizing the total length-diameter of the resulting components.
//!
//! The solver is a bottom-up dynamic program over rooted subtrees. A state of
//! a subtree records, for one choice of deleted edges, the depth `x` of the
//! component containing the subtree root, its diameter `y`, and the summed
//! diameter `z` of the components already cut off. Merging a child either
//! keeps the connecting edge (depths and diameters combine across it) or,
//! when the edge is deletable, deletes it and pays the child frontier's
//! diameter. States are kept sparse and Pareto-pruned: every combination rule
//! and the final objective are monotone in (x, y, z), so dominated states
//! never appear in an optimal completion and pruning preserves exact optima.
//!
//! `solve_msdd` additionally reconstructs the lexicographically smallest
//! optimal deleted set by a greedy sequence of constrained re-solves.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};

#[derive(Debug, Clone)]
pub struct MsddInstance {
    tree: Multigraph,
    deletable: Vec<EdgeId>,
    lengths: Vec<u64>,
}

impl MsddInstance {
    pub fn new(tree: Multigraph, mut deletable: Vec<EdgeId>, lengths: Vec<u64>) -> Result<Self> {
        if lengths.len() != tree.edge_count() {
            return Err(Error::Input(format!(
                "{} lengths for {} edges",
                lengths.len(),
                tree.edge_count()
            )));
        }
        // every DP value is bounded by the total length; keep headroom so
        // additions cannot wrap
        let mut total: u64 = 0;
        for &len in &lengths {
            total = total
                .checked_add(len)
                .filter(|&t| t <= u64::MAX / 4)
                .ok_or_else(|| Error::Input("total edge length overflows".into()))?;
        }
        if tree.vertex_count() == 0 {
            return Err(Error::Input("empty tree".into()));
        }
        if tree.edge_count() + 1 != tree.vertex_count() {
            return Err(Error::Input("graph is not a tree (wrong edge count)".into()));
        }
        let all = vec![true; tree.edge_count()];
        if tree_distances(&tree, &all, &lengths, 0).contains(&u64::MAX) {
            return Err(Error::Input("graph is not a tree (disconnected)".into()));
        }
        deletable.sort_unstable();
        deletable.dedup();
        if deletable.iter().any(|&e| e >= tree.edge_count()) {
            return Err(Error::Input("deletable edge id out of range".into()));
        }
        Ok(MsddInstance { tree, deletable, lengths })
    }

    pub fn tree(&self) -> &Multigraph {
        &self.tree
    }

    pub fn deletable(&self) -> &[EdgeId] {
        &self.deletable
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn total_length(&self) -> u64 {
        self.lengths.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsddSolution {
    pub deleted: Vec<EdgeId>,
    pub objective: u64,
}

/// Which (x, y) value domain the DP may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainMode {
    /// All integers up to the total length.
    Full,
    /// Only realizable values: the set of pairwise tree distances.
    Restricted,
}

/// Distances from `from`, walking only active edges. `u64::MAX` = unreachable.
fn tree_distances(g: &Multigraph, active: &[bool], lengths: &[u64], from: VertexId) -> Vec<u64> {
    let mut dist = vec![u64::MAX; g.vertex_count()];
    dist[from] = 0;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &e in g.incident(v) {
            if !active[e] {
                continue;
            }
            let w = g.other_end(e, v);
            if dist[w] == u64::MAX {
                dist[w] = dist[v] + lengths[e];
                stack.push(w);
            }
        }
    }
    dist
}

/// Weighted diameter of the subtree induced by `component`, by double sweep.
pub fn component_diameter(tree: &Multigraph, lengths: &[u64], component: &[VertexId]) -> u64 {
    debug_assert!(!component.is_empty());
    let mut member = vec![false; tree.vertex_count()];
    for &v in component {
        member[v] = true;
    }
    let active: Vec<bool> = (0..tree.edge_count())
        .map(|e| {
            let (u, v) = tree.endpoints(e);
            member[u] && member[v]
        })
        .collect();
    let d0 = tree_distances(tree, &active, lengths, component[0]);
    debug_assert!(component.iter().all(|&v| d0[v] != u64::MAX), "component must induce a subtree");
    let far = component.iter().copied().max_by_key(|&v| d0[v]).unwrap();
    let d1 = tree_distances(tree, &active, lengths, far);
    component.iter().map(|&v| d1[v]).max().unwrap()
}

/// Sum of component diameters of the forest given by `active`.
fn forest_objective(g: &Multigraph, active: &[bool], lengths: &[u64]) -> u64 {
    let mut seen = vec![false; g.vertex_count()];
    let mut total = 0u64;
    for root in 0..g.vertex_count() {
        if seen[root] {
            continue;
        }
        let d = tree_distances(g, active, lengths, root);
        let mut comp = Vec::new();
        for v in 0..g.vertex_count() {
            if d[v] != u64::MAX {
                seen[v] = true;
                comp.push(v);
            }
        }
        let far = comp.iter().copied().max_by_key(|&v| d[v]).unwrap();
        let d1 = tree_distances(g, active, lengths, far);
        total += comp.iter().map(|&v| d1[v]).max().unwrap();
    }
    total
}

/// The set of all pairwise tree distances; the restricted DP domain.
pub fn value_domain(inst: &MsddInstance) -> Vec<u64> {
    let g = inst.tree();
    let active = vec![true; g.edge_count()];
    let mut values = Vec::new();
    for v in 0..g.vertex_count() {
        values.extend(tree_distances(g, &active, inst.lengths(), v));
    }
    values.sort_unstable();
    values.dedup();
    values
}

/// DP state for one rooted subtree: depth from the root within the frontier,
/// frontier diameter, and summed diameter of the parts already cut off.
type State = (u64, u64, u64);

#[derive(Debug, Default, Clone)]
struct DpStats {
    combine_pairs: u64,
}

fn pareto_prune(mut states: Vec<State>) -> Vec<State> {
    states.sort_unstable();
    states.dedup();
    let mut kept: Vec<State> = Vec::new();
    'candidates: for s in states {
        for k in &kept {
            if k.0 <= s.0 && k.1 <= s.1 && k.2 <= s.2 {
                continue 'candidates;
            }
        }
        kept.push(s);
    }
    kept
}

fn in_domain(domain: Option<&[u64]>, value: u64) -> bool {
    match domain {
        None => true,
        Some(d) => d.binary_search(&value).is_ok(),
    }
}

/// States of the full subtree rooted at `root` (children merged in ascending
/// vertex-id order), over the forest restricted to `active` edges.
fn subtree_states(
    g: &Multigraph,
    active: &[bool],
    deletable: &[bool],
    lengths: &[u64],
    domain: Option<&[u64]>,
    root: VertexId,
    stats: &mut DpStats,
) -> Vec<State> {
    // parent structure of the component containing root
    let mut parent_edge = vec![usize::MAX; g.vertex_count()];
    let mut order = vec![root];
    let mut visited = vec![false; g.vertex_count()];
    visited[root] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &e in g.incident(v) {
            if !active[e] {
                continue;
            }
            let w = g.other_end(e, v);
            if !visited[w] {
                visited[w] = true;
                parent_edge[w] = e;
                order.push(w);
            }
        }
    }
    let mut children: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); g.vertex_count()];
    for &v in order.iter().skip(1) {
        let e = parent_edge[v];
        let p = g.other_end(e, v);
        children[p].push((v, e));
    }
    for list in &mut children {
        list.sort_unstable();
    }

    let mut table: Vec<Vec<State>> = vec![Vec::new(); g.vertex_count()];
    for &v in order.iter().rev() {
        // T_v^0: the single vertex v
        let mut states: Vec<State> = vec![(0, 0, 0)];
        for &(w, e) in &children[v] {
            let child = std::mem::take(&mut table[w]);
            let wlen = lengths[e];
            let mut next = Vec::with_capacity(states.len() * child.len());
            // keep the edge: frontiers merge across it
            for &(xa, ya, za) in &states {
                for &(xb, yb, zb) in &child {
                    stats.combine_pairs += 1;
                    let x = xa.max(xb + wlen);
                    let y = ya.max(yb).max(xa + wlen + xb);
                    if in_domain(domain, x) && in_domain(domain, y) {
                        next.push((x, y, za + zb));
                    }
                }
            }
            // delete the edge: the child frontier becomes a finished component
            if deletable[e] {
                let best_cut = child.iter().map(|&(_, yb, zb)| yb + zb).min().unwrap();
                for &(xa, ya, za) in &states {
                    stats.combine_pairs += 1;
                    next.push((xa, ya, za + best_cut));
                }
            }
            states = pareto_prune(next);
        }
        table[v] = states;
    }
    std::mem::take(&mut table[root])
}

/// Minimum total diameter over all choices of deletable-edge subsets, for the
/// forest on `active` edges.
fn dp_objective(
    g: &Multigraph,
    active: &[bool],
    deletable: &[bool],
    lengths: &[u64],
    domain: Option<&[u64]>,
    stats: &mut DpStats,
) -> u64 {
    let mut seen = vec![false; g.vertex_count()];
    let mut total = 0u64;
    for root in 0..g.vertex_count() {
        if seen[root] {
            continue;
        }
        let d = tree_distances(g, active, lengths, root);
        for v in 0..g.vertex_count() {
            if d[v] != u64::MAX {
                seen[v] = true;
            }
        }
        let states = subtree_states(g, active, deletable, lengths, domain, root, stats);
        total += states.iter().map(|&(_, y, z)| y + z).min().unwrap();
    }
    total
}

pub fn solve_msdd(inst: &MsddInstance) -> MsddSolution {
    solve_msdd_with_domain(inst, DomainMode::Full)
}

/// The optimal objective without reconstructing the deleted set.
pub(crate) fn objective_only(inst: &MsddInstance, mode: DomainMode) -> u64 {
    let g = inst.tree();
    let domain_values;
    let domain = match mode {
        DomainMode::Full => None,
        DomainMode::Restricted => {
            domain_values = value_domain(inst);
            Some(domain_values.as_slice())
        }
    };
    let active = vec![true; g.edge_count()];
    let mut allowed = vec![false; g.edge_count()];
    for &e in inst.deletable() {
        allowed[e] = true;
    }
    dp_objective(g, &active, &allowed, inst.lengths(), domain, &mut DpStats::default())
}

/// Exact solve with reconstruction. Among all optimal deleted sets, returns
/// the lexicographically smallest (compared as ascending id sequences), found
/// by greedily committing the smallest id that still admits an optimal
/// completion; each test is one constrained DP run.
pub fn solve_msdd_with_domain(inst: &MsddInstance, mode: DomainMode) -> MsddSolution {
    let g = inst.tree();
    let domain_values;
    let domain = match mode {
        DomainMode::Full => None,
        DomainMode::Restricted => {
            domain_values = value_domain(inst);
            Some(domain_values.as_slice())
        }
    };
    let mut stats = DpStats::default();
    let mut active = vec![true; g.edge_count()];
    let mut allowed = vec![false; g.edge_count()];
    for &e in inst.deletable() {
        allowed[e] = true;
    }
    let objective = dp_objective(g, &active, &allowed, inst.lengths(), domain, &mut stats);

    let mut deleted: Vec<EdgeId> = Vec::new();
    let mut next_min = 0usize;
    loop {
        if forest_objective(g, &active, inst.lengths()) == objective {
            break;
        }
        let mut extended = false;
        for &e in inst.deletable().iter().filter(|&&e| e >= next_min) {
            active[e] = false;
            let rest: Vec<bool> = (0..g.edge_count())
                .map(|i| allowed[i] && active[i] && i > e)
                .collect();
            let with_e = dp_objective(g, &active, &rest, inst.lengths(), domain, &mut stats);
            if with_e == objective {
                deleted.push(e);
                next_min = e + 1;
                extended = true;
                break;
            }
            active[e] = true;
        }
        assert!(extended, "an optimal completion must exist below the committed prefix");
    }
    MsddSolution { deleted, objective }
}

/// Exhaustive minimum over all deletable subsets. Guarded to small sets.
/// Ties break toward the lexicographically smallest deleted set, matching
/// `solve_msdd`.
pub fn solve_msdd_bruteforce(inst: &MsddInstance) -> Result<MsddSolution> {
    let k = inst.deletable().len();
    if k > 20 {
        return Err(Error::Size(format!("{k} deletable edges exceed the brute-force guard of 20")));
    }
    let g = inst.tree();
    let mut best: Option<MsddSolution> = None;
    for mask in 0u32..(1 << k) {
        let mut active = vec![true; g.edge_count()];
        let mut deleted = Vec::new();
        for (bit, &e) in inst.deletable().iter().enumerate() {
            if mask & (1 << bit) != 0 {
                active[e] = false;
                deleted.push(e);
            }
        }
        let objective = forest_objective(g, &active, inst.lengths());
        let better = match &best {
            None => true,
            Some(b) => objective < b.objective || (objective == b.objective && deleted < b.deleted),
        };
        if better {
            best = Some(MsddSolution { deleted, objective });
        }
    }
    Ok(best.expect("at least the empty subset is evaluated"))
}
