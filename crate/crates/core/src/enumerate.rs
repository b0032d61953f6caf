//! Enumeration of decorated graphs up to isomorphism.
//!
//! Spine-mode graphs of a given rank come from the rose by repeated single-edge
//! blow-ups; only blow-ups at the basepoint raise the degree, so bounding the
//! degree bounds the search. Generalized-mode graphs come from a single vertex
//! by adding edges. Decorations (sets of disjoint embedded cycles) are chosen
//! afterwards, one undecorated class at a time, which keeps memory small.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_labeling, CanonicalForm};
use crate::graph::{DecoratedGraph, DecorationMode, HalfEdge, ValencyMode, VertexId};

/// Undistinguished rank `n`, number of cycles `m`, weighted-degree cap `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl Parameters {
    pub fn new(n: usize, m: usize, k: usize) -> Self {
        Parameters { n, m, k }
    }

    /// The largest possible weighted degree, `2n + m - 1`.
    pub fn max_weighted_degree(&self) -> i64 {
        2 * self.n as i64 + self.m as i64 - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    pub mode: ValencyMode,
    pub basepoint_undistinguished: bool,
    pub decoration: DecorationMode,
    /// required in generalized mode, where nothing else bounds the size
    pub max_edges: Option<usize>,
}

impl Constraints {
    pub fn spine(decoration: DecorationMode) -> Self {
        Constraints { mode: ValencyMode::Spine, basepoint_undistinguished: true, decoration, max_edges: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_classes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_classes: 5_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("budget of {limit} classes exceeded; {found} classes found, search complete through size {completed}")]
    BudgetExceeded { limit: usize, found: usize, completed: usize },
    #[error("generalized-mode enumeration needs an edge bound")]
    MissingEdgeBound,
}

struct Dedup {
    seen: HashSet<CanonicalForm>,
    limit: usize,
}

impl Dedup {
    fn new(budget: &Budget) -> Self {
        Dedup { seen: HashSet::new(), limit: budget.max_classes }
    }

    fn insert(&mut self, g: &DecoratedGraph, completed: usize) -> Result<Option<DecoratedGraph>, EnumerationError> {
        let lab = canonical_labeling(g, DecorationMode::UnlabeledUnoriented, None);
        if self.seen.contains(&lab.form) {
            return Ok(None);
        }
        if self.seen.len() >= self.limit {
            return Err(EnumerationError::BudgetExceeded {
                limit: self.limit,
                found: self.seen.len(),
                completed,
            });
        }
        self.seen.insert(lab.form);
        Ok(Some(lab.graph))
    }
}

/// All subsets of `items` with size in `lo..=hi`, as bitmasks over positions.
fn subset_masks(len: usize, lo: usize, hi: usize) -> impl Iterator<Item = u64> {
    (0u64..(1u64 << len)).filter(move |m| {
        let c = m.count_ones() as usize;
        c >= lo && c <= hi
    })
}

/// Half-edge sets that may move to a new vertex in a spine-preserving
/// single-edge blow-up at `v`. Away from the basepoint the block containing
/// the least half-edge stays, so each unordered split appears once.
pub fn movable_blocks(g: &DecoratedGraph, v: VertexId) -> Vec<Vec<HalfEdge>> {
    let hs = g.half_edges_at(v);
    let val = hs.len();
    let mut out = Vec::new();
    if v == g.basepoint() {
        if val < 3 {
            return out;
        }
        for mask in subset_masks(val, 2, val - 1) {
            out.push((0..val).filter(|&i| mask >> i & 1 == 1).map(|i| hs[i]).collect());
        }
    } else {
        if val < 4 {
            return out;
        }
        for mask in subset_masks(val, 2, val - 2) {
            if mask & 1 == 0 {
                out.push((0..val).filter(|&i| mask >> i & 1 == 1).map(|i| hs[i]).collect());
            }
        }
    }
    out
}

/// Undecorated spine-mode graphs of the given rank with degree at most
/// `max_degree`, one canonical representative per class, grouped by vertex count.
pub fn spine_skeletons(rank: usize, max_degree: i64, budget: &Budget) -> Result<Vec<DecoratedGraph>, EnumerationError> {
    if rank == 0 {
        return Ok(Vec::new());
    }
    let mut dedup = Dedup::new(budget);
    let root = dedup.insert(&DecoratedGraph::rose(rank, 0), 0)?.unwrap();
    let mut all = vec![root.clone()];
    let mut frontier = vec![root];
    let mut size = 1;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for v in 0..g.num_vertices() {
                for moved in movable_blocks(g, v) {
                    let child = g.split_vertex(v, &moved);
                    if child.degree() > max_degree {
                        continue;
                    }
                    if let Some(c) = dedup.insert(&child, size)? {
                        next.push(c);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
        size += 1;
    }
    Ok(all)
}

/// Undecorated connected basepointed multigraphs (loops and multi-edges allowed,
/// no valency constraint) with at most `max_edges` edges.
pub fn generalized_skeletons(max_edges: usize, budget: &Budget) -> Result<Vec<DecoratedGraph>, EnumerationError> {
    let mut dedup = Dedup::new(budget);
    let root = dedup.insert(&DecoratedGraph::from_parts(1, 0, Vec::new(), Vec::new()), 0)?.unwrap();
    let mut all = vec![root.clone()];
    let mut frontier = vec![root];
    for e in 0..max_edges {
        let mut next = Vec::new();
        for g in &frontier {
            let nv = g.num_vertices();
            let base = g.half_edge_vertices().to_vec();
            for u in 0..nv {
                let mut he = base.clone();
                he.push(u);
                he.push(nv);
                let child = DecoratedGraph::from_parts(nv + 1, g.basepoint(), he, Vec::new());
                if let Some(c) = dedup.insert(&child, e)? {
                    next.push(c);
                }
                for w in u..nv {
                    let mut he = base.clone();
                    he.push(u);
                    he.push(w);
                    let child = DecoratedGraph::from_parts(nv, g.basepoint(), he, Vec::new());
                    if let Some(c) = dedup.insert(&child, e)? {
                        next.push(c);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

/// Every embedded cycle of `g`, each once, as a departure half-edge sequence.
pub fn simple_cycles(g: &DecoratedGraph) -> Vec<Vec<HalfEdge>> {
    let mut out = Vec::new();
    for e in 0..g.num_edges() {
        if g.is_loop(e) {
            out.push(vec![2 * e]);
        }
    }
    let nv = g.num_vertices();
    let mut on_path = vec![false; nv];
    for s in 0..nv {
        let mut path: Vec<HalfEdge> = Vec::new();
        on_path[s] = true;
        extend_cycles(g, s, s, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

fn extend_cycles(
    g: &DecoratedGraph,
    start: VertexId,
    at: VertexId,
    path: &mut Vec<HalfEdge>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<HalfEdge>>,
) {
    for &h in g.half_edges_at(at) {
        let e = h / 2;
        if g.is_loop(e) || path.last().is_some_and(|&l| l / 2 == e) {
            continue;
        }
        let w = g.vertex_of(h ^ 1);
        if w == start && !path.is_empty() {
            if path[0] / 2 < e {
                let mut c = path.clone();
                c.push(h);
                out.push(c);
            }
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(h);
            extend_cycles(g, start, w, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// All ways to choose `m` pairwise disjoint embedded cycles of the undecorated
/// graph `g`, one canonical representative per isomorphism class in `mode`.
pub fn decorations(g: &DecoratedGraph, m: usize, mode: DecorationMode) -> Vec<DecoratedGraph> {
    let cycles = simple_cycles(g);
    let vsets: Vec<u64> = cycles
        .iter()
        .map(|c| c.iter().fold(0u64, |acc, &h| acc | 1u64 << g.vertex_of(h)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    choose_disjoint(&vsets, 0, 0, m, &mut chosen, &mut |sel| {
        let base: Vec<Vec<HalfEdge>> = sel.iter().map(|&i| cycles[i].clone()).collect();
        for deco in labelings(&base, mode) {
            let lab = canonical_labeling(&g.with_cycles(deco), mode, None);
            if seen.insert(lab.form) {
                out.push(lab.graph);
            }
        }
    });
    out
}

fn choose_disjoint(
    vsets: &[u64],
    from: usize,
    used: u64,
    m: usize,
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == m {
        f(chosen);
        return;
    }
    for i in from..vsets.len() {
        if vsets[i] & used == 0 {
            chosen.push(i);
            choose_disjoint(vsets, i + 1, used | vsets[i], m, chosen, f);
            chosen.pop();
        }
    }
}

/// In labeled mode: all orderings and orientations of the chosen cycles.
fn labelings(base: &[Vec<HalfEdge>], mode: DecorationMode) -> Vec<Vec<Vec<HalfEdge>>> {
    if mode == DecorationMode::UnlabeledUnoriented || base.is_empty() {
        return vec![base.to_vec()];
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..base.len()).collect();
    permutations(&mut perm, 0, &mut |p| {
        for flips in 0..(1u32 << base.len()) {
            out.push(
                p.iter()
                    .enumerate()
                    .map(|(slot, &i)| {
                        if flips >> slot & 1 == 1 {
                            DecoratedGraph::reversed_cycle(&base[i])
                        } else {
                            base[i].clone()
                        }
                    })
                    .collect(),
            );
        }
    });
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Whether a decorated graph meets the requested parameters and constraints.
pub fn admits(g: &DecoratedGraph, params: &Parameters, constraints: &Constraints) -> bool {
    g.num_cycles() == params.m
        && g.rank() == (params.n + params.m) as i64
        && (!constraints.basepoint_undistinguished || !g.basepoint_distinguished())
        && g.weighted_degree() <= params.k as i64
}

/// Visit every decorated class for the parameters, skeleton by skeleton.
pub fn for_each_graph(
    params: &Parameters,
    constraints: &Constraints,
    budget: &Budget,
    f: &mut dyn FnMut(DecoratedGraph),
) -> Result<(), EnumerationError> {
    let rank = params.n + params.m;
    let skeletons = match constraints.mode {
        ValencyMode::Spine => {
            // d_0 = d_w + c and c <= m
            let cap = params.k as i64 + params.m as i64;
            spine_skeletons(rank, cap, budget)?
        }
        ValencyMode::Generalized => {
            let max_edges = constraints.max_edges.ok_or(EnumerationError::MissingEdgeBound)?;
            generalized_skeletons(max_edges, budget)?
                .into_iter()
                .filter(|g| g.rank() == rank as i64)
                .collect()
        }
    };
    for s in &skeletons {
        for g in decorations(s, params.m, constraints.decoration) {
            if admits(&g, params, constraints) {
                f(g);
            }
        }
    }
    Ok(())
}

/// The complete list of classes for the parameters.
pub fn enumerate_graphs(
    params: &Parameters,
    constraints: &Constraints,
    budget: &Budget,
) -> Result<Vec<DecoratedGraph>, EnumerationError> {
    let mut out = Vec::new();
    for_each_graph(params, constraints, budget, &mut |g| out.push(g))?;
    if out.len() > budget.max_classes {
        return Err(EnumerationError::BudgetExceeded {
            limit: budget.max_classes,
            found: out.len(),
            completed: 0,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_of_theta() {
        let theta = DecoratedGraph::from_edges(2, 0, &[(0, 1), (0, 1), (0, 1)], &[]).unwrap();
        assert_eq!(simple_cycles(&theta).len(), 3);
    }

    #[test]
    fn cycles_of_k4() {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let k4 = DecoratedGraph::from_edges(4, 0, &edges, &[]).unwrap();
        // 4 triangles + 3 squares
        assert_eq!(simple_cycles(&k4).len(), 7);
    }

    #[test]
    fn rank_two_spine_skeletons() {
        // rose, theta based at a vertex, barbell-like graphs based at various points...
        let all = spine_skeletons(2, 2, &Budget::default()).unwrap();
        assert!(all.iter().all(|g| g.rank() == 2));
        assert!(all.iter().all(|g| crate::graph::validate(g, ValencyMode::Spine).is_valid()));
    }

    #[test]
    fn budget_is_reported() {
        let err = generalized_skeletons(5, &Budget { max_classes: 10 }).unwrap_err();
        assert!(matches!(err, EnumerationError::BudgetExceeded { limit: 10, .. }));
    }
}
