//! Forests as edge bitsets: admissibility, blow-downs, and the good/bad
//! classification by level, arcs and change in base-vertex count.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DecoratedGraph, EdgeId, VertexId, UNREACHABLE};
use crate::morse::{base_data, levels, BaseData};

/// A set of edges of a host graph with at most 64 edges.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub fn empty() -> Self {
        EdgeSet(0)
    }

    pub fn single(e: EdgeId) -> Self {
        EdgeSet(1 << e)
    }

    pub fn from_edges(edges: &[EdgeId]) -> Self {
        EdgeSet(edges.iter().fold(0, |acc, &e| acc | 1 << e))
    }

    pub fn contains(self, e: EdgeId) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn with(self, e: EdgeId) -> Self {
        EdgeSet(self.0 | 1 << e)
    }

    pub fn without(self, e: EdgeId) -> Self {
        EdgeSet(self.0 & !(1 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn iter(self) -> impl Iterator<Item = EdgeId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    pub fn to_vec(self) -> Vec<EdgeId> {
        self.iter().collect()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub type Forest = EdgeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("edge {edge} closes a cycle, so the edge set is not a forest")]
    NotAForest { edge: EdgeId },
    #[error("forest is not admissible")]
    Inadmissible,
    #[error("forest is empty")]
    Empty,
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("graph has {0} edges; forests support at most 64")]
    TooManyEdges(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Good,
    Bad,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ForestClassification {
    pub level: usize,
    pub arced: bool,
    pub delta_m: i64,
    pub status: Status,
}

impl ForestClassification {
    pub fn is_good(&self) -> bool {
        self.status == Status::Good
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn check_edges(g: &DecoratedGraph, f: Forest) -> Result<(), ForestError> {
    if g.num_edges() > 64 {
        return Err(ForestError::TooManyEdges(g.num_edges()));
    }
    if let Some(e) = f.iter().find(|&e| e >= g.num_edges()) {
        return Err(ForestError::UnknownEdge(e));
    }
    Ok(())
}

/// Component root of every vertex after joining along the edges of `f`.
pub fn components(g: &DecoratedGraph, f: Forest) -> Result<Vec<usize>, ForestError> {
    check_edges(g, f)?;
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    for e in f.iter() {
        let (a, b) = g.edge_ends(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(ForestError::NotAForest { edge: e });
        }
        parent[ra.max(rb)] = ra.min(rb);
    }
    Ok((0..g.num_vertices()).map(|v| find(&mut parent, v)).collect())
}

fn admissible_given(g: &DecoratedGraph, f: Forest, comp: &[usize]) -> bool {
    let nv = g.num_vertices();
    // per tree root: which cycle it meets, vertices of that cycle, cycle edges in f
    let mut met: Vec<Option<usize>> = vec![None; nv];
    let mut verts = vec![0i64; nv];
    let mut edges = vec![0i64; nv];
    let mut in_tree = vec![false; nv];
    for e in f.iter() {
        let (a, _) = g.edge_ends(e);
        in_tree[comp[a]] = true;
    }
    for (ci, cycle) in g.cycles().iter().enumerate() {
        for &h in cycle {
            let v = g.vertex_of(h);
            let r = comp[v];
            if !in_tree[r] {
                continue;
            }
            match met[r] {
                Some(c) if c != ci => return false,
                _ => met[r] = Some(ci),
            }
            verts[r] += 1;
            if f.contains(h / 2) {
                edges[r] += 1;
            }
        }
    }
    (0..nv).all(|r| met[r].is_none() || verts[r] - edges[r] == 1)
}

/// Whether collapsing `f` keeps the cycles disjoint and embedded.
pub fn is_admissible(g: &DecoratedGraph, f: Forest) -> Result<bool, ForestError> {
    let comp = components(g, f)?;
    Ok(admissible_given(g, f, &comp))
}

/// The result of collapsing a forest.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: DecoratedGraph,
    /// old vertex -> new vertex
    pub vertex_map: Vec<VertexId>,
    /// old edge -> new edge, `None` for collapsed edges
    pub edge_map: Vec<Option<EdgeId>>,
}

impl Contraction {
    /// Image of an edge set that avoids the collapsed edges.
    pub fn image(&self, f: Forest) -> Forest {
        EdgeSet::from_edges(&f.iter().filter_map(|e| self.edge_map[e]).collect::<Vec<_>>())
    }
}

/// Collapse each tree of an admissible forest to a vertex.
pub fn blow_down(g: &DecoratedGraph, f: Forest) -> Result<Contraction, ForestError> {
    let comp = components(g, f)?;
    if !admissible_given(g, f, &comp) {
        return Err(ForestError::Inadmissible);
    }
    let nv = g.num_vertices();
    let mut new_id = vec![UNREACHABLE; nv];
    let mut count = 0;
    for v in 0..nv {
        if comp[v] == v {
            new_id[v] = count;
            count += 1;
        }
    }
    let vertex_map: Vec<usize> = (0..nv).map(|v| new_id[comp[v]]).collect();
    let mut edge_map = vec![None; g.num_edges()];
    let mut he = Vec::with_capacity(2 * (g.num_edges() - f.len()));
    for e in 0..g.num_edges() {
        if !f.contains(e) {
            edge_map[e] = Some(he.len() / 2);
            let (a, b) = g.edge_ends(e);
            he.push(vertex_map[a]);
            he.push(vertex_map[b]);
        }
    }
    let cycles = g
        .cycles()
        .iter()
        .map(|c| {
            c.iter()
                .filter_map(|&h| edge_map[h / 2].map(|ne| 2 * ne + (h & 1)))
                .collect()
        })
        .collect();
    let graph = DecoratedGraph::from_parts(count, vertex_map[g.basepoint()], he, cycles);
    Ok(Contraction { graph, vertex_map, edge_map })
}

/// Cached level and base data of a host graph, for classifying many forests.
pub struct ForestContext<'a> {
    pub g: &'a DecoratedGraph,
    pub dist: Vec<usize>,
    pub base: BaseData,
    /// m_i(g) per level
    pub base_counts: Vec<i64>,
}

impl<'a> ForestContext<'a> {
    pub fn new(g: &'a DecoratedGraph) -> Self {
        let lv = levels(g);
        let base = base_data(g, &lv);
        let mut base_counts = vec![0i64; lv.levels.len() + 1];
        for &v in &base.base_vertices {
            base_counts[lv.distance[v]] += 1;
        }
        ForestContext { g, dist: lv.distance, base, base_counts }
    }

    fn m_at(&self, i: usize) -> i64 {
        self.base_counts.get(i).copied().unwrap_or(0)
    }

    /// m_i of the collapsed graph, computed without building it: distances in
    /// the quotient are shortest paths where forest edges cost nothing.
    fn quotient_base_count(&self, f: Forest, comp: &[usize], i: usize) -> i64 {
        let g = self.g;
        let nv = g.num_vertices();
        let mut qd = vec![UNREACHABLE; nv];
        let mut dq = VecDeque::new();
        qd[g.basepoint()] = 0;
        dq.push_back(g.basepoint());
        while let Some(v) = dq.pop_front() {
            for &h in g.half_edges_at(v) {
                let w = g.vertex_of(h ^ 1);
                let cost = usize::from(!f.contains(h / 2));
                if qd[v] + cost < qd[w] {
                    qd[w] = qd[v] + cost;
                    if cost == 0 {
                        dq.push_front(w);
                    } else {
                        dq.push_back(w);
                    }
                }
            }
        }
        let mut total = 0;
        for cycle in g.cycles() {
            let mut best = UNREACHABLE;
            let mut roots: Vec<usize> = Vec::new();
            for &h in cycle {
                let v = g.vertex_of(h);
                if qd[v] < best {
                    best = qd[v];
                    roots.clear();
                }
                if qd[v] == best && !roots.contains(&comp[v]) {
                    roots.push(comp[v]);
                }
            }
            if best == i {
                total += roots.len() as i64;
            }
        }
        total
    }

    /// D(F), the least distance of a vertex of `f`.
    pub fn level(&self, f: Forest) -> Result<usize, ForestError> {
        if f.is_empty() {
            return Err(ForestError::Empty);
        }
        check_edges(self.g, f)?;
        Ok(f.iter()
            .map(|e| {
                let (a, b) = self.g.edge_ends(e);
                self.dist[a].min(self.dist[b])
            })
            .min()
            .unwrap())
    }

    fn arced_given(&self, f: Forest, comp: &[usize], level: usize) -> bool {
        let mut seen: Vec<usize> = Vec::new();
        let mut touched = vec![false; self.g.num_vertices()];
        for e in f.iter() {
            let (a, b) = self.g.edge_ends(e);
            touched[a] = true;
            touched[b] = true;
        }
        for v in 0..self.g.num_vertices() {
            if touched[v] && self.dist[v] == level {
                if seen.contains(&comp[v]) {
                    return true;
                }
                seen.push(comp[v]);
            }
        }
        false
    }

    pub fn is_arced(&self, f: Forest) -> Result<bool, ForestError> {
        let level = self.level(f)?;
        let comp = components(self.g, f)?;
        Ok(self.arced_given(f, &comp, level))
    }

    pub fn delta_m(&self, f: Forest, i: usize) -> Result<i64, ForestError> {
        let comp = components(self.g, f)?;
        if !admissible_given(self.g, f, &comp) {
            return Err(ForestError::Inadmissible);
        }
        Ok(self.quotient_base_count(f, &comp, i) - self.m_at(i))
    }

    pub fn classify(&self, f: Forest) -> Result<ForestClassification, ForestError> {
        let level = self.level(f)?;
        let comp = components(self.g, f)?;
        if !admissible_given(self.g, f, &comp) {
            return Err(ForestError::Inadmissible);
        }
        let arced = self.arced_given(f, &comp, level);
        let delta_m = self.quotient_base_count(f, &comp, level) - self.m_at(level);
        let good = delta_m < 0 || (delta_m == 0 && !arced);
        Ok(ForestClassification {
            level,
            arced,
            delta_m,
            status: if good { Status::Good } else { Status::Bad },
        })
    }

    pub fn is_good(&self, f: Forest) -> Result<bool, ForestError> {
        Ok(self.classify(f)?.is_good())
    }
}

pub fn forest_level(g: &DecoratedGraph, f: Forest) -> Result<usize, ForestError> {
    ForestContext::new(g).level(f)
}

pub fn is_arced(g: &DecoratedGraph, f: Forest) -> Result<bool, ForestError> {
    ForestContext::new(g).is_arced(f)
}

pub fn delta_m(g: &DecoratedGraph, f: Forest, i: usize) -> Result<i64, ForestError> {
    ForestContext::new(g).delta_m(f, i)
}

pub fn classify(g: &DecoratedGraph, f: Forest) -> Result<ForestClassification, ForestError> {
    ForestContext::new(g).classify(f)
}

/// Every non-empty admissible forest, each once, in increasing bitset order
/// within each size class of the search.
pub fn admissible_forests(g: &DecoratedGraph) -> Result<Vec<Forest>, ForestError> {
    check_edges(g, EdgeSet::empty())?;
    let candidates: Vec<EdgeId> = (0..g.num_edges()).filter(|&e| !g.is_loop(e)).collect();
    let mut out = Vec::new();
    extend_forests(g, &candidates, 0, EdgeSet::empty(), &mut out);
    out.sort();
    Ok(out)
}

fn extend_forests(g: &DecoratedGraph, cands: &[EdgeId], from: usize, f: Forest, out: &mut Vec<Forest>) {
    for i in from..cands.len() {
        let next = f.with(cands[i]);
        match components(g, next) {
            Ok(comp) if admissible_given(g, next, &comp) => {
                out.push(next);
                extend_forests(g, cands, i + 1, next, out);
            }
            _ => {}
        }
    }
}

/// An edge that is the only way down from its top vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisiveEdge {
    pub edge: EdgeId,
    pub top: VertexId,
}

pub fn decisive_edges(g: &DecoratedGraph) -> Vec<DecisiveEdge> {
    let dist = g.distances_from(g.basepoint());
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        if v == g.basepoint() {
            continue;
        }
        let down: Vec<EdgeId> = g
            .half_edges_at(v)
            .iter()
            .filter(|&&h| dist[g.vertex_of(h ^ 1)] + 1 == dist[v])
            .map(|&h| h / 2)
            .collect();
        if down.len() == 1 {
            out.push(DecisiveEdge { edge: down[0], top: v });
        }
    }
    out.sort_by_key(|d| d.edge);
    out
}

/// Non-loop edges forming an admissible forest on their own.
pub fn admissible_edges(g: &DecoratedGraph) -> Vec<EdgeId> {
    (0..g.num_edges())
        .filter(|&e| !g.is_loop(e) && is_admissible(g, EdgeSet::single(e)).unwrap_or(false))
        .collect()
}

/// Admissible edges maximizing the endpoint distance sum.
pub fn maximally_distant_edges(g: &DecoratedGraph) -> Vec<EdgeId> {
    let dist = g.distances_from(g.basepoint());
    let adm = admissible_edges(g);
    let score = |e: EdgeId| {
        let (a, b) = g.edge_ends(e);
        dist[a] + dist[b]
    };
    let best = adm.iter().map(|&e| score(e)).max();
    adm.into_iter().filter(|&e| Some(score(e)) == best).collect()
}

/// Maximally distant edges that then maximize the change in base count at their level.
pub fn optimal_edges(g: &DecoratedGraph) -> Vec<EdgeId> {
    let ctx = ForestContext::new(g);
    let md = maximally_distant_edges(g);
    let dm: Vec<i64> = md
        .iter()
        .map(|&e| {
            let f = EdgeSet::single(e);
            ctx.delta_m(f, ctx.level(f).unwrap()).unwrap()
        })
        .collect();
    let best = dm.iter().copied().max();
    md.into_iter().zip(dm).filter(|&(_, d)| Some(d) == best).map(|(e, _)| e).collect()
}
