//! Basepointed half-edge multigraphs carrying pairwise disjoint distinguished cycles.
//!
//! Edge `e` owns the half-edges `2e` and `2e + 1`, so the pairing involution is
//! `h ^ 1`. A distinguished cycle is stored as the sequence of half-edges it
//! leaves along: consecutive entries satisfy `vertex(h_i ^ 1) == vertex(h_{i+1})`.
//! A loop cycle is a single half-edge.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type HalfEdge = usize;
pub type EdgeId = usize;
pub type VertexId = usize;

pub const UNREACHABLE: usize = usize::MAX;

/// Which valency constraint a graph is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValencyMode {
    /// basepoint at least bivalent, every other vertex at least trivalent
    Spine,
    /// no valency constraint
    Generalized,
}

/// How much structure of the distinguished cycles an isomorphism must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DecorationMode {
    /// cycles may be permuted and reversed
    UnlabeledUnoriented,
    /// cycles keep their labels and orientations
    LabeledOriented,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge path {0:?} does not close up into a cycle")]
    OpenCyclePath(Vec<EdgeId>),
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Violation {
    OddHalfEdgeCount { half_edges: usize },
    BasepointOutOfRange { basepoint: usize, vertices: usize },
    HalfEdgeVertexOutOfRange { half_edge: usize, vertex: usize },
    Disconnected { unreachable: usize },
    EmptyCycle { cycle: usize },
    CycleHalfEdgeOutOfRange { cycle: usize, half_edge: usize },
    CycleNotClosed { cycle: usize, position: usize },
    CycleRepeatsEdge { cycle: usize, edge: usize },
    CycleRepeatsVertex { cycle: usize, vertex: usize },
    CyclesShareVertex { first: usize, second: usize, vertex: usize },
    Valency { vertex: usize, valency: usize, minimum: usize },
    RankMismatch { declared: i64, actual: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddHalfEdgeCount { half_edges } => {
                write!(f, "{half_edges} half-edges cannot be paired")
            }
            Violation::BasepointOutOfRange { basepoint, vertices } => {
                write!(f, "basepoint {basepoint} out of range (0..{vertices})")
            }
            Violation::HalfEdgeVertexOutOfRange { half_edge, vertex } => {
                write!(f, "half-edge {half_edge} attached to missing vertex {vertex}")
            }
            Violation::Disconnected { unreachable } => {
                write!(f, "{unreachable} vertices unreachable from the basepoint")
            }
            Violation::EmptyCycle { cycle } => write!(f, "cycle {cycle} is empty"),
            Violation::CycleHalfEdgeOutOfRange { cycle, half_edge } => {
                write!(f, "cycle {cycle} uses missing half-edge {half_edge}")
            }
            Violation::CycleNotClosed { cycle, position } => {
                write!(f, "cycle {cycle} breaks after position {position}")
            }
            Violation::CycleRepeatsEdge { cycle, edge } => {
                write!(f, "cycle {cycle} uses edge {edge} twice")
            }
            Violation::CycleRepeatsVertex { cycle, vertex } => {
                write!(f, "cycle {cycle} visits vertex {vertex} twice")
            }
            Violation::CyclesShareVertex { first, second, vertex } => {
                write!(f, "cycles {first} and {second} meet at vertex {vertex}")
            }
            Violation::Valency { vertex, valency, minimum } => {
                write!(f, "vertex {vertex} has valency {valency} < {minimum}")
            }
            Violation::RankMismatch { declared, actual } => {
                write!(f, "declared rank {declared} but graph has rank {actual}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A basepointed multigraph with distinguished cycles. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecoratedGraph {
    num_vertices: usize,
    basepoint: VertexId,
    he_vertex: Vec<VertexId>,
    cycles: Vec<Vec<HalfEdge>>,
    // derived
    incidence: Vec<Vec<HalfEdge>>,
    edge_cycle: Vec<Option<usize>>,
}

impl fmt::Debug for DecoratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(usize, usize)> = (0..self.num_edges()).map(|e| self.edge_ends(e)).collect();
        f.debug_struct("DecoratedGraph")
            .field("vertices", &self.num_vertices)
            .field("basepoint", &self.basepoint)
            .field("edges", &edges)
            .field("cycles", &self.cycles)
            .finish()
    }
}

impl DecoratedGraph {
    /// Assemble a graph without checking anything; use [`validate`] afterwards.
    /// Out-of-range indices are tolerated here and show up as violations.
    pub fn from_parts(
        num_vertices: usize,
        basepoint: VertexId,
        he_vertex: Vec<VertexId>,
        cycles: Vec<Vec<HalfEdge>>,
    ) -> Self {
        let mut incidence = vec![Vec::new(); num_vertices];
        for (h, &v) in he_vertex.iter().enumerate() {
            if v < num_vertices {
                incidence[v].push(h);
            }
        }
        let mut edge_cycle = vec![None; he_vertex.len() / 2];
        for (ci, cycle) in cycles.iter().enumerate() {
            for &h in cycle {
                if h / 2 < edge_cycle.len() {
                    edge_cycle[h / 2] = Some(ci);
                }
            }
        }
        DecoratedGraph { num_vertices, basepoint, he_vertex, cycles, incidence, edge_cycle }
    }

    /// Build from an edge list and cycles given as closed edge paths.
    /// Orientation of each cycle follows the listed edge order.
    pub fn from_edges(
        num_vertices: usize,
        basepoint: VertexId,
        edges: &[(VertexId, VertexId)],
        cycles: &[Vec<EdgeId>],
    ) -> Result<Self, GraphError> {
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= num_vertices {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
        }
        let he_vertex: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let mut half_cycles = Vec::with_capacity(cycles.len());
        for path in cycles {
            half_cycles.push(orient_edge_path(&he_vertex, path)?);
        }
        let g = Self::from_parts(num_vertices, basepoint, he_vertex, half_cycles);
        let report = validate(&g, ValencyMode::Generalized);
        if !report.is_valid() {
            return Err(GraphError::Invalid(report));
        }
        Ok(g)
    }

    /// The rose with `n` undistinguished and `m` distinguished loops at the basepoint.
    pub fn rose(n: usize, m: usize) -> Self {
        let he_vertex = vec![0; 2 * (n + m)];
        let cycles = (0..m).map(|i| vec![2 * (n + i)]).collect();
        Self::from_parts(1, 0, he_vertex, cycles)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.he_vertex.len() / 2
    }

    pub fn num_half_edges(&self) -> usize {
        self.he_vertex.len()
    }

    pub fn basepoint(&self) -> VertexId {
        self.basepoint
    }

    pub fn vertex_of(&self, h: HalfEdge) -> VertexId {
        self.he_vertex[h]
    }

    pub fn half_edge_vertices(&self) -> &[VertexId] {
        &self.he_vertex
    }

    pub fn edge_ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.he_vertex[2 * e], self.he_vertex[2 * e + 1])
    }

    /// The endpoint of `e` other than `v` (or `v` itself for a loop).
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edge_ends(e);
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edge_ends(e);
        a == b
    }

    pub fn half_edges_at(&self, v: VertexId) -> &[HalfEdge] {
        &self.incidence[v]
    }

    pub fn valency(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn cycles(&self) -> &[Vec<HalfEdge>] {
        &self.cycles
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_of_edge(&self, e: EdgeId) -> Option<usize> {
        self.edge_cycle[e]
    }

    pub fn is_distinguished_edge(&self, e: EdgeId) -> bool {
        self.edge_cycle[e].is_some()
    }

    pub fn is_distinguished_half_edge(&self, h: HalfEdge) -> bool {
        self.edge_cycle[h / 2].is_some()
    }

    /// The cycle through `v`, if any.
    pub fn cycle_at(&self, v: VertexId) -> Option<usize> {
        self.incidence[v].iter().find_map(|&h| self.edge_cycle[h / 2])
    }

    pub fn is_distinguished_vertex(&self, v: VertexId) -> bool {
        self.cycle_at(v).is_some()
    }

    pub fn basepoint_distinguished(&self) -> bool {
        self.is_distinguished_vertex(self.basepoint)
    }

    /// Vertices of cycle `c` in traversal order.
    pub fn cycle_vertices(&self, c: usize) -> Vec<VertexId> {
        self.cycles[c].iter().map(|&h| self.he_vertex[h]).collect()
    }

    /// Edges of cycle `c` in traversal order.
    pub fn cycle_edges(&self, c: usize) -> Vec<EdgeId> {
        self.cycles[c].iter().map(|&h| h / 2).collect()
    }

    /// First Betti number `E - V + 1` (for a connected graph).
    pub fn rank(&self) -> i64 {
        self.num_edges() as i64 - self.num_vertices as i64 + 1
    }

    /// Undistinguished rank `n = rank - m`.
    pub fn undistinguished_rank(&self) -> i64 {
        self.rank() - self.cycles.len() as i64
    }

    /// `2 * undistinguished + distinguished` half-edges at `v`.
    pub fn weighted_valency_doubled(&self, v: VertexId) -> Result<usize, GraphError> {
        if v >= self.num_vertices {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(self.incidence[v]
            .iter()
            .map(|&h| if self.is_distinguished_half_edge(h) { 1 } else { 2 })
            .sum())
    }

    /// `2n + m - val_w(p)`.
    pub fn weighted_degree(&self) -> i64 {
        let twice = 2 * (2 * self.rank() - self.cycles.len() as i64)
            - self.weighted_valency_doubled(self.basepoint).unwrap_or(0) as i64;
        twice / 2
    }

    /// `2n + 2m - val(p)`.
    pub fn degree(&self) -> i64 {
        2 * self.rank() - self.valency(self.basepoint) as i64
    }

    /// Number of distinguished cycles avoiding the basepoint.
    pub fn cycles_not_at_basepoint(&self) -> usize {
        let at_p = self.cycle_at(self.basepoint);
        self.cycles.len() - usize::from(at_p.is_some())
    }

    /// Breadth-first distances from `source`; unreachable vertices get [`UNREACHABLE`].
    pub fn distances_from(&self, source: VertexId) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.num_vertices];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &h in &self.incidence[v] {
                let w = self.he_vertex[h ^ 1];
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices == 0 || self.distances_from(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Append a new vertex and a new edge; returns the new graph, vertex and edge ids.
    fn with_pendant(&self, at: VertexId) -> (Vec<VertexId>, usize, EdgeId) {
        let mut he = self.he_vertex.clone();
        let new_v = self.num_vertices;
        he.push(at);
        he.push(new_v);
        (he, new_v, self.num_edges())
    }

    /// Wedge an undistinguished loop at the basepoint.
    pub fn wedge_loop(&self) -> Self {
        let mut he = self.he_vertex.clone();
        he.push(self.basepoint);
        he.push(self.basepoint);
        Self::from_parts(self.num_vertices, self.basepoint, he, self.cycles.clone())
    }

    /// Wedge a lollipop (stick from the basepoint to a new vertex carrying a
    /// distinguished loop) at the basepoint. The new cycle is appended last.
    pub fn wedge_lollipop(&self) -> Self {
        let (mut he, new_v, _) = self.with_pendant(self.basepoint);
        let loop_edge = he.len() / 2;
        he.push(new_v);
        he.push(new_v);
        let mut cycles = self.cycles.clone();
        cycles.push(vec![2 * loop_edge]);
        Self::from_parts(self.num_vertices + 1, self.basepoint, he, cycles)
    }

    /// Remove the given edges (and then vertices left isolated, other than the
    /// basepoint), dropping cycles that used a removed edge.
    pub fn remove_edges(&self, removed: &[EdgeId]) -> Self {
        let mut keep_edge = vec![true; self.num_edges()];
        for &e in removed {
            keep_edge[e] = false;
        }
        let mut used = vec![false; self.num_vertices];
        used[self.basepoint] = true;
        for e in 0..self.num_edges() {
            if keep_edge[e] {
                let (a, b) = self.edge_ends(e);
                used[a] = true;
                used[b] = true;
            }
        }
        let mut vmap = vec![UNREACHABLE; self.num_vertices];
        let mut nv = 0;
        for v in 0..self.num_vertices {
            if used[v] {
                vmap[v] = nv;
                nv += 1;
            }
        }
        let mut emap = vec![UNREACHABLE; self.num_edges()];
        let mut he = Vec::new();
        for e in 0..self.num_edges() {
            if keep_edge[e] {
                emap[e] = he.len() / 2;
                let (a, b) = self.edge_ends(e);
                he.push(vmap[a]);
                he.push(vmap[b]);
            }
        }
        let cycles = self
            .cycles
            .iter()
            .filter(|c| c.iter().all(|&h| keep_edge[h / 2]))
            .map(|c| c.iter().map(|&h| 2 * emap[h / 2] + (h & 1)).collect())
            .collect();
        Self::from_parts(nv, vmap[self.basepoint], he, cycles)
    }

    /// Split `v` by moving the half-edges `moved` onto a new vertex joined to
    /// `v` by a new edge (half-edge `2E` at `v`, `2E + 1` at the new vertex).
    /// A cycle whose arriving and departing half-edges at `v` end up on
    /// different sides is rerouted through the new edge.
    pub fn split_vertex(&self, v: VertexId, moved: &[HalfEdge]) -> Self {
        let new_v = self.num_vertices;
        let new_e = self.num_edges();
        let mut he = self.he_vertex.clone();
        for &h in moved {
            he[h] = new_v;
        }
        he.push(v);
        he.push(new_v);
        let cycles = self
            .cycles
            .iter()
            .map(|c| {
                let mut out = Vec::with_capacity(c.len() + 1);
                for i in 0..c.len() {
                    out.push(c[i]);
                    let arrival = c[i] ^ 1;
                    let departure = c[(i + 1) % c.len()];
                    if self.he_vertex[departure] == v && he[arrival] != he[departure] {
                        out.push(if he[arrival] == v { 2 * new_e } else { 2 * new_e + 1 });
                    }
                }
                out
            })
            .collect();
        Self::from_parts(self.num_vertices + 1, self.basepoint, he, cycles)
    }

    /// Same graph with a different set of cycles (given as half-edge sequences).
    pub fn with_cycles(&self, cycles: Vec<Vec<HalfEdge>>) -> Self {
        Self::from_parts(self.num_vertices, self.basepoint, self.he_vertex.clone(), cycles)
    }

    /// Same graph with the basepoint moved.
    pub fn with_basepoint(&self, basepoint: VertexId) -> Self {
        Self::from_parts(self.num_vertices, basepoint, self.he_vertex.clone(), self.cycles.clone())
    }

    /// The graph with its cycles forgotten.
    pub fn undecorated(&self) -> Self {
        self.with_cycles(Vec::new())
    }

    /// Edges of cycle `c` reversed: the departure half-edges of the opposite traversal.
    pub fn reversed_cycle(cycle: &[HalfEdge]) -> Vec<HalfEdge> {
        cycle.iter().rev().map(|&h| h ^ 1).collect()
    }
}

/// Turn a closed edge path into departure half-edges, orienting the first edge
/// so that the path closes up.
pub fn orient_edge_path(he_vertex: &[VertexId], path: &[EdgeId]) -> Result<Vec<HalfEdge>, GraphError> {
    let num_edges = he_vertex.len() / 2;
    if let Some(&e) = path.iter().find(|&&e| e >= num_edges) {
        return Err(GraphError::UnknownEdge(e));
    }
    if path.is_empty() {
        return Err(GraphError::OpenCyclePath(Vec::new()));
    }
    'start: for first in [2 * path[0], 2 * path[0] + 1] {
        let mut out = vec![first];
        let mut at = he_vertex[first ^ 1];
        for &e in &path[1..] {
            let h = if he_vertex[2 * e] == at {
                2 * e
            } else if he_vertex[2 * e + 1] == at {
                2 * e + 1
            } else {
                continue 'start;
            };
            out.push(h);
            at = he_vertex[h ^ 1];
        }
        if at == he_vertex[first] {
            return Ok(out);
        }
    }
    Err(GraphError::OpenCyclePath(path.to_vec()))
}

/// Report every violated invariant of `g` for the given valency mode.
pub fn validate(g: &DecoratedGraph, mode: ValencyMode) -> ValidationReport {
    let mut violations = Vec::new();
    let nv = g.num_vertices;
    if !g.he_vertex.len().is_multiple_of(2) {
        violations.push(Violation::OddHalfEdgeCount { half_edges: g.he_vertex.len() });
    }
    if g.basepoint >= nv {
        violations.push(Violation::BasepointOutOfRange { basepoint: g.basepoint, vertices: nv });
    }
    let mut indices_ok = g.basepoint < nv && g.he_vertex.len().is_multiple_of(2);
    for (h, &v) in g.he_vertex.iter().enumerate() {
        if v >= nv {
            violations.push(Violation::HalfEdgeVertexOutOfRange { half_edge: h, vertex: v });
            indices_ok = false;
        }
    }
    if indices_ok {
        let unreachable = g.distances_from(g.basepoint).iter().filter(|&&d| d == UNREACHABLE).count();
        if unreachable > 0 {
            violations.push(Violation::Disconnected { unreachable });
        }
    }

    let mut owner: Vec<Option<usize>> = vec![None; nv];
    for (ci, cycle) in g.cycles.iter().enumerate() {
        if cycle.is_empty() {
            violations.push(Violation::EmptyCycle { cycle: ci });
            continue;
        }
        if let Some(&h) = cycle.iter().find(|&&h| h >= g.he_vertex.len() || g.he_vertex[h] >= nv) {
            violations.push(Violation::CycleHalfEdgeOutOfRange { cycle: ci, half_edge: h });
            continue;
        }
        if !indices_ok {
            continue;
        }
        for i in 0..cycle.len() {
            let next = cycle[(i + 1) % cycle.len()];
            if g.he_vertex[cycle[i] ^ 1] != g.he_vertex[next] {
                violations.push(Violation::CycleNotClosed { cycle: ci, position: i });
            }
        }
        let mut edges: Vec<usize> = cycle.iter().map(|&h| h / 2).collect();
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                violations.push(Violation::CycleRepeatsEdge { cycle: ci, edge: w[0] });
            }
        }
        let mut seen = Vec::new();
        for &h in cycle {
            let v = g.he_vertex[h];
            if seen.contains(&v) {
                violations.push(Violation::CycleRepeatsVertex { cycle: ci, vertex: v });
            } else {
                seen.push(v);
            }
        }
        for v in seen {
            match owner[v] {
                Some(other) if other != ci => {
                    violations.push(Violation::CyclesShareVertex { first: other, second: ci, vertex: v })
                }
                _ => owner[v] = Some(ci),
            }
        }
    }

    if mode == ValencyMode::Spine {
        for v in 0..nv {
            let minimum = if v == g.basepoint { 2 } else { 3 };
            if g.incidence[v].len() < minimum {
                violations.push(Violation::Valency { vertex: v, valency: g.incidence[v].len(), minimum });
            }
        }
    }
    ValidationReport { violations }
}

/// [`validate`] plus the check that the rank matches declared `(n, m)`.
pub fn validate_declared(g: &DecoratedGraph, mode: ValencyMode, n: usize, m: usize) -> ValidationReport {
    let mut report = validate(g, mode);
    let declared = (n + m) as i64;
    if g.rank() != declared {
        report.violations.push(Violation::RankMismatch { declared, actual: g.rank() });
    }
    if g.num_cycles() != m {
        report.violations.push(Violation::RankMismatch { declared: m as i64, actual: g.num_cycles() as i64 });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lollipop_path() -> DecoratedGraph {
        // p - v - w with a distinguished loop at w
        DecoratedGraph::from_edges(3, 0, &[(0, 1), (1, 2), (2, 2)], &[vec![2]]).unwrap()
    }

    #[test]
    fn rose_is_valid_spine() {
        let r = DecoratedGraph::rose(1, 0);
        assert!(validate(&r, ValencyMode::Spine).is_valid());
        assert_eq!(r.weighted_degree(), 0);
        assert_eq!(r.degree(), 0);
    }

    #[test]
    fn bivalent_path_vertex() {
        let g = lollipop_path();
        let spine = validate(&g, ValencyMode::Spine);
        assert!(!spine.is_valid());
        assert!(spine.violations.iter().any(|v| matches!(v, Violation::Valency { vertex: 1, .. })));
        assert!(validate(&g, ValencyMode::Generalized).is_valid());
    }

    #[test]
    fn weighted_valencies() {
        let r = DecoratedGraph::rose(1, 1);
        assert_eq!(r.weighted_valency_doubled(0).unwrap(), 6);
        let l = DecoratedGraph::rose(0, 0).wedge_lollipop();
        assert_eq!(l.weighted_valency_doubled(1).unwrap(), 4);
        assert!(l.weighted_valency_doubled(7).is_err());
    }

    #[test]
    fn malformed_indices_are_reported() {
        let g = DecoratedGraph::from_parts(2, 5, vec![0, 3, 1], vec![vec![9]]);
        let r = validate(&g, ValencyMode::Generalized);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::OddHalfEdgeCount { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::BasepointOutOfRange { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::HalfEdgeVertexOutOfRange { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::CycleHalfEdgeOutOfRange { .. })));
    }

    #[test]
    fn cycle_defects_are_reported() {
        let he = vec![0, 1, 1, 2, 2, 0, 0, 1];
        // not closed
        let g = DecoratedGraph::from_parts(3, 0, he.clone(), vec![vec![0, 2]]);
        assert!(validate(&g, ValencyMode::Generalized)
            .violations
            .iter()
            .any(|v| matches!(v, Violation::CycleNotClosed { .. })));
        // two cycles sharing vertices
        let g = DecoratedGraph::from_parts(3, 0, he, vec![vec![0, 2, 4], vec![6, 1]]);
        assert!(validate(&g, ValencyMode::Generalized)
            .violations
            .iter()
            .any(|v| matches!(v, Violation::CyclesShareVertex { .. })));
    }

    #[test]
    fn theta_degree() {
        let theta = DecoratedGraph::from_edges(2, 0, &[(0, 1), (0, 1), (0, 1)], &[]).unwrap();
        assert_eq!(theta.degree(), 1);
        assert_eq!(theta.rank(), 2);
    }

    #[test]
    fn lollipop_wedge_keeps_weighted_degree() {
        let theta = DecoratedGraph::from_edges(2, 0, &[(0, 1), (0, 1), (0, 1)], &[]).unwrap();
        let w = theta.wedge_lollipop();
        assert_eq!(w.weighted_degree(), theta.weighted_degree());
        assert_eq!(w.cycles_not_at_basepoint(), 1);
        assert!(validate(&w, ValencyMode::Spine).is_valid());
    }

    #[test]
    fn cycles_at_basepoint() {
        let r = DecoratedGraph::rose(0, 3);
        assert_eq!(r.cycles_not_at_basepoint(), 2);
        // only one cycle may pass through p, so a rose with 3 distinguished loops is invalid
        assert!(!validate(&r, ValencyMode::Spine).is_valid());
    }

    #[test]
    fn edge_path_orientation() {
        let he = vec![0, 1, 1, 0];
        assert_eq!(orient_edge_path(&he, &[0, 1]).unwrap(), vec![0, 2]);
        assert_eq!(orient_edge_path(&he, &[1, 0]).unwrap(), vec![2, 0]);
        assert!(orient_edge_path(&[0, 1, 1, 2], &[0, 1]).is_err());
    }
}
