//! Canonical labelings of decorated graphs by individualization and refinement.
//!
//! The basepoint is always fixed first. Vertex colors are refined by the multiset
//! of (half-edge color, neighbour color, opposite half-edge color) until stable;
//! ties are broken by branching, with pruning by automorphisms found along the
//! way. Each leaf yields the sorted list of edge tuples under its ordering and
//! the least such list is the canonical code.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::{DecoratedGraph, DecorationMode, EdgeId, HalfEdge, VertexId};

/// Opaque canonical code; equal iff the graphs are isomorphic (in the chosen mode).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalForm)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

/// A canonical relabeling together with the form it produces.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// new position -> old vertex
    pub vertex_order: Vec<VertexId>,
    /// old vertex -> new position
    pub vertex_pos: Vec<usize>,
    /// old edge -> new edge
    pub edge_map: Vec<EdgeId>,
    /// old half-edge -> new half-edge
    pub half_edge_map: Vec<HalfEdge>,
    /// the relabeled graph
    pub graph: DecoratedGraph,
}

type Code = Vec<(u32, u32, u32, u32)>;

fn half_edge_colors(g: &DecoratedGraph, mode: DecorationMode, edge_colors: Option<&[u32]>) -> Vec<u32> {
    let mut deco = vec![0u32; g.num_half_edges()];
    for (ci, cycle) in g.cycles().iter().enumerate() {
        for &h in cycle {
            match mode {
                DecorationMode::UnlabeledUnoriented => {
                    deco[h] = 1;
                    deco[h ^ 1] = 1;
                }
                DecorationMode::LabeledOriented => {
                    deco[h] = 2 + 2 * ci as u32;
                    deco[h ^ 1] = 3 + 2 * ci as u32;
                }
            }
        }
    }
    let span = 2 * g.num_cycles() as u32 + 3;
    if let Some(extra) = edge_colors {
        for (h, c) in deco.iter_mut().enumerate() {
            *c += extra[h / 2] * span;
        }
    }
    deco
}

struct Search<'a> {
    g: &'a DecoratedGraph,
    hc: Vec<u32>,
    best: Option<(Code, Vec<VertexId>)>,
    autos: Vec<Vec<VertexId>>,
}

impl<'a> Search<'a> {
    fn num_colors(colors: &[u32]) -> usize {
        let mut c: Vec<u32> = colors.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    fn refine(&self, colors: &mut Vec<u32>) {
        let nv = colors.len();
        let mut count = Self::num_colors(colors);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32, u32)>)> = (0..nv)
                .map(|v| {
                    let mut s: Vec<(u32, u32, u32)> = self
                        .g
                        .half_edges_at(v)
                        .iter()
                        .map(|&h| (self.hc[h], colors[self.g.vertex_of(h ^ 1)], self.hc[h ^ 1]))
                        .collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let mut order: Vec<usize> = (0..nv).collect();
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut next = vec![0u32; nv];
            let mut c = 0u32;
            for i in 0..nv {
                if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
                    c += 1;
                }
                next[order[i]] = c;
            }
            let new_count = c as usize + 1;
            *colors = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
    }

    fn leaf_code(&self, colors: &[u32]) -> (Code, Vec<VertexId>) {
        let mut order: Vec<usize> = (0..colors.len()).collect();
        order.sort_by_key(|&v| colors[v]);
        let pos = colors;
        let mut code: Code = (0..self.g.num_edges())
            .map(|e| edge_tuple(self.g, &self.hc, pos, e).0)
            .collect();
        code.sort_unstable();
        (code, order)
    }

    fn search(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<VertexId>) {
        self.refine(&mut colors);
        let nv = colors.len();
        if Self::num_colors(&colors) == nv {
            let (code, order) = self.leaf_code(&colors);
            match &self.best {
                None => self.best = Some((code, order)),
                Some((best_code, best_order)) => match code.cmp(best_code) {
                    Ordering::Less => self.best = Some((code, order)),
                    Ordering::Equal => {
                        let mut sigma = vec![0; nv];
                        for i in 0..nv {
                            sigma[best_order[i]] = order[i];
                        }
                        if sigma.iter().enumerate().any(|(i, &s)| i != s) {
                            self.autos.push(sigma);
                        }
                    }
                    Ordering::Greater => {}
                },
            }
            return;
        }
        // first smallest non-singleton cell
        let mut sizes = vec![0usize; nv];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..nv).find(|&c| sizes[c] > 1).unwrap() as u32;
        let cell: Vec<VertexId> = (0..nv).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<VertexId> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            let mut child: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
            child[v] = 2 * target;
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Whether `v` lies in the orbit of an explored vertex under the known
    /// automorphisms fixing the prefix pointwise.
    fn same_orbit(&self, prefix: &[VertexId], explored: &[VertexId], v: VertexId) -> bool {
        let nv = self.g.num_vertices();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for sigma in &self.autos {
            if prefix.iter().all(|&x| sigma[x] == x) {
                any = true;
                for x in 0..nv {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, sigma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// The edge tuple of `e` under vertex positions `pos`, and whether its
/// orientation was flipped to get the smaller tuple.
fn edge_tuple(g: &DecoratedGraph, hc: &[u32], pos: &[u32], e: EdgeId) -> ((u32, u32, u32, u32), bool) {
    let (a, b) = g.edge_ends(e);
    let fwd = (pos[a], hc[2 * e], pos[b], hc[2 * e + 1]);
    let bwd = (pos[b], hc[2 * e + 1], pos[a], hc[2 * e]);
    if bwd < fwd {
        (bwd, true)
    } else {
        (fwd, false)
    }
}

/// Compute the canonical labeling of `g`. Optional per-edge colors must be
/// preserved by isomorphisms as well.
pub fn canonical_labeling(g: &DecoratedGraph, mode: DecorationMode, edge_colors: Option<&[u32]>) -> Labeling {
    let nv = g.num_vertices();
    let hc = half_edge_colors(g, mode, edge_colors);
    let mut search = Search { g, hc, best: None, autos: Vec::new() };
    let init: Vec<u32> = (0..nv).map(|v| u32::from(v != g.basepoint())).collect();
    if nv > 0 {
        search.search(init, &mut Vec::new());
    }
    let (code, order) = search.best.take().unwrap_or_default();
    let mut vertex_pos = vec![0usize; nv];
    for (i, &v) in order.iter().enumerate() {
        vertex_pos[v] = i;
    }
    let pos32: Vec<u32> = vertex_pos.iter().map(|&p| p as u32).collect();
    let hc = &search.hc;

    let mut keyed: Vec<((u32, u32, u32, u32), bool, EdgeId)> = (0..g.num_edges())
        .map(|e| {
            let (t, flip) = edge_tuple(g, hc, &pos32, e);
            (t, flip, e)
        })
        .collect();
    keyed.sort();
    let mut edge_map = vec![0; g.num_edges()];
    let mut half_edge_map = vec![0; g.num_half_edges()];
    let mut he_vertex = vec![0; g.num_half_edges()];
    for (new_e, &(t, flip, e)) in keyed.iter().enumerate() {
        edge_map[e] = new_e;
        let (h0, h1) = if flip { (2 * e + 1, 2 * e) } else { (2 * e, 2 * e + 1) };
        half_edge_map[h0] = 2 * new_e;
        half_edge_map[h1] = 2 * new_e + 1;
        he_vertex[2 * new_e] = t.0 as usize;
        he_vertex[2 * new_e + 1] = t.2 as usize;
    }
    let mut cycles: Vec<Vec<HalfEdge>> = g
        .cycles()
        .iter()
        .map(|c| c.iter().map(|&h| half_edge_map[h]).collect())
        .collect();
    normalize_cycles(&mut cycles, mode);
    let graph = DecoratedGraph::from_parts(nv, vertex_pos[g.basepoint()], he_vertex, cycles);

    let mut bytes = Vec::with_capacity(8 + 16 * code.len());
    let mode_byte = match mode {
        DecorationMode::UnlabeledUnoriented => 0u8,
        DecorationMode::LabeledOriented => 1u8,
    };
    bytes.push(mode_byte);
    for x in [nv as u32, g.num_edges() as u32, g.num_cycles() as u32] {
        bytes.extend_from_slice(&(x as u16).to_be_bytes());
    }
    for (a, b, c, d) in &code {
        for x in [*a, *b, *c, *d] {
            bytes.extend_from_slice(&(x as u16).to_be_bytes());
        }
    }
    Labeling {
        form: CanonicalForm(bytes),
        vertex_order: order,
        vertex_pos,
        edge_map,
        half_edge_map,
        graph,
    }
}

/// Rotate each cycle to start at its least half-edge; in unoriented mode also
/// pick the orientation with the smaller sequence and sort the cycles.
pub fn normalize_cycles(cycles: &mut [Vec<HalfEdge>], mode: DecorationMode) {
    fn rotated(c: &[HalfEdge]) -> Vec<HalfEdge> {
        let (i, _) = c.iter().enumerate().min_by_key(|&(_, &h)| h).unwrap();
        c[i..].iter().chain(&c[..i]).copied().collect()
    }
    for c in cycles.iter_mut() {
        if c.is_empty() {
            continue;
        }
        let fwd = rotated(c);
        *c = match mode {
            DecorationMode::LabeledOriented => fwd,
            DecorationMode::UnlabeledUnoriented => {
                let bwd = rotated(&DecoratedGraph::reversed_cycle(c));
                fwd.min(bwd)
            }
        };
    }
    if mode == DecorationMode::UnlabeledUnoriented {
        cycles.sort();
    }
}

pub fn canonical_form(g: &DecoratedGraph, mode: DecorationMode) -> CanonicalForm {
    canonical_labeling(g, mode, None).form
}

/// The canonically relabeled representative of `g`.
pub fn canonicalize(g: &DecoratedGraph, mode: DecorationMode) -> DecoratedGraph {
    canonical_labeling(g, mode, None).graph
}

pub fn is_isomorphic(g1: &DecoratedGraph, g2: &DecoratedGraph, mode: DecorationMode) -> bool {
    g1.num_vertices() == g2.num_vertices()
        && g1.num_edges() == g2.num_edges()
        && g1.num_cycles() == g2.num_cycles()
        && canonical_form(g1, mode) == canonical_form(g2, mode)
}

/// Relabel `g` by arbitrary vertex and edge permutations, flipping chosen
/// edges and rotating/reversing cycles. Used to test invariance.
pub fn permuted(
    g: &DecoratedGraph,
    vertex_perm: &[VertexId],
    edge_perm: &[EdgeId],
    flips: &[bool],
) -> DecoratedGraph {
    let mut he = vec![0; g.num_half_edges()];
    let mut hmap = vec![0; g.num_half_edges()];
    for e in 0..g.num_edges() {
        let ne = edge_perm[e];
        let (h0, h1) = if flips[e] { (2 * ne + 1, 2 * ne) } else { (2 * ne, 2 * ne + 1) };
        hmap[2 * e] = h0;
        hmap[2 * e + 1] = h1;
        he[h0] = vertex_perm[g.vertex_of(2 * e)];
        he[h1] = vertex_perm[g.vertex_of(2 * e + 1)];
    }
    let cycles = g
        .cycles()
        .iter()
        .map(|c| {
            let mut c: Vec<HalfEdge> = c.iter().map(|&h| hmap[h]).collect();
            if !c.is_empty() {
                let k = c.len() / 2;
                c.rotate_left(k);
            }
            c
        })
        .collect();
    DecoratedGraph::from_parts(g.num_vertices(), vertex_perm[g.basepoint()], he, cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DecoratedGraph;

    fn two_lollipops() -> DecoratedGraph {
        DecoratedGraph::rose(0, 0).wedge_lollipop().wedge_lollipop()
    }

    #[test]
    fn hex_roundtrip() {
        let f = canonical_form(&two_lollipops(), DecorationMode::UnlabeledUnoriented);
        assert_eq!(CanonicalForm::from_hex(&f.to_hex()).unwrap(), f);
    }

    #[test]
    fn relabeling_invariance() {
        let g = two_lollipops();
        let p = permuted(&g, &[2, 0, 1], &[3, 1, 0, 2], &[true, false, true, true]);
        for mode in [DecorationMode::UnlabeledUnoriented, DecorationMode::LabeledOriented] {
            assert_eq!(canonical_form(&g, mode), canonical_form(&p, mode), "{mode:?}");
        }
    }

    #[test]
    fn labels_matter_only_in_labeled_mode() {
        // p - a (loop), p - b (loop), plus an extra loop at a to make the lollipops differ
        let g = DecoratedGraph::from_edges(3, 0, &[(0, 1), (1, 1), (0, 2), (2, 2), (1, 0)], &[vec![1], vec![3]])
            .unwrap();
        let swapped = g.with_cycles(vec![g.cycles()[1].clone(), g.cycles()[0].clone()]);
        assert!(is_isomorphic(&g, &swapped, DecorationMode::UnlabeledUnoriented));
        assert!(!is_isomorphic(&g, &swapped, DecorationMode::LabeledOriented));
    }

    #[test]
    fn orientation_of_long_cycle() {
        // triangle a-b-c with a tail of different lengths so reversal is not an automorphism
        // p-a, p-b (double), p-c (triple)
        let edges = [(1, 2), (2, 3), (3, 1), (0, 1), (0, 2), (0, 2), (0, 3), (0, 3), (0, 3)];
        let g = DecoratedGraph::from_edges(4, 0, &edges, &[vec![0, 1, 2]]).unwrap();
        let rev = g.with_cycles(vec![DecoratedGraph::reversed_cycle(&g.cycles()[0])]);
        assert!(is_isomorphic(&g, &rev, DecorationMode::UnlabeledUnoriented));
        assert!(!is_isomorphic(&g, &rev, DecorationMode::LabeledOriented));
    }

    #[test]
    fn loop_orientation_is_invisible() {
        let g = DecoratedGraph::rose(1, 0).wedge_lollipop();
        let rev = g.with_cycles(vec![DecoratedGraph::reversed_cycle(&g.cycles()[0])]);
        assert!(is_isomorphic(&g, &rev, DecorationMode::LabeledOriented));
    }

    #[test]
    fn basepoint_matters() {
        let path = DecoratedGraph::from_edges(3, 0, &[(0, 1), (1, 2)], &[]).unwrap();
        assert!(!is_isomorphic(&path, &path.with_basepoint(1), DecorationMode::UnlabeledUnoriented));
        assert!(is_isomorphic(&path, &path.with_basepoint(2), DecorationMode::UnlabeledUnoriented));
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        let g = two_lollipops().wedge_loop();
        let c = canonicalize(&g, DecorationMode::UnlabeledUnoriented);
        assert_eq!(canonicalize(&c, DecorationMode::UnlabeledUnoriented), c);
        let p = permuted(&g, &[1, 2, 0], &[4, 0, 2, 1, 3], &[false, true, true, false, true]);
        assert_eq!(canonicalize(&p, DecorationMode::UnlabeledUnoriented), c);
    }

    #[test]
    fn edge_colors_separate() {
        let theta = DecoratedGraph::from_edges(2, 0, &[(0, 1), (0, 1), (0, 1)], &[]).unwrap();
        let a = canonical_labeling(&theta, DecorationMode::UnlabeledUnoriented, Some(&[1, 0, 0])).form;
        let b = canonical_labeling(&theta, DecorationMode::UnlabeledUnoriented, Some(&[0, 0, 1])).form;
        let c = canonical_labeling(&theta, DecorationMode::UnlabeledUnoriented, Some(&[1, 1, 0])).form;
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
