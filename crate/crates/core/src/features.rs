//! Wedge summands at the basepoint: loops, thetas, lollipops, double
//! lollipops and iterated wedges of lollipops.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::is_isomorphic;
use crate::forest::{blow_down, EdgeSet};
use crate::graph::{DecoratedGraph, DecorationMode, EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeatureError {
    #[error("basepoint lies on a distinguished cycle")]
    BasepointDistinguished,
}

/// A piece of the graph meeting the rest only at the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSummand {
    /// non-basepoint vertices, sorted; empty for a loop at the basepoint
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// number of edges joining the summand to the basepoint
    pub attaching_edges: usize,
}

pub fn wedge_summands(g: &DecoratedGraph) -> Vec<WedgeSummand> {
    let p = g.basepoint();
    let nv = g.num_vertices();
    let mut comp = vec![usize::MAX; nv];
    let mut out: Vec<WedgeSummand> = Vec::new();
    for s in 0..nv {
        if s == p || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut vertices = vec![s];
        while let Some(v) = stack.pop() {
            for &h in g.half_edges_at(v) {
                let w = g.vertex_of(h ^ 1);
                if w != p && comp[w] == usize::MAX {
                    comp[w] = id;
                    vertices.push(w);
                    stack.push(w);
                }
            }
        }
        vertices.sort_unstable();
        out.push(WedgeSummand { vertices, edges: Vec::new(), attaching_edges: 0 });
    }
    for e in 0..g.num_edges() {
        let (a, b) = g.edge_ends(e);
        if a == p && b == p {
            out.push(WedgeSummand { vertices: Vec::new(), edges: vec![e], attaching_edges: 0 });
            continue;
        }
        let c = if a == p { comp[b] } else { comp[a] };
        out[c].edges.push(e);
        if a == p || b == p {
            out[c].attaching_edges += 1;
        }
    }
    out
}

/// The summand as a graph of its own, based at the basepoint.
pub fn summand_graph(g: &DecoratedGraph, s: &WedgeSummand) -> DecoratedGraph {
    let removed: Vec<EdgeId> = (0..g.num_edges()).filter(|e| !s.edges.contains(e)).collect();
    g.remove_edges(&removed)
}

fn shape(nv: usize, edges: &[(usize, usize)], cycles: &[Vec<EdgeId>]) -> DecoratedGraph {
    DecoratedGraph::from_edges(nv, 0, edges, cycles).expect("fixed shapes are valid")
}

pub fn lollipop_shape() -> DecoratedGraph {
    shape(2, &[(0, 1), (1, 1)], &[vec![1]])
}

pub fn theta_shape() -> DecoratedGraph {
    shape(2, &[(0, 1), (0, 1), (0, 1)], &[])
}

/// The three double lollipops: the second lollipop wedged to the interior of
/// the first stick, to the first cycle away from the stick, or to the vertex
/// where the first stick meets its loop.
pub fn double_lollipop_shapes() -> [DecoratedGraph; 3] {
    [
        shape(4, &[(0, 1), (1, 2), (1, 3), (2, 2), (3, 3)], &[vec![3], vec![4]]),
        shape(4, &[(0, 1), (1, 2), (1, 2), (2, 3), (3, 3)], &[vec![1, 2], vec![4]]),
        shape(3, &[(0, 1), (1, 1), (1, 2), (2, 2)], &[vec![1], vec![3]]),
    ]
}

fn same_shape(a: &DecoratedGraph, b: &DecoratedGraph) -> bool {
    is_isomorphic(a, b, DecorationMode::UnlabeledUnoriented)
}

/// Which double lollipop a summand graph is, if any.
pub fn double_lollipop_type(summand: &DecoratedGraph) -> Option<u8> {
    double_lollipop_shapes().iter().position(|s| same_shape(s, summand)).map(|i| i as u8 + 1)
}

/// A vertex other than the basepoint carrying exactly a distinguished loop and
/// one undistinguished non-loop edge; returns the vertex, loop and stick.
fn find_lollipop(g: &DecoratedGraph) -> Option<(VertexId, EdgeId, EdgeId)> {
    (0..g.num_vertices()).filter(|&v| v != g.basepoint() && g.valency(v) == 3).find_map(|v| {
        let hs = g.half_edges_at(v);
        let lp = hs.iter().map(|h| h / 2).find(|&e| g.is_loop(e) && g.is_distinguished_edge(e))?;
        let stick = hs.iter().map(|h| h / 2).find(|&e| !g.is_loop(e))?;
        (!g.is_distinguished_edge(stick)).then_some((v, lp, stick))
    })
}

/// Strip lollipops one at a time, smoothing bivalent vertices left behind,
/// and report whether nothing but the basepoint remains.
pub fn is_iterated_lollipop(summand: &DecoratedGraph) -> bool {
    let mut g = summand.clone();
    if g.num_edges() == 0 {
        return false;
    }
    loop {
        if g.num_edges() == 0 {
            return true;
        }
        let Some((v, lp, stick)) = find_lollipop(&g) else { return false };
        let w = g.other_end(stick, v);
        let before = g.num_vertices();
        g = g.remove_edges(&[lp, stick]);
        if g.num_vertices() != before - 1 {
            return false;
        }
        let w = if w > v { w - 1 } else { w };
        if w != g.basepoint() && g.valency(w) == 2 {
            let e = g.half_edges_at(w)[0] / 2;
            if g.is_loop(e) {
                return false;
            }
            match blow_down(&g, EdgeSet::single(e)) {
                Ok(c) => g = c.graph,
                Err(_) => return false,
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FeatureReport {
    pub loops_at_basepoint: usize,
    pub theta_summands: usize,
    pub lollipops_at_basepoint: usize,
    pub double_lollipops_at_basepoint: Vec<u8>,
    pub iterated_lollipop_summand: bool,
}

pub fn detect_features(g: &DecoratedGraph) -> Result<FeatureReport, FeatureError> {
    if g.basepoint_distinguished() {
        return Err(FeatureError::BasepointDistinguished);
    }
    let mut r = FeatureReport::default();
    let lolly = lollipop_shape();
    let theta = theta_shape();
    for s in wedge_summands(g) {
        if s.vertices.is_empty() {
            r.loops_at_basepoint += 1;
            continue;
        }
        let sg = summand_graph(g, &s);
        match s.vertices.len() {
            1 if same_shape(&sg, &theta) => r.theta_summands += 1,
            1 if same_shape(&sg, &lolly) => r.lollipops_at_basepoint += 1,
            2 | 3 => {
                if let Some(t) = double_lollipop_type(&sg) {
                    r.double_lollipops_at_basepoint.push(t);
                }
            }
            _ => {}
        }
        if s.attaching_edges == 1 && is_iterated_lollipop(&sg) {
            r.iterated_lollipop_summand = true;
        }
    }
    r.double_lollipops_at_basepoint.sort_unstable();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Wedge `piece` (based at its vertex 0) onto `g` at the basepoint.
    fn wedge(g: &DecoratedGraph, piece: &DecoratedGraph) -> DecoratedGraph {
        let shift = g.num_vertices() - 1;
        let map = |v: usize| if v == 0 { g.basepoint() } else { v + shift };
        let mut edges: Vec<(usize, usize)> = (0..g.num_edges()).map(|e| g.edge_ends(e)).collect();
        let mut cycles: Vec<Vec<usize>> = (0..g.num_cycles()).map(|c| g.cycle_edges(c)).collect();
        let off = edges.len();
        edges.extend((0..piece.num_edges()).map(|e| {
            let (a, b) = piece.edge_ends(e);
            (map(a), map(b))
        }));
        cycles.extend((0..piece.num_cycles()).map(|c| piece.cycle_edges(c).iter().map(|e| e + off).collect()));
        DecoratedGraph::from_edges(g.num_vertices() + piece.num_vertices() - 1, g.basepoint(), &edges, &cycles).unwrap()
    }

    #[test]
    fn loops_and_lollipops() {
        let g = DecoratedGraph::rose(2, 0).wedge_lollipop();
        let r = detect_features(&g).unwrap();
        assert_eq!(r.loops_at_basepoint, 2);
        assert_eq!(r.lollipops_at_basepoint, 1);
        assert!(r.iterated_lollipop_summand);
        assert!(detect_features(&DecoratedGraph::rose(1, 1)).is_err());
    }

    #[test]
    fn double_lollipop_types() {
        for (i, s) in double_lollipop_shapes().iter().enumerate() {
            let g = wedge(&DecoratedGraph::rose(1, 0), s);
            let r = detect_features(&g).unwrap();
            assert_eq!(r.double_lollipops_at_basepoint, vec![i as u8 + 1]);
            assert_eq!(r.lollipops_at_basepoint, 0);
            assert!(r.iterated_lollipop_summand);
        }
    }

    #[test]
    fn theta_summand() {
        let g = wedge(&DecoratedGraph::rose(1, 0), &theta_shape());
        let r = detect_features(&g).unwrap();
        assert_eq!((r.loops_at_basepoint, r.theta_summands), (1, 1));
        assert!(!r.iterated_lollipop_summand);
    }

    #[test]
    fn two_connected_graph_has_no_summand_features() {
        // K4 based at a vertex
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = DecoratedGraph::from_edges(4, 0, &edges, &[vec![3, 5, 4]]).unwrap();
        let r = detect_features(&g).unwrap();
        assert_eq!(r, FeatureReport::default());
    }

    #[test]
    fn summands_partition_edges() {
        let g = wedge(&wedge(&DecoratedGraph::rose(1, 0), &theta_shape()), &double_lollipop_shapes()[1]);
        let s = wedge_summands(&g);
        assert_eq!(s.len(), 3);
        let mut all: Vec<usize> = s.iter().flat_map(|x| x.edges.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.num_edges()).collect::<Vec<_>>());
    }
}
