//! Distance levels, base vertices and the height function.
//!
//! The height of a graph is the sequence of triples `(m_i, n_i, d_i)`: the
//! number of base vertices at distance `i`, minus the number of vertices at
//! distance `i`, and the sum of `val - 2` over vertices not at distance `i`.
//! Heights are compared lexicographically on the flattened sequence.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::forest::{blow_down, components, Forest, ForestError};
use crate::graph::{DecoratedGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStructure {
    pub distance: Vec<usize>,
    /// `levels[i]` lists the vertices at distance `i`, sorted
    pub levels: Vec<Vec<VertexId>>,
}

impl LevelStructure {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

pub fn levels(g: &DecoratedGraph) -> LevelStructure {
    let distance = g.distances_from(g.basepoint());
    let depth = distance.iter().copied().filter(|&d| d != usize::MAX).max().unwrap_or(0);
    let mut levels = vec![Vec::new(); depth + 1];
    for (v, &d) in distance.iter().enumerate() {
        if d != usize::MAX {
            levels[d].push(v);
        }
    }
    LevelStructure { distance, levels }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseData {
    /// sorted
    pub base_vertices: Vec<VertexId>,
    /// per cycle, the least distance of one of its vertices
    pub base_height: Vec<usize>,
    pub is_base: Vec<bool>,
}

pub fn base_data(g: &DecoratedGraph, lv: &LevelStructure) -> BaseData {
    let mut is_base = vec![false; g.num_vertices()];
    let mut base_height = Vec::with_capacity(g.num_cycles());
    for c in 0..g.num_cycles() {
        let verts = g.cycle_vertices(c);
        let h = verts.iter().map(|&v| lv.distance[v]).min().unwrap_or(0);
        base_height.push(h);
        for v in verts {
            if lv.distance[v] == h {
                is_base[v] = true;
            }
        }
    }
    let base_vertices = (0..g.num_vertices()).filter(|&v| is_base[v]).collect();
    BaseData { base_vertices, base_height, is_base }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HeightTerm {
    pub m: i64,
    pub n: i64,
    pub d: i64,
}

/// `h(g)` evaluated to some depth; later entries are `(0, 0, total)` where
/// `total` is the sum of `val - 2` over all vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightVector {
    pub entries: Vec<HeightTerm>,
    pub total: i64,
}

impl HeightVector {
    pub fn entry(&self, i: usize) -> HeightTerm {
        self.entries.get(i).copied().unwrap_or(HeightTerm { m: 0, n: 0, d: self.total })
    }

    /// The first `3 * len` coordinates of the flattened sequence.
    pub fn flat(&self, len: usize) -> Vec<i64> {
        (0..len).flat_map(|i| {
            let t = self.entry(i);
            [t.m, t.n, t.d]
        })
        .collect()
    }
}

pub fn height(g: &DecoratedGraph, evaluation_depth: usize) -> HeightVector {
    let lv = levels(g);
    let bd = base_data(g, &lv);
    let excess: Vec<i64> = (0..g.num_vertices()).map(|v| g.valency(v) as i64 - 2).collect();
    let total: i64 = excess.iter().sum();
    let depth = evaluation_depth.max(lv.depth());
    let entries = (0..=depth)
        .map(|i| {
            let level: &[VertexId] = lv.levels.get(i).map(|l| l.as_slice()).unwrap_or(&[]);
            HeightTerm {
                m: level.iter().filter(|&&v| bd.is_base[v]).count() as i64,
                n: -(level.len() as i64),
                d: total - level.iter().map(|&v| excess[v]).sum::<i64>(),
            }
        })
        .collect();
    HeightVector { entries, total }
}

pub fn compare_heights(a: &HeightVector, b: &HeightVector) -> Ordering {
    let len = a.entries.len().max(b.entries.len()) + 1;
    a.flat(len).cmp(&b.flat(len))
}

/// Compare against a finite flat bound, padded with zeros.
pub fn compare_with_bound(h: &HeightVector, bound: &[i64]) -> Ordering {
    let len = h.entries.len().max(bound.len().div_ceil(3)) + 1;
    let flat = h.flat(len);
    let mut padded = bound.to_vec();
    padded.resize(flat.len(), 0);
    flat.cmp(&padded)
}

/// The flat bound `(0, -1, k + m + 1, -1, 0, ...)` cutting out graphs with the
/// basepoint undistinguished and weighted degree at most `k`.
pub fn membership_bound(k: usize, m: usize) -> Vec<i64> {
    vec![0, -1, (k + m + 1) as i64, -1]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    M,
    N,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Decrease,
    Increase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialTerm {
    pub level: usize,
    pub component: Component,
    pub direction: Direction,
}

/// First coordinate where `to` differs from `from`, or `None` if equal.
pub fn first_difference(from: &HeightVector, to: &HeightVector) -> Option<EssentialTerm> {
    let len = from.entries.len().max(to.entries.len()) + 1;
    let (a, b) = (from.flat(len), to.flat(len));
    let idx = (0..a.len()).find(|&i| a[i] != b[i])?;
    Some(EssentialTerm {
        level: idx / 3,
        component: [Component::M, Component::N, Component::D][idx % 3],
        direction: if b[idx] < a[idx] { Direction::Decrease } else { Direction::Increase },
    })
}

fn collapse_heights(g: &DecoratedGraph, f: Forest) -> Result<(HeightVector, HeightVector), ForestError> {
    let q = blow_down(g, f)?.graph;
    let depth = levels(g).depth().max(levels(&q).depth());
    Ok((height(g, depth), height(&q, depth)))
}

/// The lexicographically first coordinate changed by collapsing `f`.
pub fn essential_term(g: &DecoratedGraph, f: Forest) -> Result<EssentialTerm, ForestError> {
    if f.is_empty() {
        return Err(ForestError::Empty);
    }
    let (before, after) = collapse_heights(g, f)?;
    // a non-empty collapse always changes some coordinate in spine mode; in
    // generalized mode a bivalent vertex can make heights tie, reported as Empty
    first_difference(&before, &after).ok_or(ForestError::Empty)
}

/// Whether collapsing `f` lowers the height.
pub fn is_descending_blowdown(g: &DecoratedGraph, f: Forest) -> Result<bool, ForestError> {
    let (before, after) = collapse_heights(g, f)?;
    Ok(compare_heights(&after, &before) == Ordering::Less)
}

/// The four-case reading of the height change: compare base counts at level
/// `D(F)` before and after, and fall back to whether `F` joins two vertices of
/// that level. Computed by actually collapsing and recounting.
pub fn four_case_descending(g: &DecoratedGraph, f: Forest) -> Result<bool, ForestError> {
    if f.is_empty() {
        return Err(ForestError::Empty);
    }
    let lv = levels(g);
    let i = f
        .iter()
        .map(|e| {
            let (a, b) = g.edge_ends(e);
            lv.distance[a].min(lv.distance[b])
        })
        .min()
        .unwrap();
    let q = blow_down(g, f)?.graph;
    let count = |g: &DecoratedGraph| -> i64 {
        let lv = levels(g);
        let bd = base_data(g, &lv);
        bd.base_vertices.iter().filter(|&&v| lv.distance[v] == i).count() as i64
    };
    let before = count(g);
    let after = count(&q);
    if after != before {
        return Ok(after < before);
    }
    let comp = components(g, f)?;
    let mut roots = Vec::new();
    for e in f.iter() {
        let (a, b) = g.edge_ends(e);
        for v in [a, b] {
            if lv.distance[v] == i && !roots.contains(&v) {
                roots.push(v);
            }
        }
    }
    let joins = roots.iter().enumerate().any(|(x, &u)| roots[..x].iter().any(|&w| comp[w] == comp[u]));
    Ok(!joins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::EdgeSet;

    #[test]
    fn rose_levels() {
        let r = DecoratedGraph::rose(2, 1);
        let lv = levels(&r);
        assert_eq!(lv.depth(), 0);
        assert_eq!(lv.levels[0], vec![0]);
        let bd = base_data(&r, &lv);
        assert_eq!(bd.base_vertices, vec![0]);
        assert_eq!(bd.base_height, vec![0]);
        let h = height(&r, 0);
        assert_eq!(h.entries[0], HeightTerm { m: 1, n: -1, d: 0 });
    }

    #[test]
    fn loop_and_lollipop_height() {
        // independently: p has val 3 (loop + stick), v has val 3; d_0 excludes p
        let g = DecoratedGraph::rose(1, 0).wedge_lollipop();
        let h = height(&g, 1);
        assert_eq!(
            h.entries,
            vec![HeightTerm { m: 0, n: -1, d: 1 }, HeightTerm { m: 1, n: -1, d: 1 }]
        );
        let bd = base_data(&g, &levels(&g));
        assert_eq!(bd.base_vertices, vec![1]);
        assert_eq!(bd.base_height, vec![1]);
    }

    #[test]
    fn comparison() {
        let a = HeightVector { entries: vec![HeightTerm { m: 0, n: -1, d: 3 }], total: 3 };
        let b = HeightVector { entries: vec![HeightTerm { m: 1, n: -1, d: 0 }], total: 3 };
        assert_eq!(compare_heights(&a, &b), Ordering::Less);
        assert_eq!(compare_heights(&a, &a), Ordering::Equal);
    }

    #[test]
    fn stick_collapse_raises_m0() {
        let g = DecoratedGraph::rose(1, 0).wedge_lollipop();
        let stick = (0..g.num_edges()).find(|&e| !g.is_loop(e)).unwrap();
        let t = essential_term(&g, EdgeSet::single(stick)).unwrap();
        assert_eq!(t, EssentialTerm { level: 0, component: Component::M, direction: Direction::Increase });
        assert!(!is_descending_blowdown(&g, EdgeSet::single(stick)).unwrap());
        assert!(!four_case_descending(&g, EdgeSet::single(stick)).unwrap());
    }
}
