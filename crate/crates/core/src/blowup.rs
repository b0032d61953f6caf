//! Single-edge blow-ups as two-block partitions of the half-edges at a vertex,
//! and the complex of descending partitions at a vertex.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::SimplicialComplex;
use crate::enumerate::movable_blocks;
use crate::graph::{DecoratedGraph, HalfEdge, VertexId};
use crate::morse::{compare_heights, height, levels, LevelStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("partitions live at different vertices ({0} and {1})")]
    DifferentVertices(VertexId, VertexId),
    #[error("illegal partition at vertex {vertex}: {reason}")]
    Illegal { vertex: VertexId, reason: &'static str },
}

/// A split of the half-edges at `vertex`: `moved` goes to the new vertex,
/// `stay` remains. Away from the basepoint `stay` holds the least half-edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    pub vertex: VertexId,
    pub moved: Vec<HalfEdge>,
    pub stay: Vec<HalfEdge>,
}

impl Partition {
    /// Build the partition moving `moved` off `v`, normalizing away from the basepoint.
    pub fn new(g: &DecoratedGraph, v: VertexId, moved: &[HalfEdge]) -> Result<Self, BlowupError> {
        if v >= g.num_vertices() {
            return Err(BlowupError::Illegal { vertex: v, reason: "no such vertex" });
        }
        let at = g.half_edges_at(v);
        if moved.iter().any(|h| !at.contains(h)) {
            return Err(BlowupError::Illegal { vertex: v, reason: "half-edge not at vertex" });
        }
        let mut moved: Vec<HalfEdge> = moved.to_vec();
        moved.sort_unstable();
        moved.dedup();
        let mut stay: Vec<HalfEdge> = at.iter().copied().filter(|h| !moved.contains(h)).collect();
        stay.sort_unstable();
        if v == g.basepoint() {
            if moved.len() < 2 || stay.is_empty() {
                return Err(BlowupError::Illegal { vertex: v, reason: "basepoint split needs a moved block of 2 and a stay block of 1" });
            }
        } else {
            if moved.len() < 2 || stay.len() < 2 {
                return Err(BlowupError::Illegal { vertex: v, reason: "both blocks need at least two half-edges" });
            }
            if moved.first() < stay.first() {
                std::mem::swap(&mut moved, &mut stay);
            }
        }
        Ok(Partition { vertex: v, moved, stay })
    }

    /// Whether `a` and `b` end up on different sides.
    pub fn separates(&self, a: HalfEdge, b: HalfEdge) -> bool {
        self.moved.contains(&a) != self.moved.contains(&b)
    }
}

/// All legal partitions at `v`; at the basepoint both choices of which block
/// stays are listed.
pub fn partitions_at(g: &DecoratedGraph, v: VertexId) -> Vec<Partition> {
    movable_blocks(g, v)
        .into_iter()
        .map(|moved| Partition::new(g, v, &moved).expect("movable blocks are legal"))
        .collect()
}

/// Two distinct splits are compatible when both blow-ups can be performed
/// together: one moved block contains the other, or they are disjoint.
pub fn compatible(a: &Partition, b: &Partition) -> Result<bool, BlowupError> {
    if a.vertex != b.vertex {
        return Err(BlowupError::DifferentVertices(a.vertex, b.vertex));
    }
    if a.moved == b.moved {
        return Ok(false);
    }
    let sub = |x: &[HalfEdge], y: &[HalfEdge]| x.iter().all(|h| y.contains(h));
    let disjoint = a.moved.iter().all(|h| !b.moved.contains(h));
    Ok(sub(&a.moved, &b.moved) || sub(&b.moved, &a.moved) || disjoint)
}

fn check_legal(g: &DecoratedGraph, alpha: &Partition) -> Result<(), BlowupError> {
    let again = Partition::new(g, alpha.vertex, &alpha.moved)?;
    if again.moved != alpha.moved && again.stay != alpha.moved {
        return Err(BlowupError::Illegal { vertex: alpha.vertex, reason: "blocks do not cover the vertex" });
    }
    Ok(())
}

/// The blown-up graph; the new vertex is last and the new edge is last.
pub fn realize_blowup(g: &DecoratedGraph, alpha: &Partition) -> Result<DecoratedGraph, BlowupError> {
    check_legal(g, alpha)?;
    Ok(g.split_vertex(alpha.vertex, &alpha.moved))
}

pub fn is_descending_partition(g: &DecoratedGraph, alpha: &Partition) -> Result<bool, BlowupError> {
    let up = realize_blowup(g, alpha)?;
    let depth = levels(g).depth().max(levels(&up).depth());
    Ok(compare_heights(&height(&up, depth), &height(g, depth)) == Ordering::Less)
}

/// Half-edges at `v` whose other end is one level closer to the basepoint.
pub fn down_half_edges(g: &DecoratedGraph, lv: &LevelStructure, v: VertexId) -> Vec<HalfEdge> {
    g.half_edges_at(v)
        .iter()
        .copied()
        .filter(|&h| lv.distance[g.vertex_of(h ^ 1)] + 1 == lv.distance[v])
        .collect()
}

/// The distinguished half-edges at `v`, if `v` is on a cycle.
pub fn distinguished_half_edges(g: &DecoratedGraph, v: VertexId) -> Vec<HalfEdge> {
    g.half_edges_at(v).iter().copied().filter(|&h| g.is_distinguished_half_edge(h)).collect()
}

/// The partition splitting the two distinguished half-edges at `v` from the rest.
pub fn cycle_pushing_partition(g: &DecoratedGraph, v: VertexId) -> Option<Partition> {
    let c = distinguished_half_edges(g, v);
    if c.len() != 2 {
        return None;
    }
    Partition::new(g, v, &c).ok()
}

/// Descending partitions at a vertex and the clique complex of compatibility.
#[derive(Clone, Debug)]
pub struct PartitionComplex {
    pub vertex: VertexId,
    pub partitions: Vec<Partition>,
    pub complex: SimplicialComplex,
}

pub fn sigma_down(g: &DecoratedGraph, v: VertexId) -> PartitionComplex {
    let partitions: Vec<Partition> = partitions_at(g, v)
        .into_iter()
        .filter(|a| is_descending_partition(g, a).expect("listed partitions are legal"))
        .collect();
    let complex = compatibility_complex(&partitions);
    PartitionComplex { vertex: v, partitions, complex }
}

/// All partitions at `v` with their compatibility complex.
pub fn sigma_full(g: &DecoratedGraph, v: VertexId) -> PartitionComplex {
    let partitions = partitions_at(g, v);
    let complex = compatibility_complex(&partitions);
    PartitionComplex { vertex: v, partitions, complex }
}

fn compatibility_complex(partitions: &[Partition]) -> SimplicialComplex {
    let n = partitions.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && compatible(&partitions[i], &partitions[j]).unwrap()).collect())
        .collect();
    SimplicialComplex::clique_complex(n, &adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::reduced_betti;

    fn star(val: usize) -> DecoratedGraph {
        // p joined to v by `val` parallel edges: v has valency `val`
        let edges: Vec<(usize, usize)> = (0..val).map(|_| (0, 1)).collect();
        DecoratedGraph::from_edges(2, 0, &edges, &[]).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert!(partitions_at(&star(3), 1).is_empty());
        assert_eq!(partitions_at(&star(4), 1).len(), 3);
        assert_eq!(partitions_at(&star(5), 1).len(), 10);
        // basepoint of valency 3: moved pairs, each with a singleton staying
        assert_eq!(partitions_at(&star(3), 0).len(), 3);
    }

    #[test]
    fn compatibility_rules() {
        let g = star(5);
        let hs: Vec<usize> = g.half_edges_at(1).to_vec();
        let p = |m: &[usize]| Partition::new(&g, 1, &m.iter().map(|&i| hs[i]).collect::<Vec<_>>()).unwrap();
        let a = p(&[0, 1]);
        assert!(!compatible(&a, &a).unwrap());
        assert!(compatible(&p(&[3, 4]), &p(&[2, 3, 4])).unwrap());
        assert!(!compatible(&p(&[0, 1]), &p(&[0, 2])).unwrap());
        // disjoint small blocks
        assert!(compatible(&p(&[1, 2]), &p(&[3, 4])).unwrap());
        let other = Partition::new(&star(4), 0, &[0, 2]).unwrap();
        assert!(compatible(&a, &other).is_err());
    }

    #[test]
    fn five_valent_complex_is_petersen() {
        let s = sigma_full(&star(5), 1);
        assert_eq!(s.complex.count(0), 10);
        assert_eq!(s.complex.count(1), 15);
        assert_eq!(s.complex.count(2), 0);
        assert_eq!(reduced_betti(&s.complex).values, vec![0, 0, 6]);
    }

    #[test]
    fn blowup_inverse_by_collapse() {
        let g = star(5);
        for alpha in partitions_at(&g, 1) {
            let up = realize_blowup(&g, &alpha).unwrap();
            let new_edge = up.num_edges() - 1;
            let back = crate::forest::blow_down(&up, crate::forest::EdgeSet::single(new_edge)).unwrap().graph;
            assert!(crate::canon::is_isomorphic(&back, &g, crate::graph::DecorationMode::LabeledOriented));
        }
    }

    #[test]
    fn illegal_partitions() {
        let g = star(4);
        let h = g.half_edges_at(1)[0];
        assert!(Partition::new(&g, 1, &[h]).is_err());
        assert!(Partition::new(&g, 1, &[0, 2]).is_err());
    }
}
