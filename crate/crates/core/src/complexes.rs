//! Simplicial complexes, posets of good forests and the pieces of the
//! descending link built from them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blowup::{sigma_down, PartitionComplex};
use crate::forest::{admissible_forests, blow_down, optimal_edges, EdgeSet, Forest, ForestContext, ForestError};
use crate::graph::{DecoratedGraph, EdgeId};
use crate::homology::{join_betti, reduced_betti, BettiTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("simplex {0:?} is missing a face")]
    NotFaceClosed(Vec<u32>),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is not a good optimal edge")]
    NotGoodOptimal(EdgeId),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// A finite simplicial complex on vertices `0..`, stored by dimension with
/// every simplex sorted and each dimension sorted lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    fn from_all(mut all: Vec<Vec<u32>>) -> Self {
        for s in all.iter_mut() {
            s.sort_unstable();
        }
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let top = all.last().map(|s| s.len()).unwrap_or(0);
        let mut simplices = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { simplices, index }
    }

    /// Face closure of the given simplices.
    pub fn from_maximal(facets: Vec<Vec<u32>>) -> Self {
        let mut all = Vec::new();
        for f in facets {
            let mut f = f;
            f.sort_unstable();
            f.dedup();
            assert!(f.len() <= 24, "facet too large to close");
            for mask in 1u32..(1 << f.len()) {
                all.push(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        Self::from_all(all)
    }

    /// A complex from its full simplex list, rejecting lists that are not face closed.
    pub fn from_simplices(list: Vec<Vec<u32>>) -> Result<Self, ComplexError> {
        let c = Self::from_all(list.into_iter().filter(|s| !s.is_empty()).collect());
        for d in 1..c.simplices.len() {
            for s in &c.simplices[d] {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    if c.index_of(&face).is_none() {
                        return Err(ComplexError::NotFaceClosed(s.clone()));
                    }
                }
            }
        }
        Ok(c)
    }

    /// Cliques of a graph on `0..n` given by its adjacency matrix.
    pub fn clique_complex(n: usize, adj: &[Vec<bool>]) -> Self {
        let mut all = Vec::new();
        let mut stack: Vec<(Vec<u32>, Vec<usize>)> = (0..n).map(|v| (vec![v as u32], (v + 1..n).filter(|&w| adj[v][w]).collect())).collect();
        while let Some((s, cand)) = stack.pop() {
            for (i, &w) in cand.iter().enumerate() {
                let mut t = s.clone();
                t.push(w as u32);
                let next = cand[i + 1..].iter().copied().filter(|&x| adj[w][x]).collect();
                stack.push((t, next));
            }
            all.push(s);
        }
        Self::from_all(all)
    }

    /// The complex of chains of a strict partial order on `0..n`, where
    /// `less(i, j)` may only hold for `i < j`.
    pub fn order_complex(n: usize, less: impl Fn(usize, usize) -> bool) -> Self {
        let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| if i < j { less(i, j) } else { j < i && less(j, i) }).collect()).collect();
        Self::clique_complex(n, &adj)
    }

    /// Join with `other`, whose vertices are shifted past ours.
    pub fn join(&self, other: &Self) -> Self {
        let shift = self.num_vertices() as u32;
        let a: Vec<Vec<u32>> = self.all_simplices().cloned().collect();
        let b: Vec<Vec<u32>> = other.all_simplices().map(|s| s.iter().map(|v| v + shift).collect()).collect();
        let mut all = a.clone();
        all.extend(b.iter().cloned());
        for s in &a {
            for t in &b {
                let mut u = s.clone();
                u.extend_from_slice(t);
                all.push(u);
            }
        }
        Self::from_all(all)
    }

    /// One more than the largest vertex label.
    pub fn num_vertices(&self) -> usize {
        self.simplices.first().and_then(|l| l.last()).map(|s| s[0] as usize + 1).unwrap_or(0)
    }

    /// -1 for the empty complex.
    pub fn dim(&self) -> i32 {
        self.simplices.len() as i32 - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map(|l| l.len()).unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.simplices.iter().map(|l| l.len()).sum()
    }

    pub fn simplices(&self, d: usize) -> &[Vec<u32>] {
        self.simplices.get(d).map(|l| l.as_slice()).unwrap_or(&[])
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.simplices.iter().flatten()
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<u32>> {
        let mut covered: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    covered[d - 1][self.index[d - 1][&face]] = true;
                }
            }
        }
        self.all_simplices().zip(covered.iter().flatten()).filter(|(_, &c)| !c).map(|(s, _)| s.clone()).collect()
    }
}

/// Good admissible non-empty forests of a graph, ordered by inclusion.
/// Elements are sorted by size, then by bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestPoset {
    pub elements: Vec<Forest>,
}

impl ForestPoset {
    pub fn new(mut elements: Vec<Forest>) -> Self {
        elements.sort_by_key(|f| (f.len(), f.0));
        elements.dedup();
        ForestPoset { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, f: Forest) -> bool {
        self.elements.binary_search_by_key(&(f.len(), f.0), |x| (x.len(), x.0)).is_ok()
    }

    fn filtered(&self, keep: impl Fn(Forest) -> bool) -> Self {
        ForestPoset { elements: self.elements.iter().copied().filter(|&f| keep(f)).collect() }
    }

    pub fn order_complex(&self) -> SimplicialComplex {
        let el = &self.elements;
        SimplicialComplex::order_complex(el.len(), |i, j| el[i].is_proper_subset(el[j]))
    }

    /// Repeatedly remove beat points (elements whose strict up-set has a least
    /// element or whose strict down-set has a greatest one). The order
    /// complex keeps its homotopy type.
    pub fn core(&self) -> Self {
        let mut el = self.elements.clone();
        'outer: loop {
            for (x, &f) in el.iter().enumerate() {
                let up: Vec<Forest> = el.iter().copied().filter(|&g| f.is_proper_subset(g)).collect();
                let down: Vec<Forest> = el.iter().copied().filter(|&g| g.is_proper_subset(f)).collect();
                let has_min = up.iter().any(|&a| up.iter().all(|&b| a.is_subset(b)));
                let has_max = down.iter().any(|&a| down.iter().all(|&b| b.is_subset(a)));
                if has_min || has_max {
                    el.remove(x);
                    continue 'outer;
                }
            }
            break;
        }
        ForestPoset { elements: el }
    }

    /// Reduced Betti numbers of the order complex, computed on the core.
    pub fn betti(&self) -> BettiTable {
        reduced_betti(&self.core().order_complex())
    }
}

pub fn good_forest_poset(g: &DecoratedGraph) -> Result<ForestPoset, ComplexError> {
    let ctx = ForestContext::new(g);
    let mut good = Vec::new();
    for f in admissible_forests(g)? {
        if !f.is_empty() && ctx.is_good(f)? {
            good.push(f);
        }
    }
    Ok(ForestPoset::new(good))
}

fn check_edge(g: &DecoratedGraph, e: EdgeId) -> Result<(), ComplexError> {
    if e >= g.num_edges() {
        return Err(ComplexError::UnknownEdge(e));
    }
    Ok(())
}

/// Every good forest except the singleton `{e}`.
pub fn deletion(g: &DecoratedGraph, gp: &ForestPoset, e: EdgeId) -> Result<ForestPoset, ComplexError> {
    check_edge(g, e)?;
    Ok(gp.filtered(|f| f != EdgeSet::single(e)))
}

/// Good forests avoiding `e`.
pub fn strong_deletion(g: &DecoratedGraph, gp: &ForestPoset, e: EdgeId) -> Result<ForestPoset, ComplexError> {
    check_edge(g, e)?;
    Ok(gp.filtered(|f| !f.contains(e)))
}

/// Good forests that avoid `e`, or that are still good non-empty forests once
/// `e` is removed.
pub fn sufficiently_strong_deletion(g: &DecoratedGraph, gp: &ForestPoset, e: EdgeId) -> Result<ForestPoset, ComplexError> {
    check_edge(g, e)?;
    Ok(gp.filtered(|f| !f.contains(e) || (f.len() > 1 && gp.contains(f.without(e)))))
}

/// Forests strictly containing `{e}`.
pub fn link_in_poset(gp: &ForestPoset, e: EdgeId) -> ForestPoset {
    let s = EdgeSet::single(e);
    gp.filtered(|f| s.is_proper_subset(f))
}

/// Check that `F -> F/e` is an order isomorphism from the link of `{e}` onto
/// the good forest poset of the collapsed graph.
pub fn poset_iso_to_quotient(g: &DecoratedGraph, e: EdgeId) -> Result<bool, ComplexError> {
    check_edge(g, e)?;
    let gp = good_forest_poset(g)?;
    if !gp.contains(EdgeSet::single(e)) || !optimal_edges(g).contains(&e) {
        return Err(ComplexError::NotGoodOptimal(e));
    }
    let lk = link_in_poset(&gp, e);
    let con = blow_down(g, EdgeSet::single(e))?;
    let target = good_forest_poset(&con.graph)?;
    let images: Vec<Forest> = lk.elements.iter().map(|&f| con.image(f.without(e))).collect();
    if images.len() != target.len() || !images.iter().all(|&f| target.contains(f)) {
        return Ok(false);
    }
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != images.len() {
        return Ok(false);
    }
    for i in 0..images.len() {
        for j in 0..images.len() {
            if lk.elements[i].is_subset(lk.elements[j]) != images[i].is_subset(images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn down_link(g: &DecoratedGraph) -> Result<SimplicialComplex, ComplexError> {
    Ok(good_forest_poset(g)?.order_complex())
}

pub fn up_link_factors(g: &DecoratedGraph) -> Vec<PartitionComplex> {
    (0..g.num_vertices()).map(|v| sigma_down(g, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendingLink {
    pub down: BettiTable,
    pub up: BettiTable,
    pub total: BettiTable,
}

/// Betti numbers of the down-link, of the up-link (join of the descending
/// partition complexes) and of their join.
pub fn descending_link_betti(g: &DecoratedGraph) -> Result<DescendingLink, ComplexError> {
    let down = good_forest_poset(g)?.betti();
    let factors: Vec<BettiTable> = up_link_factors(g).iter().map(|f| reduced_betti(&f.complex)).collect();
    let up = join_betti(&factors);
    let total = join_betti(&[down.clone(), up.clone()]);
    Ok(DescendingLink { down, up, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> DecoratedGraph {
        DecoratedGraph::from_edges(2, 0, &[(0, 1), (0, 1), (0, 1)], &[]).unwrap()
    }

    #[test]
    fn order_complexes() {
        let anti = SimplicialComplex::order_complex(3, |_, _| false);
        assert_eq!((anti.count(0), anti.count(1)), (3, 0));
        let chain = SimplicialComplex::order_complex(2, |i, j| i < j);
        assert_eq!(chain.maximal_simplices(), vec![vec![0, 1]]);
        assert_eq!(SimplicialComplex::order_complex(0, |_, _| true).dim(), -1);
    }

    #[test]
    fn face_closure_is_checked() {
        assert!(SimplicialComplex::from_simplices(vec![vec![0, 1]]).is_err());
        assert!(SimplicialComplex::from_simplices(vec![vec![0], vec![1], vec![0, 1]]).is_ok());
    }

    #[test]
    fn join_matches_formula() {
        let s0 = SimplicialComplex::from_maximal(vec![vec![0], vec![1]]);
        let j = s0.join(&s0);
        assert_eq!(reduced_betti(&j), BettiTable::sphere(1));
        assert_eq!(s0.join(&SimplicialComplex::empty()), s0);
    }

    #[test]
    fn theta_poset() {
        let g = theta();
        let gp = good_forest_poset(&g).unwrap();
        assert_eq!(gp.elements, vec![EdgeSet::single(0), EdgeSet::single(1), EdgeSet::single(2)]);
        // three points: a wedge of two 0-spheres
        assert_eq!(gp.betti(), BettiTable::new(-1, vec![0, 2]));
        let p1 = deletion(&g, &gp, 0).unwrap();
        let p0 = strong_deletion(&g, &gp, 0).unwrap();
        assert_eq!(p1.elements, vec![EdgeSet::single(1), EdgeSet::single(2)]);
        assert_eq!(p0, p1);
        assert!(link_in_poset(&gp, 0).is_empty());
        assert!(poset_iso_to_quotient(&g, 0).unwrap());
        assert!(deletion(&g, &gp, 9).is_err());
    }

    #[test]
    fn lollipop_poset_empty() {
        let g = DecoratedGraph::rose(1, 0).wedge_lollipop();
        assert!(good_forest_poset(&g).unwrap().is_empty());
        assert!(good_forest_poset(&DecoratedGraph::rose(3, 0)).unwrap().is_empty());
    }

    #[test]
    fn core_keeps_homology() {
        // poset: a < c, b < c, a < d, b < d  (a circle); plus e > c,d (a cone)
        let el = [EdgeSet(1), EdgeSet(2), EdgeSet(7), EdgeSet(11), EdgeSet(15)];
        let gp = ForestPoset::new(el.to_vec());
        assert_eq!(gp.core().elements.len(), 1);
        let circle = ForestPoset::new(el[..4].to_vec());
        assert_eq!(circle.core().len(), 4);
        assert_eq!(circle.betti(), reduced_betti(&circle.order_complex()));
        assert_eq!(circle.betti(), BettiTable::sphere(1));
    }
}
