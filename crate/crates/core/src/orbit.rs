//! Quotient complexes of graphs of bounded weighted degree, built directly
//! from isomorphism classes of forest flags, and the stabilization maps that
//! wedge on a loop or a lollipop at the basepoint.
//!
//! A cell is a graph `G` with a strictly increasing chain of admissible
//! forests `F_1 < ... < F_p`, all of whose collapses keep the basepoint off
//! the cycles and the weighted degree within bound. Face 0 collapses `F_1`;
//! face `i` drops `F_i`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_labeling, CanonicalForm};
use crate::enumerate::{enumerate_graphs, Budget, Constraints, EnumerationError, Parameters};
use crate::forest::{admissible_forests, blow_down, Forest, ForestError};
use crate::graph::{DecoratedGraph, DecorationMode};
use crate::homology::{
    betti_numbers, induced_homology_map, BettiTable, ChainComplex, HomologyError, InducedMap, SparseMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("cell budget of {limit} exceeded in dimension {dimension}")]
    BudgetExceeded { limit: usize, dimension: usize },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("face {face} of a {dimension}-cell is not a cell")]
    MissingFace { dimension: usize, face: usize },
    #[error("the lollipop map needs unlabeled cycles")]
    WrongDecorationMode,
    #[error("image of a {0}-cell is not a cell of the target")]
    ImageNotACell(usize),
}

/// A graph with a flag of forests; `flag` is strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagCell {
    pub graph: DecoratedGraph,
    pub flag: Vec<Forest>,
}

impl FlagCell {
    pub fn dimension(&self) -> usize {
        self.flag.len()
    }

    /// Canonical key: the graph with each edge colored by the first flag
    /// member containing it.
    pub fn key(&self, mode: DecorationMode) -> CanonicalForm {
        let colors: Vec<u32> = (0..self.graph.num_edges())
            .map(|e| self.flag.iter().position(|f| f.contains(e)).map(|i| i as u32 + 1).unwrap_or(0))
            .collect();
        canonical_labeling(&self.graph, mode, Some(&colors)).form
    }

    pub fn face(&self, i: usize) -> Result<FlagCell, ForestError> {
        if i == 0 {
            let con = blow_down(&self.graph, self.flag[0])?;
            let flag = self.flag[1..].iter().map(|&f| con.image(f.minus(self.flag[0]))).collect();
            Ok(FlagCell { graph: con.graph, flag })
        } else {
            let mut flag = self.flag.clone();
            flag.remove(i - 1);
            Ok(FlagCell { graph: self.graph.clone(), flag })
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub params: Parameters,
    pub mode: DecorationMode,
    /// per dimension, cells sorted by key
    pub cells: Vec<Vec<FlagCell>>,
    pub keys: Vec<Vec<CanonicalForm>>,
    index: Vec<HashMap<CanonicalForm, usize>>,
    pub chains: ChainComplex,
}

impl QuotientComplex {
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn index_of(&self, key: &CanonicalForm) -> Option<(usize, usize)> {
        self.index.iter().enumerate().find_map(|(d, m)| m.get(key).map(|&i| (d, i)))
    }

    pub fn betti(&self) -> BettiTable {
        betti_numbers(&self.chains)
    }

    pub fn euler(&self) -> i64 {
        self.chains.euler()
    }
}

fn collapse_allowed(g: &DecoratedGraph, f: Forest, k: usize) -> Result<bool, ForestError> {
    let q = blow_down(g, f)?.graph;
    Ok(!q.basepoint_distinguished() && q.weighted_degree() <= k as i64)
}

fn chains_from(allowed: &[Forest], last: usize, flag: &mut Vec<Forest>, out: &mut Vec<Vec<Forest>>) {
    for j in last + 1..allowed.len() {
        if flag.last().is_none_or(|&f| f.is_proper_subset(allowed[j])) {
            flag.push(allowed[j]);
            out.push(flag.clone());
            chains_from(allowed, j, flag, out);
            flag.pop();
        }
    }
}

pub fn build_quotient_complex(
    params: Parameters,
    mode: DecorationMode,
    max_cells: usize,
) -> Result<QuotientComplex, OrbitError> {
    let graphs = enumerate_graphs(&params, &Constraints::spine(mode), &Budget { max_classes: max_cells })?;
    let mut by_key: Vec<HashMap<CanonicalForm, FlagCell>> = vec![HashMap::new()];
    let mut total = 0usize;
    for g in graphs {
        let cell = FlagCell { graph: g, flag: Vec::new() };
        by_key[0].insert(cell.key(mode), cell);
        total += 1;
    }
    // forests of each base graph, sorted by size so chains come out increasing
    let mut bases: Vec<(CanonicalForm, DecoratedGraph)> =
        by_key[0].iter().map(|(k, c)| (k.clone(), c.graph.clone())).collect();
    bases.sort_by(|a, b| a.0.cmp(&b.0));
    let bases: Vec<DecoratedGraph> = bases.into_iter().map(|(_, g)| g).collect();
    for g in &bases {
        let mut allowed = Vec::new();
        for f in admissible_forests(g)? {
            if collapse_allowed(g, f, params.k)? {
                allowed.push(f);
            }
        }
        allowed.sort_by_key(|f| (f.len(), f.0));
        let mut chains = Vec::new();
        for i in 0..allowed.len() {
            let mut flag = vec![allowed[i]];
            chains.push(flag.clone());
            chains_from(&allowed, i, &mut flag, &mut chains);
        }
        for flag in chains {
            let d = flag.len();
            if by_key.len() <= d {
                by_key.resize_with(d + 1, HashMap::new);
            }
            let cell = FlagCell { graph: g.clone(), flag };
            let key = cell.key(mode);
            if let std::collections::hash_map::Entry::Vacant(e) = by_key[d].entry(key) {
                e.insert(cell);
                total += 1;
                if total > max_cells {
                    return Err(OrbitError::BudgetExceeded { limit: max_cells, dimension: d });
                }
            }
        }
    }
    let mut cells: Vec<Vec<FlagCell>> = Vec::new();
    let mut keys: Vec<Vec<CanonicalForm>> = Vec::new();
    let mut index = Vec::new();
    for level in by_key {
        let mut v: Vec<(CanonicalForm, FlagCell)> = level.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        index.push(v.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect::<HashMap<_, _>>());
        keys.push(v.iter().map(|(k, _)| k.clone()).collect());
        cells.push(v.into_iter().map(|(_, c)| c).collect());
    }
    let mut boundaries = Vec::new();
    for d in 1..cells.len() {
        let mut cols = Vec::with_capacity(cells[d].len());
        for c in &cells[d] {
            let mut col: HashMap<usize, i64> = HashMap::new();
            for i in 0..=d {
                let face = c.face(i)?;
                let &r = index[d - 1].get(&face.key(mode)).ok_or(OrbitError::MissingFace { dimension: d, face: i })?;
                *col.entry(r).or_insert(0) += if i % 2 == 0 { 1 } else { -1 };
            }
            cols.push(col.into_iter().collect());
        }
        boundaries.push(SparseMatrix::from_columns(cells[d - 1].len(), cols));
    }
    let chains = ChainComplex::new(0, cells.iter().map(|c| c.len()).collect(), boundaries)?;
    Ok(QuotientComplex { params, mode, cells, keys, index, chains })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stabilization {
    /// wedge an undistinguished loop: `n -> n + 1`
    Nu,
    /// wedge a lollipop: `m -> m + 1`
    Mu,
}

/// Per dimension, the target index of each source cell.
#[derive(Clone, Debug)]
pub struct CellMap {
    pub kind: Stabilization,
    pub images: Vec<Vec<usize>>,
}

impl CellMap {
    pub fn is_injective(&self) -> bool {
        self.images.iter().all(|v| {
            let mut s = v.clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Injective and onto every target dimension.
    pub fn is_bijective(&self, target: &QuotientComplex) -> bool {
        let counts = target.cell_counts();
        self.is_injective()
            && self.images.len() == counts.len()
            && self.images.iter().zip(&counts).all(|(v, &c)| v.len() == c)
    }

    /// Signed form for the homology engine; wedging never reorders a flag.
    pub fn signed(&self) -> Vec<Vec<(usize, i64)>> {
        self.images.iter().map(|v| v.iter().map(|&i| (i, 1)).collect()).collect()
    }
}

fn stabilize(cell: &FlagCell, kind: Stabilization) -> FlagCell {
    let graph = match kind {
        Stabilization::Nu => cell.graph.wedge_loop(),
        Stabilization::Mu => cell.graph.wedge_lollipop(),
    };
    FlagCell { graph, flag: cell.flag.clone() }
}

pub fn stabilization_map(
    kind: Stabilization,
    source: &QuotientComplex,
    target: &QuotientComplex,
) -> Result<CellMap, OrbitError> {
    if kind == Stabilization::Mu && source.mode != DecorationMode::UnlabeledUnoriented {
        return Err(OrbitError::WrongDecorationMode);
    }
    let mut images = Vec::new();
    for (d, level) in source.cells.iter().enumerate() {
        let mut v = Vec::with_capacity(level.len());
        for c in level {
            let key = stabilize(c, kind).key(target.mode);
            let &i = target.index.get(d).and_then(|m| m.get(&key)).ok_or(OrbitError::ImageNotACell(d))?;
            v.push(i);
        }
        images.push(v);
    }
    Ok(CellMap { kind, images })
}

pub fn nu_map(source: &QuotientComplex, target: &QuotientComplex) -> Result<CellMap, OrbitError> {
    stabilization_map(Stabilization::Nu, source, target)
}

pub fn mu_map(source: &QuotientComplex, target: &QuotientComplex) -> Result<CellMap, OrbitError> {
    stabilization_map(Stabilization::Mu, source, target)
}

/// Whether stabilizing commutes with every face map.
pub fn faces_commute(map: &CellMap, source: &QuotientComplex, target: &QuotientComplex) -> Result<bool, OrbitError> {
    for (d, level) in source.cells.iter().enumerate().skip(1) {
        for (ci, c) in level.iter().enumerate() {
            let image = &target.cells[d][map.images[d][ci]];
            for i in 0..=d {
                let a = stabilize(&c.face(i)?, map.kind).key(target.mode);
                let b = image.face(i)?.key(target.mode);
                if a != b {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn induced_map(map: &CellMap, source: &QuotientComplex, target: &QuotientComplex) -> Result<Vec<InducedMap>, OrbitError> {
    let mut signed = map.signed();
    signed.resize(source.chains.cells.len(), Vec::new());
    Ok(induced_homology_map(&source.chains, &target.chains, &signed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::MapVerdict;

    const UN: DecorationMode = DecorationMode::UnlabeledUnoriented;

    #[test]
    fn degree_zero_is_a_point() {
        for n in 1..4 {
            let q = build_quotient_complex(Parameters::new(n, 0, 0), UN, 10_000).unwrap();
            assert_eq!(q.cell_counts(), vec![1]);
            assert_eq!(q.betti(), BettiTable::new(0, vec![1]));
        }
    }

    #[test]
    fn small_complex_is_consistent() {
        let q = build_quotient_complex(Parameters::new(2, 0, 1), UN, 100_000).unwrap();
        assert!(q.cell_counts().len() >= 2);
        assert_eq!(q.betti().euler(), q.euler());
        assert_eq!(q.betti().get(0), 1);
    }

    #[test]
    fn nu_is_bijective_in_range() {
        let a = build_quotient_complex(Parameters::new(3, 0, 1), UN, 100_000).unwrap();
        let b = build_quotient_complex(Parameters::new(4, 0, 1), UN, 100_000).unwrap();
        let map = nu_map(&a, &b).unwrap();
        assert!(map.is_bijective(&b));
        assert!(faces_commute(&map, &a, &b).unwrap());
        let v = induced_map(&map, &a, &b).unwrap();
        assert!(v.iter().all(|m| m.verdict == MapVerdict::Iso));
    }

    #[test]
    fn mu_needs_unlabeled_mode() {
        let a = build_quotient_complex(Parameters::new(1, 0, 0), DecorationMode::LabeledOriented, 100).unwrap();
        let b = build_quotient_complex(Parameters::new(1, 1, 0), DecorationMode::LabeledOriented, 100).unwrap();
        assert!(matches!(mu_map(&a, &b), Err(OrbitError::WrongDecorationMode)));
    }
}
