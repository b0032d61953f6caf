//! Exact homology over the rationals by integer elimination.
//!
//! Unit pivots are eliminated sparsely with unimodular column operations in
//! `i64` (restarting in `BigInt` if anything overflows); whatever survives goes
//! through a dense Smith reduction. Torsion falls out of the dense part and is
//! reported, never asserted on.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("simplex {0:?} has a face that is not in the complex")]
    NotFaceClosed(Vec<u32>),
    #[error("boundary of boundary is non-zero in dimension {0}")]
    BoundarySquare(i32),
    #[error("cell map does not commute with the boundary in dimension {0}")]
    NotAChainMap(i32),
}

/// Entry type for elimination: exact, with overflow signalled by `None`.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Column-major sparse matrix; each column sorted by row with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T = i64> {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn from_columns(rows: usize, mut columns: Vec<Vec<(usize, T)>>) -> Self {
        for c in columns.iter_mut() {
            c.retain(|(_, v)| !v.is_nil());
            c.sort_by_key(|e| e.0);
        }
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn to_big(&self) -> SparseMatrix<BigInt> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| c.iter().map(|(r, v)| (*r, v.to_big())).collect()).collect(),
        }
    }

    pub fn dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.to_big();
            }
        }
        d
    }
}

/// `a - f * b` on sorted sparse columns.
fn axpy<T: Scalar>(a: &[(usize, T)], f: &T, b: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, T::nil().sub(&f.mul(&b[j].1)?)?));
            j += 1;
        } else {
            let v = a[i].1.sub(&f.mul(&b[j].1)?)?;
            if !v.is_nil() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmithSummary {
    pub rank: usize,
    /// diagonal entries larger than one, in no particular order
    pub torsion: Vec<BigInt>,
}

/// Unimodular elimination of unit pivots; returns the pivot count and the
/// surviving columns, or `None` on overflow.
fn unit_elimination<T: Scalar>(m: &SparseMatrix<T>) -> Option<(usize, Vec<Vec<(usize, T)>>)> {
    let mut cols = m.columns.clone();
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for (r, _) in c {
            row_cols[*r].push(j);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut pivots = 0;
    loop {
        let mut progress = false;
        for c in 0..cols.len() {
            if !alive[c] || cols[c].is_empty() {
                continue;
            }
            let best = cols[c]
                .iter()
                .filter(|(_, v)| v.is_unit())
                .min_by_key(|(r, _)| row_cols[*r].len())
                .map(|(r, v)| (*r, v.clone()));
            let Some((r, u)) = best else { continue };
            alive[c] = false;
            pivots += 1;
            progress = true;
            let pivot_col = std::mem::take(&mut cols[c]);
            let mut touched = std::mem::take(&mut row_cols[r]);
            touched.sort_unstable();
            touched.dedup();
            for c2 in touched {
                if c2 == c || !alive[c2] {
                    continue;
                }
                let Ok(pos) = cols[c2].binary_search_by_key(&r, |e| e.0) else { continue };
                // u is ±1, so u is its own inverse
                let f = cols[c2][pos].1.mul(&u)?;
                let new = axpy(&cols[c2], &f, &pivot_col)?;
                for (r2, _) in &new {
                    if cols[c2].binary_search_by_key(r2, |e| e.0).is_err() {
                        row_cols[*r2].push(c2);
                    }
                }
                cols[c2] = new;
            }
        }
        if !progress {
            break;
        }
    }
    let rest = cols.into_iter().enumerate().filter(|(j, c)| alive[*j] && !c.is_empty()).map(|(_, c)| c).collect();
    Some((pivots, rest))
}

/// Nonzero diagonal of a dense diagonalization, by absolute value.
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // move the smallest remainder in row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn smith_generic<T: Scalar>(m: &SparseMatrix<T>) -> Option<SmithSummary> {
    let (units, rest) = unit_elimination(m)?;
    if rest.is_empty() {
        return Some(SmithSummary { rank: units, torsion: Vec::new() });
    }
    let mut rows: Vec<usize> = rest.iter().flat_map(|c| c.iter().map(|e| e.0)).collect();
    rows.sort_unstable();
    rows.dedup();
    let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); rest.len()]; rows.len()];
    for (j, c) in rest.iter().enumerate() {
        for (r, v) in c {
            dense[pos[r]][j] = v.to_big();
        }
    }
    let diag = dense_diagonal(dense);
    let torsion = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    Some(SmithSummary { rank: units + diag.len(), torsion })
}

/// Rank and non-unit diagonal entries of a Smith-type diagonalization.
pub fn smith(m: &SparseMatrix<i64>) -> SmithSummary {
    smith_generic(m).unwrap_or_else(|| smith_generic(&m.to_big()).expect("bigint never overflows"))
}

pub fn rank(m: &SparseMatrix<i64>) -> usize {
    smith(m).rank
}

pub fn rank_big(m: &SparseMatrix<BigInt>) -> usize {
    smith_generic(m).expect("bigint never overflows").rank
}

/// A basis of the rational kernel, as integer vectors.
pub fn kernel_basis(m: &SparseMatrix<i64>) -> Vec<Vec<(usize, BigInt)>> {
    let big = m.to_big();
    let mut pivot_of_row: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(big.cols);
    let mut track: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(big.cols);
    let mut kernel = Vec::new();
    for j in 0..big.cols {
        let mut col = big.columns[j].clone();
        let mut v = vec![(j, BigInt::one())];
        while let Some((low, a)) = col.last().cloned() {
            let Some(&k) = pivot_of_row.get(&low) else { break };
            let b = reduced[k].last().unwrap().1.clone();
            // col := b*col - a*col_k, same on the tracking vector
            let scale = |x: &[(usize, BigInt)]| x.iter().map(|(r, y)| (*r, y * &b)).collect::<Vec<_>>();
            col = axpy(&scale(&col), &a, &reduced[k]).unwrap();
            v = axpy(&scale(&v), &a, &track[k]).unwrap();
            let g = col.iter().chain(v.iter()).fold(BigInt::zero(), |g, (_, y)| g.gcd(y));
            if !g.is_zero() && !g.is_one() {
                for e in col.iter_mut().chain(v.iter_mut()) {
                    e.1 /= &g;
                }
            }
        }
        if col.is_empty() {
            kernel.push(v.clone());
        } else {
            pivot_of_row.insert(col.last().unwrap().0, j);
        }
        reduced.push(col);
        track.push(v);
    }
    kernel
}

/// Reduced (or plain) Betti numbers indexed from dimension `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiTable {
    pub start: i32,
    pub values: Vec<u64>,
}

impl BettiTable {
    pub fn new(start: i32, mut values: Vec<u64>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        BettiTable { start, values }
    }

    /// The reduced table of `S^d` (`d = -1` is the empty complex).
    pub fn sphere(d: i32) -> Self {
        let mut values = vec![0; (d + 2) as usize];
        values[(d + 1) as usize] = 1;
        BettiTable::new(-1, values)
    }

    pub fn get(&self, d: i32) -> u64 {
        if d < self.start {
            return 0;
        }
        self.values.get((d - self.start) as usize).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.values.iter().all(|&b| b == 0)
    }

    /// Zero outside dimension `d`; a zero table is concentrated everywhere.
    pub fn is_concentrated(&self, d: i32) -> bool {
        self.values.iter().enumerate().all(|(i, &b)| b == 0 || i as i32 + self.start == d)
    }

    /// The dimensions carrying nonzero Betti numbers.
    pub fn support(&self) -> Vec<i32> {
        self.values.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i as i32 + self.start).collect()
    }

    pub fn euler(&self) -> i64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &b)| if (i as i32 + self.start).rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub fn is_acyclic(t: &BettiTable) -> bool {
    t.is_acyclic()
}

pub fn is_concentrated(t: &BettiTable, d: i32) -> bool {
    t.is_concentrated(d)
}

/// Reduced Betti numbers of a join, from reduced tables (starting at -1).
pub fn join_betti(tables: &[BettiTable]) -> BettiTable {
    let mut acc = vec![1u64];
    for t in tables {
        assert_eq!(t.start, -1, "join needs reduced tables");
        if t.values.is_empty() {
            return BettiTable::new(-1, Vec::new());
        }
        let mut next = vec![0u64; acc.len() + t.values.len() - 1];
        for (a, x) in acc.iter().enumerate() {
            for (b, y) in t.values.iter().enumerate() {
                next[a + b] += x * y;
            }
        }
        acc = next;
    }
    BettiTable::new(-1, acc)
}

/// Free chain complex: `cells[j]` generators in dimension `start + j`, and
/// `boundaries[j]` mapping dimension `start + j + 1` to `start + j`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub start: i32,
    pub cells: Vec<usize>,
    pub boundaries: Vec<SparseMatrix<i64>>,
}

impl ChainComplex {
    pub fn new(start: i32, cells: Vec<usize>, boundaries: Vec<SparseMatrix<i64>>) -> Result<Self, HomologyError> {
        let cc = ChainComplex { start, cells, boundaries };
        cc.check_square()?;
        Ok(cc)
    }

    /// The boundary out of dimension `d`, if any.
    pub fn boundary(&self, d: i32) -> Option<&SparseMatrix<i64>> {
        let j = d - self.start - 1;
        if j < 0 {
            return None;
        }
        self.boundaries.get(j as usize)
    }

    pub fn count(&self, d: i32) -> usize {
        let j = d - self.start;
        if j < 0 {
            return 0;
        }
        self.cells.get(j as usize).copied().unwrap_or(0)
    }

    fn check_square(&self) -> Result<(), HomologyError> {
        for j in 1..self.boundaries.len() {
            let (lower, upper) = (&self.boundaries[j - 1], &self.boundaries[j]);
            for col in &upper.columns {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (r, v) in col {
                    for (r2, w) in &lower.columns[*r] {
                        *acc.entry(*r2).or_insert(0) += v * w;
                    }
                }
                if acc.values().any(|&x| x != 0) {
                    return Err(HomologyError::BoundarySquare(self.start + j as i32 + 1));
                }
            }
        }
        Ok(())
    }

    pub fn euler(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, &c)| if (i as i32 + self.start).rem_euclid(2) == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

static EULER_CHECKED: AtomicU64 = AtomicU64::new(0);
static EULER_FAILED: AtomicU64 = AtomicU64::new(0);

/// How many homology computations have had their Euler characteristic
/// compared with the cell count, and how many disagreed.
pub fn euler_audit() -> (u64, u64) {
    (EULER_CHECKED.load(AtomicOrdering::Relaxed), EULER_FAILED.load(AtomicOrdering::Relaxed))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub betti: BettiTable,
    /// per dimension, the non-unit diagonal entries of the incoming boundary
    pub torsion: Vec<(i32, Vec<BigInt>)>,
}

pub fn homology(cc: &ChainComplex) -> HomologyReport {
    let smiths: Vec<SmithSummary> = cc.boundaries.iter().map(smith).collect();
    let rank_at = |j: usize| smiths.get(j).map(|s| s.rank).unwrap_or(0);
    let values: Vec<u64> = (0..cc.cells.len())
        .map(|j| {
            let out = if j == 0 { 0 } else { rank_at(j - 1) };
            (cc.cells[j] - out - rank_at(j)) as u64
        })
        .collect();
    let torsion = smiths
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.torsion.is_empty())
        .map(|(j, s)| (cc.start + j as i32, s.torsion.clone()))
        .collect();
    let betti = BettiTable::new(cc.start, values);
    EULER_CHECKED.fetch_add(1, AtomicOrdering::Relaxed);
    if betti.euler() != cc.euler() {
        EULER_FAILED.fetch_add(1, AtomicOrdering::Relaxed);
    }
    HomologyReport { betti, torsion }
}

pub fn betti_numbers(cc: &ChainComplex) -> BettiTable {
    homology(cc).betti
}

/// Simplicial chains; with `augmented` the empty simplex sits in dimension -1.
pub fn chain_complex_of(c: &SimplicialComplex, augmented: bool) -> Result<ChainComplex, HomologyError> {
    let top = c.dim();
    let start = if augmented { -1 } else { 0 };
    let mut cells = Vec::new();
    if augmented {
        cells.push(1);
    }
    for d in 0..=top.max(-1) {
        cells.push(c.count(d as usize));
    }
    let mut boundaries = Vec::new();
    if augmented && top >= 0 {
        let cols = (0..c.count(0)).map(|_| vec![(0usize, 1i64)]).collect();
        boundaries.push(SparseMatrix::from_columns(1, cols));
    }
    for d in 1..=top.max(0) {
        let d = d as usize;
        let mut cols = Vec::with_capacity(c.count(d));
        for s in c.simplices(d) {
            let mut col = Vec::with_capacity(d + 1);
            for i in 0..=d {
                let mut face = s.clone();
                face.remove(i);
                let r = c.index_of(&face).ok_or_else(|| HomologyError::NotFaceClosed(s.clone()))?;
                col.push((r, if i % 2 == 0 { 1 } else { -1 }));
            }
            cols.push(col);
        }
        boundaries.push(SparseMatrix::from_columns(c.count(d - 1), cols));
    }
    ChainComplex::new(start, cells, boundaries)
}

pub fn reduced_betti(c: &SimplicialComplex) -> BettiTable {
    betti_numbers(&chain_complex_of(c, true).expect("complexes are face closed by construction"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapVerdict {
    Iso,
    InjectiveNotSurjective,
    SurjectiveNotInjective,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMap {
    pub dimension: i32,
    pub source_betti: u64,
    pub target_betti: u64,
    pub rank: u64,
    pub verdict: MapVerdict,
}

/// A chain map sending each source cell to `±` one target cell; `cell_map[d]`
/// lists `(target index, sign)` per source cell in dimension `start + d`.
pub fn induced_homology_map(
    source: &ChainComplex,
    target: &ChainComplex,
    cell_map: &[Vec<(usize, i64)>],
) -> Result<Vec<InducedMap>, HomologyError> {
    assert_eq!(source.start, target.start);
    let dims = source.cells.len();
    // chain map check: boundary(f(c)) = f(boundary(c))
    for j in 1..dims {
        let d = source.start + j as i32;
        let Some(sb) = source.boundary(d) else { continue };
        let tb = target.boundary(d);
        for (c, col) in sb.columns.iter().enumerate() {
            let mut lhs: HashMap<usize, i64> = HashMap::new();
            let (tc, sign) = cell_map[j][c];
            if let Some(tb) = tb {
                for (r, v) in &tb.columns[tc] {
                    *lhs.entry(*r).or_insert(0) += sign * v;
                }
            }
            for (r, v) in col {
                let (tr, s2) = cell_map[j - 1][*r];
                *lhs.entry(tr).or_insert(0) -= s2 * v;
            }
            if lhs.values().any(|&x| x != 0) {
                return Err(HomologyError::NotAChainMap(d));
            }
        }
    }
    let sh = betti_numbers(source);
    let th = betti_numbers(target);
    let mut out = Vec::new();
    for j in 0..dims {
        let d = source.start + j as i32;
        let zeros = match source.boundary(d) {
            Some(b) => kernel_basis(b),
            None => (0..source.cells[j]).map(|c| vec![(c, BigInt::one())]).collect(),
        };
        let rows = target.count(d);
        let mut cols: Vec<Vec<(usize, BigInt)>> = target
            .boundary(d + 1)
            .map(|b| b.to_big().columns)
            .unwrap_or_default();
        let boundary_rank = rank_big(&SparseMatrix::from_columns(rows, cols.clone()));
        for z in zeros {
            cols.push(z.into_iter().map(|(c, v)| (cell_map[j][c].0, v * cell_map[j][c].1)).collect());
        }
        let r = (rank_big(&SparseMatrix::from_columns(rows, cols)) - boundary_rank) as u64;
        let (bs, bt) = (sh.get(d), th.get(d));
        let verdict = match (r == bs, r == bt) {
            (true, true) => MapVerdict::Iso,
            (true, false) => MapVerdict::InjectiveNotSurjective,
            (false, true) => MapVerdict::SurjectiveNotInjective,
            (false, false) => MapVerdict::Neither,
        };
        out.push(InducedMap { dimension: d, source_betti: bs, target_betti: bt, rank: r, verdict });
    }
    Ok(out)
}

/// Convert a small table to plain integers for reports.
pub fn torsion_orders(report: &HomologyReport) -> Vec<(i32, Vec<u64>)> {
    report
        .torsion
        .iter()
        .map(|(d, t)| (*d, t.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect()))
        .collect()
}
