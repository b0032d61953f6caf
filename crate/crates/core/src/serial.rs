//! JSON interchange format for graphs.
//!
//! ```json
//! {"version": 1, "n": 1, "m": 1, "mode": "spine",
//!  "decorationMode": "unlabeledUnoriented", "vertices": 2, "basepoint": 0,
//!  "edges": [{"id": 0, "ends": [0, 0]}, {"id": 1, "ends": [0, 1]}, {"id": 2, "ends": [1, 1]}],
//!  "cycles": [{"edges": [2], "forward": [true]}]}
//! ```
//!
//! `forward[i]` says whether the cycle runs along edge `edges[i]` from its
//! first end to its second.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{validate_declared, DecoratedGraph, DecorationMode, ValencyMode, ValidationReport};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed graph document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("edge ids must be 0..{0} in order")]
    EdgeIds(usize),
    #[error("cycle {0} has {1} edges but {2} orientation flags")]
    Flags(usize, usize, usize),
    #[error("cycle {cycle} uses unknown edge {edge}")]
    UnknownEdge { cycle: usize, edge: usize },
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub edges: Vec<usize>,
    pub forward: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphDocument {
    pub version: u32,
    pub n: usize,
    pub m: usize,
    pub mode: ValencyMode,
    pub decoration_mode: DecorationMode,
    pub vertices: usize,
    pub basepoint: usize,
    pub edges: Vec<EdgeRecord>,
    pub cycles: Vec<CycleRecord>,
}

impl GraphDocument {
    pub fn from_graph(g: &DecoratedGraph, mode: ValencyMode, decoration_mode: DecorationMode) -> Self {
        let m = g.num_cycles();
        GraphDocument {
            version: FORMAT_VERSION,
            n: (g.rank() - m as i64).max(0) as usize,
            m,
            mode,
            decoration_mode,
            vertices: g.num_vertices(),
            basepoint: g.basepoint(),
            edges: (0..g.num_edges())
                .map(|e| {
                    let (a, b) = g.edge_ends(e);
                    EdgeRecord { id: e, ends: [a, b] }
                })
                .collect(),
            cycles: g
                .cycles()
                .iter()
                .map(|c| CycleRecord { edges: c.iter().map(|h| h / 2).collect(), forward: c.iter().map(|h| h % 2 == 0).collect() })
                .collect(),
        }
    }

    /// Rebuild and validate against the declared mode and parameters.
    pub fn to_graph(&self) -> Result<DecoratedGraph, FormatError> {
        if self.version != FORMAT_VERSION {
            return Err(FormatError::Version(self.version));
        }
        if self.edges.iter().enumerate().any(|(i, e)| e.id != i) {
            return Err(FormatError::EdgeIds(self.edges.len()));
        }
        let he: Vec<usize> = self.edges.iter().flat_map(|e| e.ends).collect();
        let mut cycles = Vec::with_capacity(self.cycles.len());
        for (ci, c) in self.cycles.iter().enumerate() {
            if c.edges.len() != c.forward.len() {
                return Err(FormatError::Flags(ci, c.edges.len(), c.forward.len()));
            }
            if let Some(&edge) = c.edges.iter().find(|&&e| e >= self.edges.len()) {
                return Err(FormatError::UnknownEdge { cycle: ci, edge });
            }
            cycles.push(c.edges.iter().zip(&c.forward).map(|(&e, &f)| 2 * e + usize::from(!f)).collect());
        }
        let g = DecoratedGraph::from_parts(self.vertices, self.basepoint, he, cycles);
        let report = validate_declared(&g, self.mode, self.n, self.m);
        if !report.is_valid() {
            return Err(FormatError::Invalid(report));
        }
        Ok(g)
    }
}

pub fn graph_to_json(g: &DecoratedGraph, mode: ValencyMode, decoration_mode: DecorationMode) -> String {
    serde_json::to_string(&GraphDocument::from_graph(g, mode, decoration_mode)).expect("documents serialize")
}

pub fn graph_from_json(s: &str) -> Result<DecoratedGraph, FormatError> {
    serde_json::from_str::<GraphDocument>(s)?.to_graph()
}
