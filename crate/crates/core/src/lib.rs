//! Combinatorial Morse theory on basepointed graphs with distinguished cycles.
//!
//! Graphs are half-edge multigraphs ([`graph`]); heights, forests, blow-ups and
//! the complexes built from them live in their own modules, and every claim the
//! library checks reduces to exact rational homology ([`homology`]).

pub mod blowup;
pub mod canon;
pub mod checks;
pub mod cli;
pub mod complexes;
pub mod enumerate;
pub mod features;
pub mod forest;
pub mod graph;
pub mod homology;
pub mod morse;
pub mod orbit;
pub mod serial;

pub use canon::{canonical_form, canonicalize, is_isomorphic, CanonicalForm};
pub use enumerate::{enumerate_graphs, Budget, Constraints, EnumerationError, Parameters};
pub use graph::{validate, DecoratedGraph, DecorationMode, GraphError, ValencyMode};
