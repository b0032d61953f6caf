//! Python access to enumeration, descending links, orbit complexes and the
//! command-line checks. Graphs cross the boundary as JSON documents.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use clap::Parser;
use saut_morse::cli::Cli;
use saut_morse::complexes::{descending_link_betti, SimplicialComplex};
use saut_morse::homology::{reduced_betti, BettiTable};
use saut_morse::orbit::build_quotient_complex;
use saut_morse::serial::{graph_from_json, graph_to_json};
use saut_morse::{canonical_form, enumerate_graphs, Budget, Constraints, DecorationMode, Parameters, ValencyMode};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn decoration(name: &str) -> PyResult<DecorationMode> {
    match name {
        "sym" => Ok(DecorationMode::UnlabeledUnoriented),
        "pure" => Ok(DecorationMode::LabeledOriented),
        other => Err(PyValueError::new_err(format!("decoration must be 'sym' or 'pure', not {other:?}"))),
    }
}

fn betti_dict<'py>(py: Python<'py>, t: &BettiTable) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("start", t.start)?;
    d.set_item("values", t.values.clone())?;
    Ok(d)
}

/// Spine graph classes for `(n, m, k)`, each as a JSON document.
#[pyfunction]
#[pyo3(signature = (n, m, k, decoration = "sym", max_classes = 1_000_000))]
fn enumerate(n: usize, m: usize, k: usize, decoration: &str, max_classes: usize) -> PyResult<Vec<String>> {
    let mode = self::decoration(decoration)?;
    let graphs = enumerate_graphs(&Parameters::new(n, m, k), &Constraints::spine(mode), &Budget { max_classes })
        .map_err(value_error)?;
    Ok(graphs.iter().map(|g| graph_to_json(g, ValencyMode::Spine, mode)).collect())
}

#[pyfunction]
fn weighted_degree(graph: &str) -> PyResult<i64> {
    Ok(graph_from_json(graph).map_err(value_error)?.weighted_degree())
}

/// Hex string equal for isomorphic graphs.
#[pyfunction]
#[pyo3(signature = (graph, decoration = "sym"))]
fn canonical(graph: &str, decoration: &str) -> PyResult<String> {
    let g = graph_from_json(graph).map_err(value_error)?;
    Ok(canonical_form(&g, self::decoration(decoration)?).to_hex())
}

/// Reduced Betti numbers of the down-link, the up-link and the whole descending link.
#[pyfunction]
fn descending_link<'py>(py: Python<'py>, graph: &str) -> PyResult<Bound<'py, PyDict>> {
    let g = graph_from_json(graph).map_err(value_error)?;
    let link = descending_link_betti(&g).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("down", betti_dict(py, &link.down)?)?;
    d.set_item("up", betti_dict(py, &link.up)?)?;
    d.set_item("total", betti_dict(py, &link.total)?)?;
    Ok(d)
}

/// Reduced Betti numbers of the complex generated by `facets`.
#[pyfunction]
fn simplicial_betti<'py>(py: Python<'py>, facets: Vec<Vec<u32>>) -> PyResult<Bound<'py, PyDict>> {
    betti_dict(py, &reduced_betti(&SimplicialComplex::from_maximal(facets)))
}

/// Cell counts and rational Betti numbers of the quotient complex.
#[pyfunction]
#[pyo3(signature = (n, m, k, decoration = "sym", max_cells = 1_000_000))]
fn orbit_homology<'py>(
    py: Python<'py>,
    n: usize,
    m: usize,
    k: usize,
    decoration: &str,
    max_cells: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = self::decoration(decoration)?;
    let q = py
        .detach(|| build_quotient_complex(Parameters::new(n, m, k), mode, max_cells))
        .map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("cells", q.cell_counts())?;
    d.set_item("betti", betti_dict(py, &q.betti())?)?;
    d.set_item("euler", q.euler())?;
    Ok(d)
}

/// Run a command-line check, e.g. `run(["check-links", "--max-rank", "2"])`.
/// Returns the exit code and the JSON report, if one was produced.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> PyResult<(i32, Option<String>)> {
    let cli = Cli::try_parse_from(std::iter::once("saut-morse".to_string()).chain(args)).map_err(value_error)?;
    let outcome = py.detach(|| saut_morse::cli::run(&cli));
    let report = outcome.report.map(|r| serde_json::to_string(&r).expect("reports serialize"));
    Ok((outcome.code, report))
}

#[pymodule]
#[pyo3(name = "saut_morse")]
fn saut_morse_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_degree, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(descending_link, m)?)?;
    m.add_function(wrap_pyfunction!(simplicial_betti, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_homology, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
