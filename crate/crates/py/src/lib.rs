//! Python bindings. Reports are returned as JSON strings in the same format
//! the command-line tool writes.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use siltkit::cli::{execute, load_algebra, Cli};
use siltkit::poset::{explore, hasse_json, ExploreBounds};
use siltkit::session::Session;
use siltkit::silting::regular_object;
use siltkit::verify::{Suite, VerifyConfig, Verifier};

fn err(e: siltkit::Error) -> PyErr {
    match e {
        siltkit::Error::Truncated(_) | siltkit::Error::TheoremViolation(_) | siltkit::Error::DecompositionFailed => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Names of the bundled algebras.
#[pyfunction]
fn corpus_names() -> Vec<String> {
    siltkit::corpus::names().map(String::from).collect()
}

/// Runs the command-line tool in process; returns `(exit code, output)`.
#[pyfunction]
fn run(args: Vec<String>) -> PyResult<(i32, String)> {
    let cli = Cli::from_args(std::iter::once("siltkit".to_string()).chain(args))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = execute(&cli).map_err(err)?;
    Ok((out.code, out.text))
}

/// The Hasse quiver of two-term silting objects as JSON.
#[pyfunction]
#[pyo3(signature = (algebra, max_nodes = 100, seed = 0, prime = None))]
fn hasse(algebra: &str, max_nodes: usize, seed: u64, prime: Option<u32>) -> PyResult<String> {
    let s = Session::from_algebra(load_algebra(algebra, prime).map_err(err)?, seed);
    let bounds = ExploreBounds {
        max_nodes,
        interval: None,
    };
    let h = explore(&s, &regular_object(&s), &bounds).map_err(err)?;
    to_json(&hasse_json(&s, &h).map_err(err)?)
}

/// Runs verification suites (`all` or one suite name) and returns the report
/// as JSON.
#[pyfunction]
#[pyo3(signature = (algebra, suite = "all", max_nodes = 100, seed = 0, prime = None))]
fn verify(algebra: &str, suite: &str, max_nodes: usize, seed: u64, prime: Option<u32>) -> PyResult<String> {
    let suites = Suite::parse_selection(suite).map_err(err)?;
    let s = Session::from_algebra(load_algebra(algebra, prime).map_err(err)?, seed);
    let cfg = VerifyConfig {
        max_nodes,
        ..VerifyConfig::default()
    };
    to_json(&Verifier::new(&s, cfg).run(&suites))
}

#[pymodule]
fn siltkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(hasse, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
