//! Python bindings: the `apw` commands plus a few direct kernel calls on
//! structure documents given as JSON text.

use std::path::PathBuf;

use apartness::io::{self, run_command, Command, Invocation, StructureDocument};
use apartness::{validate_structure, Carrier, Verdict};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: apartness::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn verdicts<'py>(
    py: Python<'py>,
    flags: &[(&str, &Verdict)],
    c: &Carrier,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (name, v) in flags {
        d.set_item(*name, (v.holds, v.render_witness(c)))?;
    }
    Ok(d)
}

/// Runs an `apw` command and returns `(rendered report, exit status)`.
/// Emitted documents are written to `out` when given.
#[pyfunction]
#[pyo3(signature = (command, input=None, *, subset=None, relation=None, epsilon=None, kappa=None,
                    map=None, kind=None, filter=None, max_size=None, workers=0, out=None, format="machine"))]
#[allow(clippy::too_many_arguments)]
fn run(
    command: &str,
    input: Option<PathBuf>,
    subset: Option<String>,
    relation: Option<String>,
    epsilon: Option<String>,
    kappa: Option<String>,
    map: Option<PathBuf>,
    kind: Option<String>,
    filter: Option<String>,
    max_size: Option<usize>,
    workers: usize,
    out: Option<PathBuf>,
    format: &str,
) -> PyResult<(String, i32)> {
    let inv = Invocation {
        command: Command::parse(command).map_err(err)?,
        input,
        subset,
        relation,
        epsilon,
        kappa,
        map,
        kind,
        filter,
        max_size,
        workers,
        out: out.clone(),
    };
    let outcome = run_command(&inv).map_err(err)?;
    if let (Some(path), Some(doc)) = (&out, &outcome.emitted) {
        std::fs::write(path, doc.to_json())
            .map_err(|e| PyValueError::new_err(format!("{}: {e}", path.display())))?;
    }
    let rendered = match format {
        "machine" => outcome.report.to_machine(),
        "text" => outcome.report.to_text(),
        f => return Err(PyValueError::new_err(format!("unknown format `{f}`"))),
    };
    Ok((rendered, outcome.exit_code()))
}

/// Axiom verdicts `{name: (holds, witness)}` for a document, valid or not.
#[pyfunction]
fn axioms<'py>(py: Python<'py>, document: &str) -> PyResult<Bound<'py, PyDict>> {
    let raw = StructureDocument::from_json(document).and_then(|d| d.load()).map_err(err)?;
    let report = validate_structure(&raw.carrier, &raw.apartness).map_err(err)?;
    verdicts(py, &report.all(), &raw.carrier)
}

/// Relational properties of the named relation.
#[pyfunction]
fn classify_relation<'py>(py: Python<'py>, document: &str, name: &str) -> PyResult<Bound<'py, PyDict>> {
    let s = io::parse_structure(document.as_bytes()).map_err(err)?;
    let alpha = s.relation(name).map_err(err)?;
    let k = s.apartness.classify_relation(alpha).map_err(err)?;
    verdicts(py, &k.flags(), s.carrier())
}

/// Members of the a-complement of the named subset.
#[pyfunction]
fn a_complement(document: &str, subset: &str) -> PyResult<Vec<String>> {
    let s = io::parse_structure(document.as_bytes()).map_err(err)?;
    let y = s.subset(subset).map_err(err)?;
    Ok(s.apartness.a_complement(y).map_err(err)?.names())
}

/// `sha256:<hex>` of raw bytes, as printed in report headers.
#[pyfunction]
fn digest(data: &[u8]) -> String {
    io::digest(data)
}

#[pymodule]
fn apartness_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(axioms, m)?)?;
    m.add_function(wrap_pyfunction!(classify_relation, m)?)?;
    m.add_function(wrap_pyfunction!(a_complement, m)?)?;
    m.add_function(wrap_pyfunction!(digest, m)?)?;
    Ok(())
}
