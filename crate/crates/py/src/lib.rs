//! Python bindings. Structured results cross the boundary as JSON and come
//! back as plain dicts and lists.

use std::fmt::Display;

use mrfgraph_core::graph_build::{self, ExportFormat, GraphKind, Mode};
use mrfgraph_core::graph_metrics::{self, NpMetric, SolverBounds};
use mrfgraph_core::harness::{self, SuiteConfig};
use mrfgraph_core::isomorphism::{self, IsoOptions};
use mrfgraph_core::measure_space::{self, MeasurableSet, Rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A measure space: `n` weighted atoms, or Lebesgue measure on [0,1).
#[pyclass(name = "MeasureSpace", frozen)]
struct PyMeasureSpace {
    inner: measure_space::MeasureSpace,
}

#[pymethods]
impl PyMeasureSpace {
    /// Atomic space; weights are rationals as strings ("1", "3/7"). Unit
    /// weights when omitted.
    #[staticmethod]
    #[pyo3(signature = (atoms, weights=None))]
    fn atomic(atoms: usize, weights: Option<Vec<String>>) -> PyResult<Self> {
        let space = match weights {
            None => measure_space::AtomicSpace::unit(atoms).map_err(err)?,
            Some(w) => {
                if w.len() != atoms {
                    return Err(err(format!("{} weights for {atoms} atoms", w.len())));
                }
                let w: Vec<Rational> = w.iter().map(|s| s.parse::<Rational>().map_err(err)).collect::<PyResult<_>>()?;
                measure_space::AtomicSpace::new(w).map_err(err)?
            }
        };
        Ok(PyMeasureSpace { inner: measure_space::MeasureSpace::Atomic(space) })
    }

    #[staticmethod]
    fn interval() -> Self {
        PyMeasureSpace { inner: measure_space::MeasureSpace::Interval }
    }

    /// Exact measure of a set literal (`{0,2}` or `[0,1/3)+[1/2,1)`), as a string.
    fn measure(&self, set: &str) -> PyResult<String> {
        Ok(self.inner.measure(&self.parse(set)?).map_err(err)?.to_string())
    }

    fn is_null(&self, set: &str) -> PyResult<bool> {
        self.inner.is_null(&self.parse(set)?).map_err(err)
    }

    fn is_atom(&self, set: &str) -> PyResult<bool> {
        self.inner.is_atom(&self.parse(set)?).map_err(err)
    }

    fn complement(&self, set: &str) -> PyResult<String> {
        Ok(self.inner.complement(&self.parse(set)?).map_err(err)?.to_string())
    }

    fn union(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.union(&self.parse(a)?, &self.parse(b)?).map_err(err)?.to_string())
    }

    fn intersect(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.intersect(&self.parse(a)?, &self.parse(b)?).map_err(err)?.to_string())
    }

    /// A subset of `set` with measure exactly `r` (interval spaces only).
    fn split_at_measure(&self, set: &str, r: &str) -> PyResult<String> {
        let r: Rational = r.parse().map_err(err)?;
        Ok(self.inner.split_at_measure(&self.parse(set)?, &r).map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        match self.inner.as_atomic() {
            Some(a) => format!("MeasureSpace.atomic({})", a.atoms()),
            None => "MeasureSpace.interval()".into(),
        }
    }
}

impl PyMeasureSpace {
    fn parse(&self, text: &str) -> PyResult<MeasurableSet> {
        let set: MeasurableSet = text.parse().map_err(err)?;
        self.inner.validate(&set).map_err(err)?;
        Ok(set)
    }
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: graph_build::Graph,
}

#[pymethods]
impl PyGraph {
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.mode().name()
    }

    /// Vertex payload literals, in vertex order.
    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.adjacency().edges().collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        if u >= self.inner.len() || v >= self.inner.len() {
            return Err(err(format!("vertex out of range for {} vertices", self.inner.len())));
        }
        Ok(self.inner.has_edge(u, v))
    }

    /// `"json"` or `"dot"`.
    #[pyo3(signature = (format="json"))]
    fn export(&self, format: &str) -> PyResult<String> {
        let format = match format {
            "json" => ExportFormat::Json,
            "dot" => ExportFormat::Dot,
            other => return Err(err(format!("unknown export format `{other}`"))),
        };
        Ok(graph_build::export_graph(&self.inner, format))
    }

    /// Eccentricities, diameter, girth and triangle data.
    fn metrics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &graph_metrics::metrics(&self.inner).map_err(err)?)
    }

    /// Exact clique, chromatic, dominating and total dominating numbers.
    #[pyo3(signature = (which=None))]
    fn np_metrics<'py>(&self, py: Python<'py>, which: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
        let which: Vec<NpMetric> = match which {
            None => vec![NpMetric::Clique, NpMetric::Chromatic, NpMetric::Dominating, NpMetric::TotalDominating],
            Some(names) => names.iter().map(|s| s.parse().map_err(err)).collect::<PyResult<_>>()?,
        };
        to_py(py, &graph_metrics::np_metrics(&self.inner, &which, SolverBounds::default()).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(kind={}, mode={}, vertices={}, edges={})",
            self.inner.kind(),
            self.inner.mode().name(),
            self.inner.len(),
            self.inner.adjacency().edge_count()
        )
    }
}

/// Builds one graph. `alphabet=None` gives the quotient graph (one vertex per
/// null-equivalence class); an integer gives the expanded graph on functions
/// with values in `0..alphabet`.
#[pyfunction]
#[pyo3(signature = (space, kind, alphabet=None))]
fn build_graph(space: &PyMeasureSpace, kind: &str, alphabet: Option<usize>) -> PyResult<PyGraph> {
    let kind: GraphKind = kind.parse().map_err(err)?;
    let mode = alphabet.map_or(Mode::Quotient, |alphabet| Mode::Expanded { alphabet });
    Ok(PyGraph { inner: graph_build::build_graph(&space.inner, kind, mode).map_err(err)? })
}

/// Isomorphism verdict with a mapping or a certificate.
#[pyfunction]
#[pyo3(signature = (left, right, budget=None))]
fn are_isomorphic<'py>(
    py: Python<'py>,
    left: &PyGraph,
    right: &PyGraph,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut options = IsoOptions::default();
    if let Some(b) = budget {
        options.budget = b;
    }
    to_py(py, &isomorphism::are_isomorphic(&left.inner, &right.inner, options).map_err(err)?)
}

/// Runs the claim suites. Takes a config as a JSON string (missing fields
/// take their defaults) and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (config="{}"))]
fn run_suite<'py>(py: Python<'py>, config: &str) -> PyResult<Bound<'py, PyAny>> {
    let cfg: SuiteConfig = serde_json::from_str(config).map_err(err)?;
    let report = harness::run_suite(&cfg).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn mrfgraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMeasureSpace>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(build_graph, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
