//! Python bindings for the `turan_kernel` crate.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use turan_kernel::compression::Verdict;
use turan_kernel::io::{to_dimacs, to_edge_list};
use turan_kernel::solver::DEFAULT_NODE_BUDGET;
use turan_kernel::{Format, SolverConfig, SolverError, TuranCliqueInstance};

create_exception!(pyturan, BudgetExceeded, PyRuntimeError);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solver_error(e: SolverError) -> PyErr {
    match e {
        SolverError::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn parse_format(format: &str) -> PyResult<Format> {
    match format {
        "dimacs" => Ok(Format::Dimacs),
        "edge-list" | "edge_list" => Ok(Format::EdgeList),
        other => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
    }
}

fn config(budget: Option<u64>, threads: usize) -> SolverConfig {
    SolverConfig {
        node_budget: budget.unwrap_or(DEFAULT_NODE_BUDGET),
        threads,
    }
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "pyturan", skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: turan_kernel::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = turan_kernel::Graph::from_edges(n, edges).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    /// Parse DIMACS (`"dimacs"`) or edge-list (`"edge-list"`) text.
    #[staticmethod]
    #[pyo3(signature = (text, format = "dimacs"))]
    fn parse(text: &str, format: &str) -> PyResult<Self> {
        let inner = turan_kernel::parse_str(text, parse_format(format)?).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn turan(n: usize, r: usize) -> PyResult<Self> {
        let inner = turan_kernel::build_turan_graph(n, r).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn degree(&self, u: usize) -> PyResult<usize> {
        if u >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {u} out of range")));
        }
        Ok(self.inner.degree(u))
    }

    fn complement(&self) -> Self {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    fn is_clique(&self, vertices: Vec<usize>) -> bool {
        vertices.iter().all(|&v| v < self.inner.n()) && self.inner.is_clique(&vertices)
    }

    #[pyo3(signature = (format = "dimacs"))]
    fn serialize(&self, format: &str) -> PyResult<String> {
        Ok(match parse_format(format)? {
            Format::Dimacs => to_dimacs(&self.inner),
            Format::EdgeList => to_edge_list(&self.inner),
        })
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: PyRef<'_, PyGraph>) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "Decision", module = "pyturan", get_all, frozen)]
pub struct PyDecision {
    answer: bool,
    witness: Option<Vec<usize>>,
    nodes: u64,
    wall_time_ns: u64,
    kernel_vertices: Option<usize>,
    verdict: String,
}

#[pymethods]
impl PyDecision {
    fn __bool__(&self) -> bool {
        self.answer
    }

    fn __repr__(&self) -> String {
        format!(
            "Decision(answer={}, witness={:?}, verdict={:?})",
            if self.answer { "yes" } else { "no" },
            self.witness,
            self.verdict
        )
    }
}

impl From<turan_kernel::Decision> for PyDecision {
    fn from(d: turan_kernel::Decision) -> Self {
        PyDecision {
            answer: d.answer.is_yes(),
            witness: d.witness,
            nodes: d.stats.nodes,
            wall_time_ns: d.stats.wall_time_ns,
            kernel_vertices: d.stats.kernel_vertices,
            verdict: d.stats.verdict,
        }
    }
}

/// Result of compressing an instance.
#[pyclass(name = "Compression", module = "pyturan", frozen)]
pub struct PyCompression {
    inner: turan_kernel::CliqueInstance,
}

#[pymethods]
impl PyCompression {
    /// `"open"`, `"trivially_yes"` or `"trivially_no"`.
    #[getter]
    fn verdict(&self) -> &'static str {
        self.inner.verdict.label()
    }

    #[getter]
    fn kernel(&self) -> Option<PyGraph> {
        match &self.inner.verdict {
            Verdict::Open { graph, .. } => Some(PyGraph {
                inner: graph.clone(),
            }),
            _ => None,
        }
    }

    #[getter]
    fn ell(&self) -> Option<usize> {
        match &self.inner.verdict {
            Verdict::Open { ell, .. } => Some(*ell),
            _ => None,
        }
    }

    #[getter]
    fn witness(&self) -> Option<Vec<usize>> {
        match &self.inner.verdict {
            Verdict::TriviallyYes { witness } => Some(witness.clone()),
            _ => None,
        }
    }

    /// Source id of each kernel vertex.
    #[getter]
    fn kept(&self) -> Vec<usize> {
        self.inner.trace.kept.clone()
    }

    fn lift_clique(&self, kernel_clique: Vec<usize>) -> PyResult<Vec<usize>> {
        let n = self.inner.trace.kept.len();
        if let Some(v) = kernel_clique.iter().find(|&&v| v >= n) {
            return Err(PyValueError::new_err(format!(
                "kernel vertex {v} out of range"
            )));
        }
        Ok(self.inner.lift_clique(&kernel_clique))
    }

    fn trace_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.trace).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        match self.inner.kernel_vertices() {
            Some(v) => format!("Compression(verdict='open', kernel_vertices={v})"),
            None => format!("Compression(verdict={:?})", self.inner.verdict.label()),
        }
    }
}

fn instance(graph: &PyGraph, r: usize, k: u128, ell: usize) -> PyResult<TuranCliqueInstance> {
    TuranCliqueInstance::new(graph.inner.clone(), r, k, ell).map_err(value_error)
}

#[pyfunction]
fn turan_edge_count(n: usize, r: usize) -> PyResult<u128> {
    turan_kernel::turan_edge_count(n, r).map_err(value_error)
}

#[pyfunction]
fn turan_gap(n: usize, r: usize, ell: usize) -> PyResult<i128> {
    turan_kernel::turan_gap(n, r, ell).map_err(value_error)
}

/// Returns `(parts, pivots)`.
#[pyfunction]
fn erdos_partition(graph: PyRef<'_, PyGraph>) -> PyResult<(Vec<Vec<usize>>, Vec<usize>)> {
    let p = turan_kernel::erdos_partition(&graph.inner).map_err(value_error)?;
    Ok((p.parts, p.pivots))
}

#[pyfunction]
fn compress(graph: PyRef<'_, PyGraph>, r: usize, k: u128, ell: usize) -> PyResult<PyCompression> {
    let inst = instance(&graph, r, k, ell)?;
    let inner = turan_kernel::compress_any(&inst).map_err(value_error)?;
    Ok(PyCompression { inner })
}

#[pyfunction]
#[pyo3(signature = (graph, r, k, ell, budget = None, threads = 1))]
fn solve_turan_clique(
    py: Python<'_>,
    graph: PyRef<'_, PyGraph>,
    r: usize,
    k: u128,
    ell: usize,
    budget: Option<u64>,
    threads: usize,
) -> PyResult<PyDecision> {
    let inst = instance(&graph, r, k, ell)?;
    let cfg = config(budget, threads);
    let d = py
        .detach(|| turan_kernel::solve_turan_clique(&inst, &cfg))
        .map_err(solver_error)?;
    Ok(d.into())
}

#[pyfunction]
#[pyo3(signature = (graph, t, budget = None, threads = 1))]
fn solve_turan_is(
    py: Python<'_>,
    graph: PyRef<'_, PyGraph>,
    t: usize,
    budget: Option<u64>,
    threads: usize,
) -> PyResult<PyDecision> {
    let g = graph.inner.clone();
    let cfg = config(budget, threads);
    let d = py
        .detach(|| turan_kernel::solve_turan_is(&g, t, &cfg))
        .map_err(solver_error)?;
    Ok(d.into())
}

/// Returns `(size, clique)`.
#[pyfunction]
#[pyo3(signature = (graph, budget = None, threads = 1))]
fn max_clique(
    py: Python<'_>,
    graph: PyRef<'_, PyGraph>,
    budget: Option<u64>,
    threads: usize,
) -> PyResult<(usize, Vec<usize>)> {
    let g = graph.inner.clone();
    let cfg = config(budget, threads);
    let found = py
        .detach(|| turan_kernel::max_clique_exact(&g, &cfg))
        .map_err(solver_error)?;
    Ok((found.size, found.clique))
}

#[pyfunction]
#[pyo3(signature = (graph, vertices, ell, independent = false))]
fn verify_witness(
    graph: PyRef<'_, PyGraph>,
    vertices: Vec<usize>,
    ell: usize,
    independent: bool,
) -> PyResult<bool> {
    let mode = if independent {
        turan_kernel::Mode::IndependentSet
    } else {
        turan_kernel::Mode::Clique
    };
    turan_kernel::verify_witness(&graph.inner, &vertices, ell, mode).map_err(solver_error)
}

/// Returns `(graph, r, k, ell)`.
#[pyfunction]
fn gen_perturbed_turan(
    n: usize,
    r: usize,
    k: u128,
    seed: u64,
) -> PyResult<(PyGraph, usize, u128, usize)> {
    let inst = turan_kernel::gen_perturbed_turan(n, r, k, seed).map_err(value_error)?;
    let (r, k, ell) = (inst.r(), inst.k(), inst.ell());
    Ok((
        PyGraph {
            inner: inst.into_graph(),
        },
        r,
        k,
        ell,
    ))
}

/// Returns `(graph, r, k, ell, witness)`.
#[pyfunction]
fn gen_planted(
    n: usize,
    r: usize,
    k: u128,
    seed: u64,
) -> PyResult<(PyGraph, usize, u128, usize, Vec<usize>)> {
    let p = turan_kernel::gen_planted(n, r, k, seed).map_err(value_error)?;
    let (r, k, ell) = (p.instance.r(), p.instance.k(), p.instance.ell());
    Ok((
        PyGraph {
            inner: p.instance.into_graph(),
        },
        r,
        k,
        ell,
        p.witness,
    ))
}

#[pymodule]
fn pyturan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDecision>()?;
    m.add_class::<PyCompression>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(turan_edge_count, m)?)?;
    m.add_function(wrap_pyfunction!(turan_gap, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_partition, m)?)?;
    m.add_function(wrap_pyfunction!(compress, m)?)?;
    m.add_function(wrap_pyfunction!(solve_turan_clique, m)?)?;
    m.add_function(wrap_pyfunction!(solve_turan_is, m)?)?;
    m.add_function(wrap_pyfunction!(max_clique, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(gen_perturbed_turan, m)?)?;
    m.add_function(wrap_pyfunction!(gen_planted, m)?)?;
    Ok(())
}
