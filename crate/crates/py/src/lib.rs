//! Python bindings for `wdd_core`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use num_bigint::BigUint;
use wdd_core as core;
use wdd_core::{DrawingFormat, TopoOrder};

create_exception!(wdd, CapExceeded, PyRuntimeError, "A search limit was hit.");

fn to_py(e: core::Error) -> PyErr {
    match e {
        core::Error::ExtensionCapExceeded { .. }
        | core::Error::StateCapExceeded { .. }
        | core::Error::DimExceedsMax { .. }
        | core::Error::TruncatedInput => CapExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_dict<'py>(py: Python<'py>, doc: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (doc,))
}

#[pyclass(name = "Dag", module = "wdd", frozen)]
struct PyDag {
    inner: core::Dag,
    closure: core::Reachability,
}

impl PyDag {
    fn wrap(inner: core::Dag) -> Self {
        let closure = core::transitive_closure(&inner);
        PyDag { inner, closure }
    }

    fn order(&self, seq: Vec<usize>) -> PyResult<TopoOrder> {
        let t = TopoOrder::from_sequence(seq).map_err(to_py)?;
        if t.len() != self.inner.n() {
            return Err(PyValueError::new_err(format!(
                "order has {} vertices, graph has {}",
                t.len(),
                self.inner.n()
            )));
        }
        Ok(t)
    }
}

#[pymethods]
impl PyDag {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Dag::new(n, edges).map(Self::wrap).map_err(to_py)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::parse_edge_list(text).map(Self::wrap).map_err(to_py)
    }

    #[staticmethod]
    fn crown(k: usize) -> PyResult<Self> {
        if k == 0 {
            return Err(PyValueError::new_err("crown needs k >= 1"));
        }
        Ok(Self::wrap(core::gen_crown(k)))
    }

    #[staticmethod]
    fn chain(n: usize) -> Self {
        Self::wrap(core::gen_chain(n))
    }

    #[staticmethod]
    fn antichain(n: usize) -> Self {
        Self::wrap(core::gen_antichain(n))
    }

    #[staticmethod]
    fn grid(rows: usize, cols: usize) -> Self {
        Self::wrap(core::gen_grid(rows, cols))
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, seed=0))]
    fn random(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(PyValueError::new_err("p must lie in [0, 1]"));
        }
        Ok(Self::wrap(core::gen_random_dag(n, p, seed)))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn inc(&self) -> usize {
        core::count_incomparable(&self.closure)
    }

    fn closure_edges(&self) -> Vec<(usize, usize)> {
        self.closure.closure_edges().collect()
    }

    fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        self.closure.inc_pairs().to_vec()
    }

    fn reaches(&self, u: usize, v: usize) -> PyResult<bool> {
        let n = self.inner.n();
        if u >= n || v >= n {
            return Err(PyValueError::new_err("vertex out of range"));
        }
        Ok(self.closure.reaches(u, v))
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn topological_sort(&self) -> Vec<usize> {
        core::topological_sort(&self.inner).sequence().to_vec()
    }

    #[pyo3(signature = (cap=core::DEFAULT_CAP))]
    fn extensions(&self, cap: usize) -> PyResult<Vec<Vec<usize>>> {
        let e = core::enumerate_extensions(&self.closure, cap);
        if e.is_truncated() {
            return Err(CapExceeded::new_err(format!("more than {cap} linear extensions")));
        }
        Ok(e.extensions().iter().map(|t| t.sequence().to_vec()).collect())
    }

    #[pyo3(signature = (cap=1_000_000))]
    fn count_extensions(&self, cap: usize) -> PyResult<BigUint> {
        core::count_extensions(&self.closure, cap).map_err(to_py)
    }

    fn distance(&self, x: Vec<usize>, y: Vec<usize>) -> PyResult<usize> {
        core::distance(&self.order(x)?, &self.order(y)?, &self.closure).map_err(to_py)
    }

    /// Drawing from two linear extensions; both default to a topological sort.
    #[pyo3(signature = (x=None, y=None))]
    fn drawing(&self, x: Option<Vec<usize>>, y: Option<Vec<usize>>) -> PyResult<PyDrawing> {
        let t = || core::topological_sort(&self.inner);
        let tx = x.map(|s| self.order(s)).transpose()?.unwrap_or_else(t);
        let ty = y.map(|s| self.order(s)).transpose()?.unwrap_or_else(t);
        core::make_drawing(&self.inner, tx, ty)
            .map(|inner| PyDrawing { inner })
            .map_err(to_py)
    }

    /// Exact diameter and minimum fip count, with dimension when it is at
    /// most `max_dim`.
    #[pyo3(signature = (cap=core::DEFAULT_CAP, max_dim=core::DEFAULT_MAX_DIM))]
    fn solve<'py>(&self, py: Python<'py>, cap: usize, max_dim: usize) -> PyResult<Bound<'py, PyAny>> {
        let rep = py.detach(|| core::solve_exact(&self.inner, cap, max_dim)).map_err(to_py)?;
        json_to_dict(py, &rep.to_json(false))
    }

    #[pyo3(signature = (cap=core::DEFAULT_CAP))]
    fn led<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<Bound<'py, PyAny>> {
        let rep = py.detach(|| core::led_report(&self.inner, cap)).map_err(to_py)?;
        json_to_dict(py, &rep.to_json(false))
    }

    #[pyo3(signature = (restarts=50, seed=0))]
    fn heuristic<'py>(&self, py: Python<'py>, restarts: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let rep = py.detach(|| core::minfip_heuristic(&self.inner, restarts, seed));
        json_to_dict(py, &rep.to_json(false))
    }

    /// Dimension and a realizer of that size.
    #[pyo3(signature = (cap=core::DEFAULT_CAP, max_dim=core::DEFAULT_MAX_DIM))]
    fn dimension(&self, py: Python<'_>, cap: usize, max_dim: usize) -> PyResult<(usize, Vec<Vec<usize>>)> {
        let rep = py.detach(|| core::dimension_report(&self.inner, cap, max_dim)).map_err(to_py)?;
        let realizer = rep.realizer.expect("dimension report has a realizer");
        Ok((
            realizer.dim(),
            realizer.members().iter().map(|t| t.sequence().to_vec()).collect(),
        ))
    }

    #[pyo3(signature = (cap=core::DEFAULT_CAP, max_dim=core::DEFAULT_MAX_DIM))]
    fn verify<'py>(&self, py: Python<'py>, cap: usize, max_dim: usize) -> PyResult<Bound<'py, PyAny>> {
        let rep = py.detach(|| core::solve_exact(&self.inner, cap, max_dim)).map_err(to_py)?;
        let check = core::verify_bounds(&rep).map_err(|_| {
            CapExceeded::new_err(format!("dimension exceeds max_dim={max_dim}"))
        })?;
        json_to_dict(py, &check.to_json())
    }

    /// Linear extension graph as (nodes, edges).
    #[pyo3(signature = (cap=core::DEFAULT_CAP))]
    fn linext_graph(&self, cap: usize) -> PyResult<(Vec<Vec<usize>>, Vec<(usize, usize)>)> {
        let e = core::enumerate_extensions(&self.closure, cap);
        let g = core::build_linext_graph(&e).map_err(to_py)?;
        let nodes = g.nodes().extensions().iter().map(|t| t.sequence().to_vec()).collect();
        Ok((nodes, g.edges().collect()))
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Dag(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "Drawing", module = "wdd", frozen)]
struct PyDrawing {
    inner: core::WeakDominanceDrawing,
}

#[pymethods]
impl PyDrawing {
    /// 1-based (x, y) per vertex.
    #[getter]
    fn coords(&self) -> Vec<(usize, usize)> {
        (0..self.inner.dag().n()).map(|v| (self.inner.x(v), self.inner.y(v))).collect()
    }

    #[getter]
    fn fips(&self) -> Vec<(usize, usize)> {
        self.inner.fips().to_vec()
    }

    #[getter]
    fn fip_count(&self) -> usize {
        self.inner.fip_count()
    }

    #[getter]
    fn inc(&self) -> usize {
        self.inner.inc()
    }

    fn is_dominance(&self) -> bool {
        core::is_dominance_drawing(&self.inner)
    }

    #[pyo3(signature = (format="coords"))]
    fn render(&self, format: &str) -> PyResult<String> {
        let f: DrawingFormat = format.parse().map_err(to_py)?;
        Ok(core::emit_drawing(&self.inner, f))
    }

    fn __repr__(&self) -> String {
        format!("Drawing(n={}, fips={})", self.inner.dag().n(), self.inner.fip_count())
    }
}

#[pymodule]
fn wdd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDag>()?;
    m.add_class::<PyDrawing>()?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add("DEFAULT_CAP", core::DEFAULT_CAP)?;
    Ok(())
}
