//! Python bindings: exact series, graph predicates, brute-force counts and
//! growth constants.

use minorgf::graph::{self, io, ColourMask, LabelledGraph, MinorPattern};
use minorgf::numerics::{self, GrowthResult, HighPrecisionValue};
use minorgf::oracle::{self, ClassArgs, ClassSpec};
use minorgf::series::{self, TruncatedEGF};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: minorgf::Error) -> PyErr {
    use minorgf::Error as E;
    match e {
        E::NoConvergence(_) | E::IdentityFailed(_) => PyRuntimeError::new_err(e.to_string()),
        E::Series(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn minors(names: Vec<String>) -> PyResult<Vec<MinorPattern>> {
    names.iter().map(|n| MinorPattern::from_name(n).map_err(err)).collect()
}

/// Truncated exponential generating function with rational coefficients.
#[pyclass(name = "Series", module = "pyminorgf", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(TruncatedEGF);

#[pymethods]
impl PySeries {
    /// Build from ordinary coefficients (ints or Fractions).
    #[new]
    fn new(coefficients: Vec<BigRational>) -> PyResult<Self> {
        if coefficients.is_empty() {
            return Err(PyValueError::new_err("need at least one coefficient"));
        }
        Ok(PySeries(TruncatedEGF::from_rationals(coefficients)))
    }

    /// Series of a named class (`D`, `B1`, `A2`, `F`, `Dtilde`, ...).
    #[staticmethod]
    fn named(name: &str, order: usize) -> PyResult<Self> {
        series::named_series(name, order).map(PySeries).map_err(err)
    }

    #[staticmethod]
    fn from_counts(counts: Vec<BigInt>) -> PyResult<Self> {
        if counts.is_empty() {
            return Err(PyValueError::new_err("need at least one count"));
        }
        Ok(PySeries(TruncatedEGF::from_counts(&counts)))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn coefficients(&self) -> Vec<BigRational> {
        self.0.coeffs().to_vec()
    }

    /// Labelled counts `n! c_n`; fails if some count is not an integer.
    fn counts(&self) -> PyResult<Vec<BigInt>> {
        self.0.counts().map_err(err)
    }

    fn __getitem__(&self, n: usize) -> PyResult<BigRational> {
        if n > self.0.order() {
            return Err(pyo3::exceptions::PyIndexError::new_err("beyond the truncation order"));
        }
        Ok(self.0.coeff(n).clone())
    }

    fn __len__(&self) -> usize {
        self.0.order() + 1
    }

    fn __add__(&self, o: &PySeries) -> Self {
        PySeries(self.0.add(&o.0))
    }

    fn __sub__(&self, o: &PySeries) -> Self {
        PySeries(self.0.sub(&o.0))
    }

    fn __mul__(&self, o: &PySeries) -> Self {
        PySeries(self.0.mul(&o.0))
    }

    fn __truediv__(&self, o: &PySeries) -> PyResult<Self> {
        self.0.div(&o.0).map(PySeries).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PySeries(self.0.neg())
    }

    fn __eq__(&self, o: &PySeries) -> bool {
        self.0 == o.0
    }

    fn exp(&self) -> PyResult<Self> {
        self.0.exp().map(PySeries).map_err(err)
    }

    fn log(&self) -> PyResult<Self> {
        self.0.log().map(PySeries).map_err(err)
    }

    fn derive(&self) -> Self {
        PySeries(self.0.derive())
    }

    /// `self(inner(x))`; `inner` must have no constant term.
    fn compose(&self, inner: &PySeries) -> PyResult<Self> {
        self.0.compose(&inner.0).map(PySeries).map_err(err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&series::to_json(&self.0)).expect("json")
    }

    fn __repr__(&self) -> String {
        let head: Vec<String> = self.0.coeffs().iter().take(6).map(|c| c.to_string()).collect();
        let more = if self.0.order() >= 6 { ", ..." } else { "" };
        format!("Series([{}{}], order={})", head.join(", "), more, self.0.order())
    }
}

/// Simple labelled graph on at most 64 vertices.
#[pyclass(name = "Graph", module = "pyminorgf", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(LabelledGraph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        LabelledGraph::from_edges(n, &edges).map(PyGraph).map_err(err)
    }

    /// Read the plain-text graph format (`n m` header, then edges).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse(text).map(|f| PyGraph(f.graph)).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph(LabelledGraph::complete(n))
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph(LabelledGraph::cycle(n))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn is_series_parallel(&self) -> bool {
        graph::is_series_parallel(&self.0)
    }

    fn is_outerplanar(&self) -> bool {
        graph::is_outerplanar(&self.0)
    }

    /// Whether the graph has `minor` (`K4`, `K23` or a Graph) as a minor.
    fn has_minor(&self, minor: &Bound<'_, PyAny>) -> PyResult<bool> {
        let p = if let Ok(name) = minor.extract::<String>() {
            MinorPattern::from_name(&name).map_err(err)?
        } else {
            let g: PyRef<'_, PyGraph> = minor.extract()?;
            MinorPattern::custom(g.0.clone()).map_err(err)?
        };
        graph::has_minor(&self.0, &p).map_err(err)
    }

    #[pyo3(signature = (minors=vec!["K4".to_string()]))]
    fn max_disjoint_packing(&self, minors: Vec<String>) -> PyResult<usize> {
        graph::max_disjoint_minor_packing(&self.0, &self::minors(minors)?).map_err(err)
    }

    #[pyo3(signature = (vertices, minors=vec!["K4".to_string()]))]
    fn is_blocker(&self, vertices: Vec<usize>, minors: Vec<String>) -> PyResult<bool> {
        graph::is_blocker(&self.0, self.mask(&vertices)?, &self::minors(minors)?).map_err(err)
    }

    #[pyo3(signature = (vertices, minors=vec!["K4".to_string()]))]
    fn is_redundant_blocker(&self, vertices: Vec<usize>, minors: Vec<String>) -> PyResult<bool> {
        graph::is_redundant_blocker(&self.0, self.mask(&vertices)?, &self::minors(minors)?).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.0.n(), self.0.edges())
    }
}

impl PyGraph {
    fn mask(&self, vs: &[usize]) -> PyResult<u64> {
        vs.iter().try_fold(0u64, |m, &v| {
            if v < self.0.n() {
                Ok(m | 1 << v)
            } else {
                Err(PyValueError::new_err(format!("vertex {v} is not in the graph")))
            }
        })
    }
}

/// Growth constant with its singularity, kept as decimal strings at full
/// precision.
#[pyclass(name = "GrowthResult", module = "pyminorgf", frozen, get_all)]
struct PyGrowth {
    gamma: String,
    rho: String,
    method: String,
    residual: f64,
}

impl From<GrowthResult> for PyGrowth {
    fn from(g: GrowthResult) -> Self {
        PyGrowth {
            gamma: g.gamma.to_string(),
            rho: g.rho.to_string(),
            method: format!("{:?}", g.method),
            residual: g.residual.to_f64(),
        }
    }
}

#[pymethods]
impl PyGrowth {
    fn __float__(&self) -> f64 {
        self.gamma.parse().unwrap_or(f64::NAN)
    }

    fn __repr__(&self) -> String {
        format!("GrowthResult(gamma={}, method={})", &self.gamma[..self.gamma.len().min(16)], self.method)
    }
}

/// Growth constant for `target` in rd-k4, ex-k4, outer-rd, outer-ex.
#[pyfunction]
#[pyo3(signature = (target, param, precision=numerics::DEFAULT_DIGITS))]
fn gamma(py: Python<'_>, target: &str, param: usize, precision: usize) -> PyResult<PyGrowth> {
    let target = target.to_string();
    py.detach(move || {
        let g = match target.as_str() {
            "rd-k4" => numerics::gamma_rd_k4(param, precision),
            "ex-k4" => numerics::gamma_ex_k4(param, precision),
            "outer-rd" => numerics::gamma_outer_rd(param, precision),
            "outer-ex" => numerics::gamma_outer_ex(param, precision),
            other => return Err(PyValueError::new_err(format!("unknown target {other:?}"))),
        };
        g.map(PyGrowth::from).map_err(err)
    })
}

/// Radius of convergence of the series-parallel network series, as a string.
#[pyfunction]
#[pyo3(signature = (precision=numerics::DEFAULT_DIGITS))]
fn rho_sp(precision: usize) -> PyResult<String> {
    numerics::rho_d(precision).map(|v: HighPrecisionValue| v.to_string()).map_err(err)
}

/// Brute-force count of a class at size `n`.
#[pyfunction]
#[pyo3(signature = (class_name, n, l=None, k=None, minors=Vec::new(), colours=Vec::new()))]
fn count(
    py: Python<'_>,
    class_name: &str,
    n: usize,
    l: Option<usize>,
    k: Option<usize>,
    minors: Vec<String>,
    colours: Vec<usize>,
) -> PyResult<u64> {
    if colours.iter().any(|&c| !(1..=16).contains(&c)) {
        return Err(PyValueError::new_err("colours are numbered from 1"));
    }
    let args = ClassArgs {
        l,
        k,
        b: self::minors(minors)?,
        colours: (!colours.is_empty()).then(|| ColourMask::from_colours(&colours)),
    };
    let spec = ClassSpec::from_name(class_name, &args).map_err(err)?;
    py.detach(|| oracle::count_class(&spec, n)).map(|r| r.count).map_err(err)
}

type Shape = (usize, Vec<(usize, usize)>);

/// Unlabelled tree shapes with `k` coloured vertices, as edge lists.
#[pyfunction]
fn shapes(k: usize) -> PyResult<Vec<Shape>> {
    let s = oracle::enumerate_ut_trees(k).map_err(err)?;
    Ok(s.into_iter().map(|t| (t.vertices, t.edges)).collect())
}

#[pymodule]
fn pyminorgf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyGrowth>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(rho_sp, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(shapes, m)?)?;
    m.add("SERIES_NAMES", series::SERIES_NAMES.to_vec())?;
    Ok(())
}
