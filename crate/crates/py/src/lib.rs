//! Python bindings: exact quadratic numbers, group points, model-set
//! generation and analysis, word growth, packing/cover experiments and bounds.
//! Structured results come back as plain dicts.

use apercut::analysis::{analyze, AnalysisConfig};
use apercut::bounds::{bounds_report, BoundInput};
use apercut::cutproject::{check_window_regular, default_region, default_window, generate_model_set};
use apercut::exactnum::{format_rational, parse_rational};
use apercut::growth::{bfs_balls, cover_experiment, fit_growth_exponent, parse_group, DEFAULT_BUDGET};
use apercut::io::{content_hash, load_model_set, model_set_file, to_json};
use apercut::{AxisBox, Error, ExactPoint, GenSet, GroupKind, QuadNum, Rational, RingSpec, RingVariant, Scheme};
use pyo3::exceptions::{PyKeyError, PyOverflowError, PyRuntimeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

fn err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        Error::BudgetExceeded { .. } => PyOverflowError::new_err(e.to_string()),
        Error::Provenance { .. } => PyKeyError::new_err(e.to_string()),
        Error::Erosion(_) | Error::InsufficientData(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// a + b sqrt(d) with rational a, b.
#[pyclass(name = "QuadNum", module = "apercut", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyQuadNum(QuadNum);

#[pymethods]
impl PyQuadNum {
    #[new]
    #[pyo3(signature = (a, b = "0", d = 2))]
    fn new(a: &str, b: &str, d: u64) -> PyResult<Self> {
        QuadNum::new(rational(a)?, rational(b)?, d).map(Self).map_err(err)
    }

    #[getter]
    fn a(&self) -> String {
        format_rational(self.0.a())
    }

    #[getter]
    fn b(&self) -> String {
        format_rational(self.0.b())
    }

    #[getter]
    fn d(&self) -> u64 {
        self.0.d()
    }

    fn conjugate(&self) -> Self {
        Self(self.0.conjugate())
    }

    fn norm(&self) -> String {
        format_rational(&self.0.norm())
    }

    fn sign(&self) -> i8 {
        self.0.exact_sign()
    }

    fn to_tuple(&self) -> [String; 4] {
        self.0.to_tuple()
    }

    fn __add__(&self, o: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.checked_add(&o.0).map(Self).map_err(err)
    }

    fn __sub__(&self, o: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.checked_sub(&o.0).map(Self).map_err(err)
    }

    fn __mul__(&self, o: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.checked_mul(&o.0).map(Self).map_err(err)
    }

    fn __truediv__(&self, o: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(Self).map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QuadNum({:?}, {:?}, d={})", self.a(), self.b(), self.0.d())
    }
}

fn group(kind: &str, n: usize, m: usize) -> PyResult<GroupKind> {
    match kind {
        "heisenberg" => GroupKind::heisenberg(n),
        "euclidean" => GroupKind::euclidean(m),
        _ => return Err(PyValueError::new_err(format!("unknown group kind {kind:?}"))),
    }
    .map_err(err)
}

/// A point of H_n (coordinates x1..xn, y1..yn, t) or R^m with exact coordinates.
#[pyclass(name = "Point", module = "apercut", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPoint(ExactPoint);

#[pymethods]
impl PyPoint {
    #[new]
    #[pyo3(signature = (coords, kind = "heisenberg"))]
    fn new(coords: Vec<PyRef<'_, PyQuadNum>>, kind: &str) -> PyResult<Self> {
        let len = coords.len();
        let g = match kind {
            "heisenberg" if len % 2 == 1 => group(kind, len / 2, 0)?,
            "heisenberg" => return Err(PyValueError::new_err("heisenberg points need 2n+1 coordinates")),
            _ => group(kind, 0, len)?,
        };
        ExactPoint::new(g, coords.iter().map(|c| c.0.clone()).collect()).map(Self).map_err(err)
    }

    fn coords(&self) -> Vec<PyQuadNum> {
        self.0.coords().iter().cloned().map(PyQuadNum).collect()
    }

    fn __mul__(&self, o: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.mul(&o.0).map(Self).map_err(err)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn dilate(&self, lam: &str) -> PyResult<Self> {
        Ok(Self(self.0.dilate(&rational(lam)?)))
    }

    fn norm(&self) -> f64 {
        self.0.qnorm()
    }

    fn dist(&self, o: PyRef<'_, Self>) -> PyResult<f64> {
        self.0.dist(&o.0).map_err(err)
    }

    /// Exact test of dist(self, other) <= r.
    fn dist_leq(&self, o: PyRef<'_, Self>, r: &str) -> PyResult<bool> {
        self.0.dist_leq(&o.0, &rational(r)?).map_err(err)
    }

    fn to_float(&self) -> Vec<f64> {
        self.0.to_float().coords().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Point({})", self.0)
    }
}

/// A finite patch of a cut-and-project set, with every point exact.
#[pyclass(name = "ModelSet", module = "apercut", frozen)]
struct PyModelSet {
    ms: apercut::ModelSet,
    hash: String,
}

#[pymethods]
impl PyModelSet {
    /// Loads a model-set JSON file's contents, verifying its content hash.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (ms, hash) = load_model_set(text).map_err(err)?;
        Ok(Self { ms, hash })
    }

    fn to_json(&self) -> PyResult<String> {
        let file = model_set_file(&self.ms, serde_json::Value::Null, serde_json::Value::Null);
        to_json(&file).map_err(err)
    }

    #[getter]
    fn content_hash(&self) -> String {
        self.hash.clone()
    }

    #[getter]
    fn group(&self) -> String {
        self.ms.scheme().group().to_string()
    }

    fn __len__(&self) -> usize {
        self.ms.len()
    }

    fn points(&self) -> Vec<PyPoint> {
        self.ms.points().iter().cloned().map(PyPoint).collect()
    }

    fn float_points(&self) -> Vec<Vec<f64>> {
        self.ms.float_points().to_vec()
    }

    /// Runs the full finite-sample analysis. Rationals are given as strings.
    #[pyo3(signature = (radii = None, erosion = None, grid_step = None, period_bound = None))]
    fn analyze<'py>(
        &self,
        py: Python<'py>,
        radii: Option<Vec<String>>,
        erosion: Option<&str>,
        grid_step: Option<&str>,
        period_bound: Option<&str>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let mut config = AnalysisConfig::defaults(self.ms.scheme().group());
        if let Some(r) = radii {
            config.radii = r.iter().map(|s| rational(s)).collect::<PyResult<_>>()?;
        }
        if let Some(s) = erosion {
            config.erosion = rational(s)?;
        }
        if let Some(s) = grid_step {
            config.grid_step = rational(s)?;
        }
        if let Some(s) = period_bound {
            config.period_bound = rational(s)?;
        }
        let report = py.detach(|| analyze(&self.ms, &config, &self.hash)).map_err(err)?;
        to_py(py, &report)
    }

    fn __repr__(&self) -> String {
        format!("ModelSet({}, {} points)", self.ms.scheme().group(), self.ms.len())
    }
}

fn scheme(kind: &str, n: usize, m: usize, d: u64, ring: &str) -> PyResult<Scheme> {
    let ring = RingSpec::new(d, RingVariant::from_tag(ring).map_err(err)?).map_err(err)?;
    Ok(Scheme::new(group(kind, n, m)?, ring))
}

/// Generates the model set for a box window over a box region. Windows and
/// regions use the "lo,hi;lo,hi;..." syntax, one pair broadcasting.
#[pyfunction]
#[pyo3(signature = (kind = "heisenberg", n = 1, m = 1, d = 2, ring = "zsqrt", window = None, region = None))]
fn generate(
    py: Python<'_>,
    kind: &str,
    n: usize,
    m: usize,
    d: u64,
    ring: &str,
    window: Option<&str>,
    region: Option<&str>,
) -> PyResult<PyModelSet> {
    let s = scheme(kind, n, m, d, ring)?;
    let g = s.group();
    let window = match window {
        Some(w) => AxisBox::parse(g, w).map_err(err)?,
        None => default_window(g),
    };
    let region = match region {
        Some(r) => AxisBox::parse(g, r).map_err(err)?,
        None => default_region(g),
    };
    let ms = py.detach(|| generate_model_set(&s, &window, &region)).map_err(err)?;
    let hash = content_hash(&ms);
    Ok(PyModelSet { ms, hash })
}

/// Exact window-regularity report: boundary witnesses and stabilizer search.
#[pyfunction]
#[pyo3(signature = (kind = "heisenberg", n = 1, m = 1, d = 2, ring = "zsqrt", window = None, bound = "2"))]
fn check_window<'py>(
    py: Python<'py>,
    kind: &str,
    n: usize,
    m: usize,
    d: u64,
    ring: &str,
    window: Option<&str>,
    bound: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let s = scheme(kind, n, m, d, ring)?;
    let window = match window {
        Some(w) => AxisBox::parse(s.group(), w).map_err(err)?,
        None => default_window(s.group()),
    };
    let report = check_window_regular(&s, &window, &rational(bound)?).map_err(err)?;
    to_py(py, &report)
}

/// Word-ball sizes |B(k)| for k = 0..kmax in the standard generators of
/// "z<m>" or "h<n>z".
#[pyfunction]
#[pyo3(signature = (group, kmax, budget = DEFAULT_BUDGET))]
fn ball_counts(py: Python<'_>, group: &str, kmax: usize, budget: usize) -> PyResult<Vec<u64>> {
    let gens = GenSet::standard(parse_group(group).map_err(err)?);
    let table = py.detach(|| bfs_balls(&gens, kmax, budget)).map_err(err)?;
    Ok(table.counts())
}

/// Least-squares fit of log |B(k)| against log k over k >= kmin.
#[pyfunction]
#[pyo3(signature = (group, kmax, kmin = 1, d = None, budget = DEFAULT_BUDGET))]
fn fit_growth<'py>(
    py: Python<'py>,
    group: &str,
    kmax: usize,
    kmin: usize,
    d: Option<u32>,
    budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let gens = GenSet::standard(parse_group(group).map_err(err)?);
    let table = py.detach(|| bfs_balls(&gens, kmax, budget)).map_err(err)?;
    let fit = fit_growth_exponent(&table, kmin, d).map_err(err)?;
    to_py(py, &fit)
}

/// Greedy maximal n-separated set in the a*n word ball and its cover check.
#[pyfunction]
#[pyo3(signature = (group, a, n, d = None, budget = DEFAULT_BUDGET))]
fn cover<'py>(
    py: Python<'py>,
    group: &str,
    a: usize,
    n: usize,
    d: Option<u32>,
    budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let g = parse_group(group).map_err(err)?;
    let d = d.unwrap_or(g.homogeneous_dim() as u32);
    let gens = GenSet::standard(g);
    let (_, report) = py.detach(|| cover_experiment(&gens, a, n, d, budget)).map_err(err)?;
    to_py(py, &report)
}

/// Tube and nuclear dimension bounds; the integers come back as Python ints.
#[pyfunction]
fn bounds<'py>(py: Python<'py>, d_g: u32, dim_x: u64) -> PyResult<Bound<'py, PyAny>> {
    let report = to_py(py, &bounds_report(BoundInput { d_g, dim_x }))?;
    let int = py.import("builtins")?.getattr("int")?;
    for key in ["tube_dim_bound", "nuclear_dim_from_tube", "nuclear_dim_bound"] {
        let v = report.get_item(key)?;
        report.set_item(key, int.call1((v,))?)?;
    }
    Ok(report)
}

#[pymodule]
#[pyo3(name = "apercut")]
fn apercut_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuadNum>()?;
    m.add_class::<PyPoint>()?;
    m.add_class::<PyModelSet>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(check_window, m)?)?;
    m.add_function(wrap_pyfunction!(ball_counts, m)?)?;
    m.add_function(wrap_pyfunction!(fit_growth, m)?)?;
    m.add_function(wrap_pyfunction!(cover, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    Ok(())
}
