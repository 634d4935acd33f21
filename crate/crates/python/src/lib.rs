//! Python bindings: `import crestimate_py`.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use crestimate::bounds::{self, BoundCertificate, QReport};
use crestimate::crests::{self, CrestReport};
use crestimate::hardy::{self, HardyReport};
use crestimate::piecewise::{self, Function, PiecewiseLinearFunction, SampleMode, StepFunction};
use crestimate::rearrange;
use crestimate::transform;
use crestimate::verify::{self, Family, SuiteConfig};
use crestimate::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Convergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

/// A nonnegative step or piecewise-linear function.
#[pyclass(name = "Function", module = "crestimate_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyFunction {
    inner: Function,
}

impl From<Function> for PyFunction {
    fn from(inner: Function) -> Self {
        Self { inner }
    }
}

fn weight(f: &PyFunction) -> PyResult<&StepFunction> {
    f.inner
        .as_step()
        .ok_or_else(|| PyValueError::new_err("weights must be step functions"))
}

#[pymethods]
impl PyFunction {
    /// `values[i]` on `[breakpoints[i], breakpoints[i+1])`.
    #[staticmethod]
    fn step(breakpoints: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        StepFunction::new(breakpoints, values)
            .map(|s| Function::from(s).into())
            .map_err(py_err)
    }

    /// Linear interpolation of `node_values` at `nodes`, zero outside.
    #[staticmethod]
    fn linear(nodes: Vec<f64>, node_values: Vec<f64>) -> PyResult<Self> {
        PiecewiseLinearFunction::new(nodes, node_values)
            .map(|l| Function::from(l).into())
            .map_err(py_err)
    }

    /// `mode` is `"left-step"` or `"linear"`.
    #[staticmethod]
    #[pyo3(signature = (xs, ys, mode = "left-step"))]
    fn from_samples(xs: Vec<f64>, ys: Vec<f64>, mode: &str) -> PyResult<Self> {
        let mode = match mode {
            "left-step" => SampleMode::LeftStep,
            "linear" => SampleMode::Linear,
            other => {
                return Err(PyValueError::new_err(format!(
                    "mode must be 'left-step' or 'linear', got {other:?}"
                )))
            }
        };
        piecewise::from_samples(&xs, &ys, mode).map(Into::into).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        crestimate::io::parse_json(text).map(Into::into).map_err(py_err)
    }

    /// `5n` unit boxes at `0, 2, 4, ...`.
    #[staticmethod]
    fn comb(n: u32) -> PyResult<Self> {
        bounds::comb_example(n)
            .map(|s| Function::from(s).into())
            .map_err(py_err)
    }

    fn to_json(&self) -> String {
        crestimate::io::to_json(&self.inner)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner {
            Function::Step(_) => "step",
            Function::Linear(_) => "linear",
        }
    }

    /// `(breakpoints, values)` or `(nodes, node_values)`.
    fn data(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.inner {
            Function::Step(s) => (s.breakpoints().to_vec(), s.values().to_vec()),
            Function::Linear(l) => (l.nodes().to_vec(), l.node_values().to_vec()),
        }
    }

    fn __call__(&self, x: f64) -> f64 {
        self.inner.evaluate(x)
    }

    fn integrate(&self, a: f64, b: f64) -> f64 {
        self.inner.integrate(a, b)
    }

    fn total_integral(&self) -> f64 {
        self.inner.total_integral()
    }

    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }

    fn fourier(&self, z: f64) -> Complex64 {
        transform::fourier(&self.inner, z)
    }

    fn sine_transform(&self, z: f64) -> PyResult<f64> {
        transform::sine_transform(&self.inner, z).map_err(py_err)
    }

    fn cosine_transform(&self, z: f64) -> PyResult<f64> {
        transform::cosine_transform(&self.inner, z).map_err(py_err)
    }

    /// The decreasing rearrangement `f*`.
    fn rearrangement(&self) -> Self {
        rearrange::rearrangement(&self.inner).into_star().into()
    }

    /// `|{f > alpha}|`.
    fn distribution(&self, alpha: f64) -> PyResult<f64> {
        rearrange::distribution(&self.inner, alpha).map_err(py_err)
    }

    fn crest_count(&self) -> PyResult<usize> {
        crests::count_crests(&self.inner).map_err(py_err)
    }

    fn decompose(&self) -> PyResult<PyCrestReport> {
        crests::decompose(&self.inner).map(PyCrestReport).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Function({})", self.to_json())
    }
}

#[pyclass(name = "CrestReport", module = "crestimate_py", frozen)]
pub struct PyCrestReport(CrestReport);

#[pymethods]
impl PyCrestReport {
    #[getter]
    fn count(&self) -> usize {
        self.0.count
    }

    #[getter]
    fn cut_points(&self) -> Vec<f64> {
        self.0.cut_points.clone()
    }

    #[getter]
    fn crest_locations(&self) -> Vec<f64> {
        self.0.crest_locations.clone()
    }

    #[getter]
    fn pieces(&self) -> Vec<PyFunction> {
        self.0.pieces.iter().cloned().map(Into::into).collect()
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }
}

/// `(z, |f^(z)|, int_0^{1/z} f*, N pi sqrt(10) int_0^{1/z} f*, Q(z))`
type GridRow = (f64, f64, f64, f64, f64);

fn row(r: &QReport) -> GridRow {
    (r.z, r.transform_magnitude, r.tail_integral, r.theorem1_bound, r.q_value)
}

#[pyclass(name = "BoundCertificate", module = "crestimate_py", frozen)]
pub struct PyCertificate(BoundCertificate);

#[pymethods]
impl PyCertificate {
    #[getter]
    fn best_z(&self) -> f64 {
        self.0.best_z
    }

    #[getter]
    fn best_q(&self) -> f64 {
        self.0.best_q
    }

    #[getter]
    fn crest_lower_bound(&self) -> u64 {
        self.0.crest_lower_bound
    }

    #[getter]
    fn root_lower_bound(&self) -> u64 {
        self.0.root_lower_bound
    }

    #[getter]
    fn derived_root_bound(&self) -> u64 {
        self.0.derived_root_bound
    }

    #[getter]
    fn nontrivial(&self) -> bool {
        self.0.nontrivial
    }

    #[getter]
    fn grid(&self) -> Vec<GridRow> {
        self.0.grid.iter().map(row).collect()
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }
}

#[pyclass(name = "HardyReport", module = "crestimate_py", frozen, get_all)]
pub struct PyHardyReport {
    p: f64,
    q: f64,
    fourier_weighted_norm: f64,
    hardy_middle: f64,
    lambda_rhs: f64,
    chain_constant: f64,
    chain_bound: f64,
    chain_holds: bool,
    hardy_ratio: f64,
    implied_fourier_constant: f64,
    json: String,
}

impl From<HardyReport> for PyHardyReport {
    fn from(r: HardyReport) -> Self {
        Self {
            p: r.p,
            q: r.q,
            fourier_weighted_norm: r.fourier_weighted_norm,
            hardy_middle: r.hardy_middle,
            lambda_rhs: r.lambda_rhs,
            chain_constant: r.chain_constant,
            chain_bound: r.chain_bound,
            chain_holds: r.chain_holds,
            hardy_ratio: r.hardy_ratio,
            implied_fourier_constant: r.implied_fourier_constant,
            json: to_json(&r),
        }
    }
}

#[pymethods]
impl PyHardyReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }
}

/// Row of the `Q` grid at a single frequency.
#[pyfunction]
fn q_report(f: &PyFunction, z: f64) -> PyResult<GridRow> {
    bounds::theorem1_bound(&f.inner, z).map(|r| row(&r)).map_err(py_err)
}

/// `Q` sweep over `grid` (default grid when omitted) with optional local
/// refinement around the best point.
#[pyfunction]
#[pyo3(signature = (f, grid = None, refine = 0))]
fn crest_lower_bound(f: &PyFunction, grid: Option<Vec<f64>>, refine: usize) -> PyResult<PyCertificate> {
    let grid = grid.unwrap_or_else(bounds::default_grid);
    bounds::crest_lower_bound_refined(&f.inner, &grid, refine)
        .map(PyCertificate)
        .map_err(py_err)
}

#[pyfunction]
fn default_grid() -> Vec<f64> {
    bounds::default_grid()
}

/// Exhaustive crest count for step functions with at most 10 pieces.
#[pyfunction]
fn brute_force_crests(f: &PyFunction) -> PyResult<usize> {
    let s = f
        .inner
        .as_step()
        .ok_or_else(|| PyValueError::new_err("brute force needs a step function"))?;
    crests::brute_force_crests(s).map_err(py_err)
}

#[pyfunction]
fn check_corollary2(f: &PyFunction, u: &PyFunction, v: &PyFunction, p: f64, q: f64) -> PyResult<PyHardyReport> {
    hardy::check_corollary2(&f.inner, weight(u)?, weight(v)?, p, q)
        .map(Into::into)
        .map_err(py_err)
}

/// Runs a randomized suite and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (family, trials = 1000, seed = 42, frequencies = 50))]
fn run_suite(py: Python<'_>, family: &str, trials: u64, seed: u64, frequencies: usize) -> PyResult<String> {
    let family: Family = family.parse().map_err(py_err)?;
    let cfg = SuiteConfig {
        seed,
        trials,
        frequencies,
        ..SuiteConfig::default()
    };
    let report = py.detach(|| verify::run_suite(family, &cfg)).map_err(py_err)?;
    Ok(to_json(&report))
}

#[pymodule]
fn crestimate_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFunction>()?;
    m.add_class::<PyCrestReport>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyHardyReport>()?;
    m.add_function(wrap_pyfunction!(q_report, m)?)?;
    m.add_function(wrap_pyfunction!(crest_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(default_grid, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_crests, m)?)?;
    m.add_function(wrap_pyfunction!(check_corollary2, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("CREST_CONSTANT", bounds::crest_constant())?;
    Ok(())
}
