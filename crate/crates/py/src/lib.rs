//! Python bindings. Vectors and functionals cross the boundary as lists of
//! floats; reports come back as small read-only classes with a `to_json`.

use normlab::catalog::{closed_form_e, regular_polygon_space, sharp_hexagon_space};
use normlab::derivatives::{rho, rho_numeric, smoothness_gap};
use normlab::oracle::suites;
use normlab::orthogonality::{additivity_report, eps_min, is_bj_orthogonal, orthogonality_report};
use normlab::support_map::{diam_support, smoothness_report, space_constants, support_set};
use normlab::{Functional, NormError, SpaceSpec, ToleranceConfig, Vector};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;

create_exception!(normlab_py, CapabilityError, PyRuntimeError, "The space lacks a structure the operation needs.");

fn to_py(e: NormError) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        CapabilityError::new_err(e.to_string())
    }
}

fn vector(coords: Vec<f64>) -> PyResult<Vector> {
    Vector::new(coords).map_err(to_py)
}

fn rows<T: AsRef<[f64]>>(items: &[T]) -> Vec<Vec<f64>> {
    items.iter().map(|v| v.as_ref().to_vec()).collect()
}

/// A finite-dimensional normed space.
#[pyclass(frozen, module = "normlab_py")]
struct Space {
    inner: normlab::Space,
}

fn wrap(spec: SpaceSpec, tol: Option<f64>) -> PyResult<Space> {
    let tol = match tol {
        Some(t) => ToleranceConfig::uniform(t).map_err(to_py)?,
        None => ToleranceConfig::default(),
    };
    Ok(Space { inner: normlab::Space::with_tolerance(spec, tol).map_err(to_py)? })
}

#[pymethods]
impl Space {
    /// Builds a space from a JSON spec, given as a string or a dict.
    #[new]
    #[pyo3(signature = (spec, tol=None))]
    fn new(py: Python<'_>, spec: &Bound<'_, PyAny>, tol: Option<f64>) -> PyResult<Self> {
        let text: String = if spec.is_instance_of::<PyString>() {
            spec.extract()?
        } else {
            py.import("json")?.call_method1("dumps", (spec,))?.extract()?
        };
        wrap(normlab::parse_space_spec(&text).map_err(to_py)?, tol)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.spec().label()
    }

    /// Vertices of the unit ball, or `None` when it is not a polytope.
    fn ball_vertices(&self) -> Option<Vec<Vec<f64>>> {
        self.inner.ball().map(|b| rows(b.vertices()))
    }

    fn norm(&self, x: Vec<f64>) -> PyResult<f64> {
        self.inner.norm(&vector(x)?).map_err(to_py)
    }

    fn dual_norm(&self, f: Vec<f64>) -> PyResult<f64> {
        self.inner.dual_norm(&Functional::new(f).map_err(to_py)?).map_err(to_py)
    }

    /// Extreme points of `J(x)`.
    fn support_set(&self, x: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
        Ok(rows(&support_set(&self.inner, &vector(x)?).map_err(to_py)?.vertices))
    }

    fn diam_support(&self, x: Vec<f64>) -> PyResult<f64> {
        diam_support(&self.inner, &vector(x)?).map_err(to_py)
    }

    fn smoothness(&self, x: Vec<f64>) -> PyResult<SmoothnessReport> {
        let r = smoothness_report(&self.inner, &vector(x)?).map_err(to_py)?;
        Ok(SmoothnessReport {
            json: serde_json::to_string(&r).expect("reports serialize"),
            x: r.x.into_coords(),
            eps: r.eps_x,
            face: rows(&r.face),
            is_smooth: r.is_smooth,
            is_approx_smooth: r.is_approx_smooth,
        })
    }

    fn smoothness_gap(&self, x: Vec<f64>) -> PyResult<f64> {
        smoothness_gap(&self.inner, &vector(x)?).map_err(to_py)
    }

    /// `(E, S, R)`; needs a polyhedral ball.
    fn constants(&self) -> PyResult<(f64, f64, f64)> {
        let c = space_constants(&self.inner).map_err(to_py)?;
        Ok((c.e, c.s, c.r))
    }

    /// `(rho_plus, rho_minus)`.
    fn rho(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<(f64, f64)> {
        let d = rho(&self.inner, &vector(x)?, &vector(y)?).map_err(to_py)?;
        Ok((d.rho_plus, d.rho_minus))
    }

    fn rho_numeric(&self, x: Vec<f64>, y: Vec<f64>, step: f64) -> PyResult<f64> {
        rho_numeric(&self.inner, &vector(x)?, &vector(y)?, step).map_err(to_py)
    }

    fn is_bj(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<bool> {
        is_bj_orthogonal(&self.inner, &vector(x)?, &vector(y)?).map_err(to_py)
    }

    fn eps_min(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
        eps_min(&self.inner, &vector(x)?, &vector(y)?).map_err(to_py)
    }

    fn orthogonality(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<OrthogonalityReport> {
        let r = orthogonality_report(&self.inner, &vector(x)?, &vector(y)?).map_err(to_py)?;
        Ok(OrthogonalityReport { json: serde_json::to_string(&r).expect("reports serialize"), is_bj: r.is_bj, eps_min: r.eps_min, witness: r.witness.into_coords() })
    }

    fn additivity(&self, x: Vec<f64>, y1: Vec<f64>, y2: Vec<f64>) -> PyResult<AdditivityReport> {
        let r = additivity_report(&self.inner, &vector(x)?, &vector(y1)?, &vector(y2)?).map_err(to_py)?;
        let verdict = |v| serde_json::to_value(v).expect("verdicts serialize").as_str().unwrap_or_default().to_string();
        Ok(AdditivityReport {
            json: serde_json::to_string(&r).expect("reports serialize"),
            eps_x: r.eps_x,
            eps_out: r.eps_out,
            window: verdict(r.verdicts.window),
            orthogonal_pair: verdict(r.verdicts.orthogonal_pair),
            half_eps: verdict(r.verdicts.half_eps),
        })
    }

    fn __repr__(&self) -> String {
        format!("Space({}, dim={})", self.inner.spec().label(), self.inner.dim())
    }
}

#[pyclass(frozen, module = "normlab_py")]
struct SmoothnessReport {
    #[pyo3(get)]
    x: Vec<f64>,
    #[pyo3(get)]
    eps: f64,
    #[pyo3(get)]
    face: Vec<Vec<f64>>,
    #[pyo3(get)]
    is_smooth: bool,
    #[pyo3(get)]
    is_approx_smooth: bool,
    json: String,
}

#[pymethods]
impl SmoothnessReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!("SmoothnessReport(eps={}, is_smooth={})", self.eps, self.is_smooth)
    }
}

#[pyclass(frozen, module = "normlab_py")]
struct OrthogonalityReport {
    #[pyo3(get)]
    is_bj: bool,
    #[pyo3(get)]
    eps_min: f64,
    #[pyo3(get)]
    witness: Vec<f64>,
    json: String,
}

#[pymethods]
impl OrthogonalityReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!("OrthogonalityReport(is_bj={}, eps_min={})", self.is_bj, self.eps_min)
    }
}

/// Verdict strings match the JSON report.
#[pyclass(frozen, module = "normlab_py")]
struct AdditivityReport {
    #[pyo3(get)]
    eps_x: f64,
    #[pyo3(get)]
    eps_out: f64,
    #[pyo3(get)]
    window: String,
    #[pyo3(get)]
    orthogonal_pair: String,
    #[pyo3(get)]
    half_eps: String,
    json: String,
}

#[pymethods]
impl AdditivityReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }
}

#[pyfunction]
#[pyo3(signature = (n, tol=None))]
fn regular_polygon(n: usize, tol: Option<f64>) -> PyResult<Space> {
    wrap(regular_polygon_space(n).map_err(to_py)?.space, tol)
}

#[pyfunction]
#[pyo3(signature = (delta, tol=None))]
fn sharp_hexagon(delta: f64, tol: Option<f64>) -> PyResult<Space> {
    wrap(sharp_hexagon_space(delta).map_err(to_py)?, tol)
}

/// Closed-form `E` of the regular `2n`-gon.
#[pyfunction]
fn regular_polygon_e(n: usize) -> f64 {
    closed_form_e(n)
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    suites::SUITE_NAMES.to_vec()
}

/// Runs a verification suite and returns its result as JSON.
#[pyfunction]
#[pyo3(signature = (name, seed=1))]
fn run_suite(py: Python<'_>, name: &str, seed: u64) -> PyResult<String> {
    let result = py
        .detach(|| suites::run_named(name, seed))
        .ok_or_else(|| PyValueError::new_err(format!("unknown suite {name:?}")))?;
    Ok(serde_json::to_string(&result).expect("suite results serialize"))
}

#[pymodule]
fn normlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds the classes and functions to `m`; lets embedders build the module
/// without importing the compiled extension.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Space>()?;
    m.add_class::<SmoothnessReport>()?;
    m.add_class::<OrthogonalityReport>()?;
    m.add_class::<AdditivityReport>()?;
    m.add("CapabilityError", m.py().get_type::<CapabilityError>())?;
    m.add_function(wrap_pyfunction!(regular_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(sharp_hexagon, m)?)?;
    m.add_function(wrap_pyfunction!(regular_polygon_e, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
