//! Python bindings: non-crossing partitions, exact traces, freeness checks
//! and free-product normal forms.

use freeprod::freedim::{self, Core, Options, Strategy};
use freeprod::freeword::{self, Evaluator, Model};
use freeprod::matmodel::Harness;
use freeprod::ncpart;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A non-crossing partition of {1..n}, written like "1,4|2,3".
#[pyclass(name = "NCPartition", frozen)]
struct PyNCPartition {
    inner: ncpart::NCPartition,
}

#[pymethods]
impl PyNCPartition {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyNCPartition { inner: text.parse().map_err(value_error)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn blocks(&self) -> Vec<Vec<usize>> {
        self.inner.blocks().to_vec()
    }

    fn kreweras(&self) -> PyNCPartition {
        PyNCPartition { inner: self.inner.kreweras() }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NCPartition('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// `M_{2^depth}(core)` with core `C`, `R` or `LF(t)`.
#[pyclass(name = "NormalForm", frozen)]
struct PyNormalForm {
    inner: freedim::NormalForm,
    #[pyo3(get)]
    fdim: String,
    #[pyo3(get)]
    step_count: usize,
}

#[pymethods]
impl PyNormalForm {
    #[getter]
    fn depth(&self) -> u32 {
        self.inner.depth
    }

    /// "C", "R" or "LF".
    #[getter]
    fn core(&self) -> &'static str {
        match self.inner.core {
            Core::C => "C",
            Core::R => "R",
            Core::LF(_) => "LF",
        }
    }

    /// The `t` of `LF(t)` as an exact fraction string.
    #[getter]
    fn parameter(&self) -> Option<String> {
        self.inner.parameter().map(ToString::to_string)
    }

    /// Parameter after compressing every matrix level.
    #[getter]
    fn alias(&self) -> Option<String> {
        self.inner.alias().map(|a| a.to_string())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NormalForm('{}')", self.inner)
    }
}

/// Exact value `q0 + q1/π + q2/π² + …`.
#[pyclass(name = "TraceValue", frozen, get_all)]
struct PyTraceValue {
    exact: String,
    /// Coefficients of powers of `1/π`, as fraction strings.
    coefficients: Vec<String>,
    numeric: f64,
}

#[pymethods]
impl PyTraceValue {
    fn __str__(&self) -> String {
        self.exact.clone()
    }
}

#[pyclass(name = "FreenessReport", frozen, get_all)]
struct PyFreenessReport {
    harness: String,
    max_len: usize,
    words_checked: usize,
    failures: usize,
    passed: bool,
}

#[pyfunction]
fn catalan(n: usize) -> u64 {
    ncpart::catalan(n)
}

#[pyfunction]
fn nc_partitions(n: usize) -> PyResult<Vec<PyNCPartition>> {
    let parts = ncpart::enumerate(n).map_err(value_error)?;
    Ok(parts.into_iter().map(|inner| PyNCPartition { inner }).collect())
}

/// Trace of a word such as "c u c u*"; `model_json` declares extra legs.
#[pyfunction]
#[pyo3(signature = (word, model_json=None))]
fn trace(word: &str, model_json: Option<&str>) -> PyResult<PyTraceValue> {
    let model = match model_json {
        Some(text) => Model::from_json(text).map_err(value_error)?,
        None => Model::standard(),
    };
    let letters = freeword::parse_word(word, &model).map_err(value_error)?;
    let v = Evaluator::new().trace_poly(&freeword::normalize(&letters)).map_err(value_error)?;
    Ok(PyTraceValue {
        exact: v.to_string(),
        coefficients: v.coeffs().iter().map(ToString::to_string).collect(),
        numeric: v.eval_numeric(),
    })
}

/// Freeness check of a matrix model: PQ, UX, PX, UQ, SUM or MAT.
#[pyfunction]
#[pyo3(signature = (model, max_len=None))]
fn free_check(model: &str, max_len: Option<usize>) -> PyResult<PyFreenessReport> {
    let h = Harness::by_name(model, &Harness::default_finite_model()).map_err(value_error)?;
    let len = max_len.unwrap_or(h.default_max_len);
    let r = h.check(len, &mut Evaluator::new()).map_err(value_error)?;
    Ok(PyFreenessReport {
        passed: r.pass(),
        harness: r.harness,
        max_len: r.max_len,
        words_checked: r.words_checked,
        failures: r.failures.len(),
    })
}

/// Normal form of an expression such as "C^2 * M2(LF(3))".
#[pyfunction]
#[pyo3(signature = (expr, seed=None))]
fn normalize(expr: &str, seed: Option<u64>) -> PyResult<PyNormalForm> {
    let e = freedim::parse(expr).map_err(value_error)?;
    let opts = Options {
        strategy: seed.map_or(Strategy::Canonical, Strategy::Randomized),
        record_steps: false,
        step_limit: None,
    };
    let out = freedim::normalize_with(&e, &opts).map_err(value_error)?;
    Ok(PyNormalForm { inner: out.form, fdim: out.input_fdim.to_string(), step_count: out.step_count })
}

/// Rewrite steps as `(rule, path, before, after)` tuples.
#[pyfunction]
fn rewrite_steps(expr: &str) -> PyResult<Vec<(String, String, String, String)>> {
    let out = freedim::normalize_str(expr).map_err(value_error)?;
    Ok(out
        .steps
        .into_iter()
        .map(|s| (s.rule.to_string(), s.path, s.before, s.after))
        .collect())
}

/// Free dimension of an expression, as a fraction string.
#[pyfunction]
fn fdim(expr: &str) -> PyResult<String> {
    Ok(freedim::parse(expr).map_err(value_error)?.fdim().to_string())
}

#[pymodule]
fn pyfreeprod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNCPartition>()?;
    m.add_class::<PyNormalForm>()?;
    m.add_class::<PyTraceValue>()?;
    m.add_class::<PyFreenessReport>()?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(nc_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(free_check, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(rewrite_steps, m)?)?;
    m.add_function(wrap_pyfunction!(fdim, m)?)?;
    Ok(())
}
