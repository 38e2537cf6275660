//! Python bindings: coefficient fields, restricted Lie algebras, envelope
//! elements, radical certificates, and the verification scenarios, exposed
//! as the `resenv_py` extension module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;

use resenv::envalg::{self, EnvElement as CoreEnv};
use resenv::liealg::{LieAlgebra, LieElement as CoreLie, PNilpotence};
use resenv::scalars::{Field as CoreField, Scalar as CoreScalar};
use resenv::verify::algebra_spec::AlgebraSpecFile;
use resenv::verify::{
    cli, fixtures, free_module, locally_finite, perfect_field, semiperfect_abelian, torus_chain,
    ScenarioReport,
};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Deep conversion of a JSON value into native Python objects.
fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py_any(py)?,
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)?
            } else if let Some(u) = n.as_u64() {
                u.into_py_any(py)?
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)?
            }
        }
        Value::String(s) => s.into_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)?
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_py_any(py)?
        }
    })
}

fn report_to_py(py: Python<'_>, report: &ScenarioReport) -> PyResult<Py<PyAny>> {
    json_to_py(py, &serde_json::to_value(report).map_err(value_err)?)
}

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

/// A coefficient field `F_p(vars...)`; no vars gives the prime field.
#[pyclass(name = "Field", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: CoreField,
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, vars = Vec::new()))]
    fn new(p: u32, vars: Vec<String>) -> PyResult<Self> {
        Ok(PyField {
            inner: CoreField::new(p, &vars).map_err(value_err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.vars().to_vec()
    }

    #[getter]
    fn is_perfect(&self) -> bool {
        self.inner.is_perfect()
    }

    fn zero(&self) -> PyScalar {
        PyScalar {
            inner: self.inner.zero(),
        }
    }

    fn one(&self) -> PyScalar {
        PyScalar {
            inner: self.inner.one(),
        }
    }

    fn from_int(&self, n: i64) -> PyScalar {
        PyScalar {
            inner: self.inner.from_int(n),
        }
    }

    fn var(&self, name: &str) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.var_named(name).map_err(value_err)?,
        })
    }

    /// Parse an arithmetic expression (`+ - * / ^`, parentheses, integers,
    /// variable names).
    fn parse(&self, text: &str) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.parse(text).map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }

    fn __eq__(&self, other: &PyField) -> bool {
        self.inner == other.inner
    }
}

/// An exact element of `F_p(vars...)`, stored as a reduced fraction.
#[pyclass(name = "Scalar", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScalar {
    inner: CoreScalar,
}

#[pymethods]
impl PyScalar {
    #[getter]
    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field().clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    fn __add__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: &self.inner * &other.inner,
        }
    }

    fn __truediv__(&self, other: &PyScalar) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.checked_div(&other.inner).map_err(value_err)?,
        })
    }

    fn __pow__(&self, exp: u32, _modulo: Option<u32>) -> PyScalar {
        PyScalar {
            inner: self.inner.pow(exp),
        }
    }

    fn inverse(&self) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.inverse().map_err(value_err)?,
        })
    }

    /// `self^(p^r)`.
    fn frobenius(&self, r: u32) -> PyScalar {
        PyScalar {
            inner: self.inner.frobenius(r),
        }
    }

    /// Exact `p^r`-th root; raises when no root exists.
    fn pth_root(&self, r: u32) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.pth_root(r).map_err(value_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }

    fn __eq__(&self, other: &PyScalar) -> bool {
        self.inner == other.inner
    }
}

// ---------------------------------------------------------------------------
// Algebras and elements
// ---------------------------------------------------------------------------

/// A restricted Lie algebra with a name, loadable from a JSON structure
/// file or one of the built-in fixtures.
#[pyclass(name = "Algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    name: String,
    inner: LieAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// One of the built-in example algebras; see `fixture_names()`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::fixture_files()
            .into_iter()
            .find(|(stem, _)| *stem == name)
            .map(|(stem, alg)| PyAlgebra {
                name: stem.to_string(),
                inner: alg,
            })
            .ok_or_else(|| value_err(format!("unknown fixture `{name}`")))
    }

    /// Load an algebra structure file (same JSON format as the CLI).
    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let spec = AlgebraSpecFile::load(std::path::Path::new(path)).map_err(value_err)?;
        Ok(PyAlgebra {
            name: spec.name.clone(),
            inner: spec.to_algebra().map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec: AlgebraSpecFile = serde_json::from_str(text).map_err(value_err)?;
        Ok(PyAlgebra {
            name: spec.name.clone(),
            inner: spec.to_algebra().map_err(value_err)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.name.clone()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// dim u(L) = p^dim, or None when it overflows u64.
    #[getter]
    fn env_dim(&self) -> Option<u64> {
        self.inner.env_dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field().clone(),
        }
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    /// Check the restricted-Lie-algebra axioms; returns the full report as
    /// a dict with one entry per axiom.
    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = self.inner.validate();
        let checks: Vec<serde_json::Value> = report
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "pass": c.pass,
                    "detail": c.detail,
                })
            })
            .collect();
        json_to_py(
            py,
            &serde_json::json!({ "pass": report.pass(), "checks": checks }),
        )
    }

    /// Parse a degree-one element (a linear combination of basis labels).
    fn element(&self, text: &str) -> PyResult<PyLieElement> {
        Ok(PyLieElement {
            inner: self.inner.parse_element(text).map_err(value_err)?,
        })
    }

    /// Parse an element of the restricted enveloping algebra u(L).
    fn env(&self, text: &str) -> PyResult<PyEnvElement> {
        Ok(PyEnvElement {
            inner: envalg::parse_env(&self.inner, text).map_err(value_err)?,
        })
    }

    fn one(&self) -> PyEnvElement {
        PyEnvElement {
            inner: CoreEnv::one(&self.inner),
        }
    }

    fn basis_element(&self, label: &str) -> PyResult<PyLieElement> {
        let i = self
            .inner
            .label_index(label)
            .ok_or_else(|| value_err(format!("unknown basis label `{label}`")))?;
        Ok(PyLieElement {
            inner: self.inner.basis_element(i),
        })
    }

    /// Basis of the largest p-nilpotent restricted ideal, as element
    /// strings.
    fn p_radical(&self) -> PyResult<Vec<String>> {
        let rad = self.inner.p_radical().map_err(value_err)?;
        rad.space()
            .basis()
            .iter()
            .map(|row| {
                self.inner
                    .element(row.clone())
                    .map(|e| e.to_string())
                    .map_err(value_err)
            })
            .collect()
    }

    /// Jacobson radical of u(L) with its certificate, as a report dict
    /// (same shape as `resenv radical --report json`).
    fn radical(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = cli::radical_report(&self.inner, &self.name).map_err(value_err)?;
        report_to_py(py, &report)
    }

    /// Serialize back to the JSON structure-file format.
    fn to_json(&self) -> PyResult<String> {
        let spec = AlgebraSpecFile::from_algebra(&self.name, &self.inner);
        let mut text = serde_json::to_string_pretty(&spec).map_err(value_err)?;
        text.push('\n');
        Ok(text)
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(name={:?}, p={}, dim={})",
            self.name,
            self.inner.p(),
            self.inner.dim()
        )
    }
}

/// A degree-one element of a restricted Lie algebra.
#[pyclass(name = "LieElement", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLieElement {
    inner: CoreLie,
}

#[pymethods]
impl PyLieElement {
    fn __add__(&self, other: &PyLieElement) -> PyLieElement {
        PyLieElement {
            inner: self.inner.add(&other.inner),
        }
    }

    fn scale(&self, c: &PyScalar) -> PyLieElement {
        PyLieElement {
            inner: self.inner.scale(&c.inner),
        }
    }

    fn bracket(&self, other: &PyLieElement) -> PyLieElement {
        let alg = self.inner.algebra().clone();
        PyLieElement {
            inner: alg.bracket(&self.inner, &other.inner),
        }
    }

    /// The r-fold iterated p-power `self^[p]^r`.
    fn p_power(&self, r: u32) -> PyResult<PyLieElement> {
        let alg = self.inner.algebra().clone();
        Ok(PyLieElement {
            inner: alg.p_power(&self.inner, r).map_err(value_err)?,
        })
    }

    /// Minimal n with `self^[p]^n = 0`, or None when no iterate vanishes.
    fn p_nilpotency(&self) -> PyResult<Option<u32>> {
        let alg = self.inner.algebra().clone();
        match alg.is_p_nilpotent(&self.inner).map_err(value_err)? {
            PNilpotence::Nilpotent { steps } => Ok(Some(steps)),
            PNilpotence::NotNilpotent { .. } => Ok(None),
        }
    }

    /// The same element viewed inside u(L).
    fn to_env(&self) -> PyEnvElement {
        PyEnvElement {
            inner: CoreEnv::from_lie(&self.inner),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }

    fn __eq__(&self, other: &PyLieElement) -> bool {
        self.inner == other.inner
    }
}

/// An element of the restricted enveloping algebra u(L), stored on the
/// ordered monomial basis.
#[pyclass(name = "EnvElement", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyEnvElement {
    inner: CoreEnv,
}

#[pymethods]
impl PyEnvElement {
    fn __add__(&self, other: &PyEnvElement) -> PyEnvElement {
        PyEnvElement {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &PyEnvElement) -> PyEnvElement {
        PyEnvElement {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &PyEnvElement) -> PyEnvElement {
        PyEnvElement {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __pow__(&self, exp: u64, _modulo: Option<u64>) -> PyEnvElement {
        PyEnvElement {
            inner: self.inner.pow(exp),
        }
    }

    fn scale(&self, c: &PyScalar) -> PyEnvElement {
        PyEnvElement {
            inner: self.inner.scale(&c.inner),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    /// Number of monomials in the support.
    fn __len__(&self) -> usize {
        self.inner.terms().len()
    }

    /// The counit (augmentation) of the element.
    fn counit(&self) -> PyScalar {
        PyScalar {
            inner: self.inner.counit(),
        }
    }

    fn antipode(&self) -> PyEnvElement {
        PyEnvElement {
            inner: self.inner.antipode(),
        }
    }

    /// Exact two-sided inverse in u(L), or None when not a unit.
    fn inverse(&self) -> PyResult<Option<PyEnvElement>> {
        Ok(self
            .inner
            .inverse()
            .map_err(value_err)?
            .map(|inner| PyEnvElement { inner }))
    }

    fn is_invertible(&self) -> PyResult<bool> {
        self.inner.is_invertible().map_err(value_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }

    fn __eq__(&self, other: &PyEnvElement) -> bool {
        self.inner == other.inner
    }
}

// ---------------------------------------------------------------------------
// Scenario entry points
// ---------------------------------------------------------------------------

/// Names of the built-in example algebras.
#[pyfunction]
fn fixture_names() -> Vec<String> {
    fixtures::fixture_files()
        .into_iter()
        .map(|(stem, _)| stem.to_string())
        .collect()
}

#[pyfunction]
#[pyo3(signature = (m, r, trials = 10, seed = 7))]
fn verify_perfect_field(
    py: Python<'_>,
    m: usize,
    r: u32,
    trials: u32,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let params = perfect_field::PerfectFieldParams { m, r, trials, seed };
    let report = perfect_field::run(&params).map_err(value_err)?;
    report_to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (algebra, gens = None))]
fn verify_locally_finite(
    py: Python<'_>,
    algebra: &PyAlgebra,
    gens: Option<Vec<String>>,
) -> PyResult<Py<PyAny>> {
    let report = locally_finite::run(&algebra.inner, gens.as_deref()).map_err(value_err)?;
    report_to_py(py, &report)
}

#[pyfunction]
fn verify_torus_chain(py: Python<'_>, k: usize, p: u32) -> PyResult<Py<PyAny>> {
    let report = torus_chain::run(k, p).map_err(value_err)?;
    report_to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (algebra, subalgebra, chain, trials = 10, seed = 7))]
fn verify_free_module(
    py: Python<'_>,
    algebra: &PyAlgebra,
    subalgebra: Vec<String>,
    chain: Vec<String>,
    trials: u32,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let report =
        free_module::run(&algebra.inner, &subalgebra, &chain, trials, seed).map_err(value_err)?;
    report_to_py(py, &report)
}

#[pyfunction]
fn verify_semiperfect_abelian(py: Python<'_>, algebra: &PyAlgebra) -> PyResult<Py<PyAny>> {
    let report = semiperfect_abelian::run(&algebra.inner).map_err(value_err)?;
    report_to_py(py, &report)
}

#[pymodule]
fn resenv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyScalar>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyLieElement>()?;
    m.add_class::<PyEnvElement>()?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify_perfect_field, m)?)?;
    m.add_function(wrap_pyfunction!(verify_locally_finite, m)?)?;
    m.add_function(wrap_pyfunction!(verify_torus_chain, m)?)?;
    m.add_function(wrap_pyfunction!(verify_free_module, m)?)?;
    m.add_function(wrap_pyfunction!(verify_semiperfect_abelian, m)?)?;
    Ok(())
}
