//! Python bindings. Structured results are handed over as plain dicts and
//! lists with the same field names as the CLI's JSON output.

use orbitdescent::catalog::{verify_matrix_claims, Family, GroupSpec, Params};
use orbitdescent::cli::{orbits_output, tori_output, twisted_output};
use orbitdescent::descent::{fixed_and_pairs, galois_action, twisted_parameter_action};

type PyPairs = (Vec<PySignedPerm>, Vec<(PySignedPerm, PySignedPerm)>);
use orbitdescent::twisted::{a_max, springer_image_sweep, twisted_involutions};
use orbitdescent::weyl::SignedPerm;
use orbitdescent::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(orbitdescent_py, OrbitDescentError, PyException);
create_exception!(orbitdescent_py, MissingWkData, OrbitDescentError);

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidParams(_) | Error::Parse(_) | Error::RankMismatch(..) => PyValueError::new_err(e.to_string()),
        Error::MissingWkData(_) => MissingWkData::new_err(e.to_string()),
        other => OrbitDescentError::new_err(other.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| OrbitDescentError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

/// Signed permutation of `{±1, …, ±n}`, given by its images `±(k+1)`.
#[pyclass(name = "SignedPerm", module = "orbitdescent_py", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PySignedPerm(SignedPerm);

fn wrap(v: Vec<SignedPerm>) -> Vec<PySignedPerm> {
    v.into_iter().map(PySignedPerm).collect()
}

#[pymethods]
impl PySignedPerm {
    #[new]
    fn new(images: Vec<i32>) -> PyResult<Self> {
        SignedPerm::from_images(&images).map(Self).map_err(to_py_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(SignedPerm::identity(n))
    }

    /// Transposition `(a b)`, 1-based.
    #[staticmethod]
    fn transposition(n: usize, a: usize, b: usize) -> PyResult<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(PyValueError::new_err(format!("({a} {b}) is not a transposition of 1..{n}")));
        }
        Ok(Self(SignedPerm::transposition(n, a, b)))
    }

    /// Parses the display form, e.g. `"(1 2)(3 4)"`, `"[+-]"` or `"e"`.
    #[staticmethod]
    fn parse(n: usize, s: &str) -> PyResult<Self> {
        SignedPerm::parse(n, s).map(Self).map_err(to_py_err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn images(&self) -> Vec<i32> {
        self.0.images()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn is_involution(&self) -> bool {
        self.0.is_involution()
    }

    #[pyo3(name = "to_matrix")]
    fn matrix(&self) -> Vec<Vec<i64>> {
        self.0.to_matrix()
    }

    /// `(a * b)(x) = a(b(x))`.
    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(to_py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SignedPerm({:?})", self.0.images())
    }
}

/// A catalog entry, e.g. `Group("Upq", p=2, q=1)` or `Group("SL2n", n=2)`.
#[pyclass(name = "Group", module = "orbitdescent_py", frozen)]
struct PyGroup(GroupSpec);

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (family, n=None, p=None, q=None))]
    fn new(family: &str, n: Option<usize>, p: Option<usize>, q: Option<usize>) -> PyResult<Self> {
        let family: Family = family.parse().map_err(to_py_err)?;
        GroupSpec::build(family, Params { n, p, q }).map(Self).map_err(to_py_err)
    }

    #[getter]
    fn family(&self) -> String {
        self.0.family().to_string()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label().to_string()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.0.ambient_dim()
    }

    #[getter]
    fn has_wk_data(&self) -> bool {
        self.0.has_wk_data()
    }

    fn w0(&self) -> PySignedPerm {
        PySignedPerm(self.0.weyl().longest_element())
    }

    fn a_max(&self) -> PyResult<PySignedPerm> {
        a_max(&self.0).map(PySignedPerm).map_err(to_py_err)
    }

    fn twisted_involutions(&self) -> PyResult<Vec<PySignedPerm>> {
        twisted_involutions(self.0.context()).map(wrap).map_err(to_py_err)
    }

    /// The Springer image `I'`, computed with the monoid action.
    fn twisted_parameters(&self) -> PyResult<Vec<PySignedPerm>> {
        self.0.twisted_parameters().map(wrap).map_err(to_py_err)
    }

    /// The Springer image computed by sweeping every orbit parameter.
    fn springer_image_sweep(&self) -> PyResult<Vec<PySignedPerm>> {
        springer_image_sweep(&self.0).map(wrap).map_err(to_py_err)
    }

    /// `(torus index, representative, springer value)` triples.
    fn orbit_parameters(&self) -> PyResult<Vec<(usize, PySignedPerm, PySignedPerm)>> {
        let params = self.0.orbit_parameters().map_err(to_py_err)?;
        Ok(params
            .into_iter()
            .map(|p| (p.torus_index, PySignedPerm(p.representative), PySignedPerm(p.springer_value)))
            .collect())
    }

    /// Fixed points and pairs of the Galois involution on `W_K,i \ W`, or on
    /// the twisted-involution picture when `torus` is omitted.
    #[pyo3(signature = (torus=None))]
    fn galois_orbits(&self, torus: Option<usize>) -> PyResult<PyPairs> {
        let action = match torus {
            Some(i) => galois_action(&self.0, i),
            None => twisted_parameter_action(&self.0),
        }
        .map_err(to_py_err)?;
        let (fixed, pairs) = fixed_and_pairs(&action).map_err(to_py_err)?;
        Ok((wrap(fixed), pairs.into_iter().map(|(a, b)| (PySignedPerm(a), PySignedPerm(b))).collect()))
    }

    fn classify_tori<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &tori_output(&self.0).map_err(to_py_err)?)
    }

    fn orbits<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &orbits_output(&self.0).map_err(to_py_err)?)
    }

    fn twisted<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &twisted_output(&self.0).map_err(to_py_err)?)
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &verify_matrix_claims(&self.0))
    }

    fn spec<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    fn __repr__(&self) -> String {
        let p = self.0.params();
        let args: Vec<String> = [("n", p.n), ("p", p.p), ("q", p.q)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
            .collect();
        format!("Group({:?}, {})", self.0.family().to_string(), args.join(", "))
    }
}

/// Names accepted by `Group(family, ...)`.
#[pyfunction]
fn families() -> Vec<&'static str> {
    Family::ALL.iter().map(|f| f.name()).collect()
}

#[pymodule]
fn orbitdescent_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignedPerm>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add("OrbitDescentError", m.py().get_type::<OrbitDescentError>())?;
    m.add("MissingWkData", m.py().get_type::<MissingWkData>())?;
    Ok(())
}
