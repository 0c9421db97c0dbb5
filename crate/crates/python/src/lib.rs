//! Python bindings: Weyl groups, generic character tables and counts of
//! simple modules. Structured results come back as plain dicts and lists.

use heckecount_core::cache::Cache;
use heckecount_core::chartable::CharacterTable as CoreTable;
use heckecount_core::counting::{self, Counter as CoreCounter, Method, VerifyOptions};
use heckecount_core::engine::Engine;
use heckecount_core::exactalg::EParam;
use heckecount_core::rootsys::{self, CoxeterDatum, WeylGroup as CoreGroup, DEFAULT_MAX_ORDER};
use heckecount_core::{export, hecke, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use std::sync::Arc;

create_exception!(heckecount, InputError, PyValueError, "Invalid type, parameters or unreachable e.");
create_exception!(heckecount, ScaleError, PyRuntimeError, "A size cap was exceeded.");
create_exception!(heckecount, ComputationError, PyRuntimeError, "An internal check failed.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Input(_) | Error::NoTableModel(_) | Error::Unreachable { .. } => InputError::new_err(e.to_string()),
        Error::UnsupportedScale { .. } => ScaleError::new_err(e.to_string()),
        _ => ComputationError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn parse_datum(s: &str) -> PyResult<CoxeterDatum> {
    s.parse().map_err(py_err)
}

fn parse_e(e: &Bound<'_, PyAny>) -> PyResult<EParam> {
    if let Ok(n) = e.extract::<u64>() {
        return Ok(EParam::Finite(n));
    }
    let s: String = e.extract()?;
    s.parse().map_err(py_err)
}

fn engine(seed: u64, max_order: u64, cache_dir: Option<String>) -> Engine {
    Engine::new(cache_dir.map(Cache::new), seed, max_order)
}

/// A fully enumerated finite Weyl group.
#[pyclass(frozen)]
struct WeylGroup {
    inner: Arc<CoreGroup>,
}

#[pymethods]
impl WeylGroup {
    #[new]
    #[pyo3(signature = (cartan_type, max_order = DEFAULT_MAX_ORDER))]
    fn new(py: Python<'_>, cartan_type: &str, max_order: u64) -> PyResult<Self> {
        let datum = parse_datum(cartan_type)?;
        let g = py.detach(|| rootsys::build_group(&datum, max_order)).map_err(py_err)?;
        Ok(WeylGroup { inner: Arc::new(g) })
    }

    #[getter]
    fn cartan_type(&self) -> String {
        self.inner.datum().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn degrees(&self) -> PyResult<Vec<u64>> {
        self.inner.degrees().map_err(py_err)
    }

    #[getter]
    fn bad_primes(&self) -> Vec<u64> {
        self.inner.datum().bad_primes()
    }

    #[getter]
    fn num_classes(&self) -> usize {
        self.inner.classes().len()
    }

    /// Coefficients of the Poincare polynomial, constant term first.
    fn poincare(&self) -> Vec<u64> {
        self.inner.poincare_polynomial()
    }

    /// Reduced word of element `w` as a string ("1" for the identity).
    fn word(&self, w: usize) -> PyResult<String> {
        self.check(w)?;
        Ok(self.inner.word_string(w))
    }

    fn length(&self, w: usize) -> PyResult<usize> {
        self.check(w)?;
        Ok(self.inner.length(w))
    }

    /// Element index of a word such as "sts" or "s1s2".
    fn element(&self, word: &str) -> PyResult<usize> {
        self.inner.parse_word(word).map_err(py_err)
    }

    fn multiply(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner.multiply(a, b))
    }

    fn class_of(&self, w: usize) -> PyResult<usize> {
        self.check(w)?;
        Ok(self.inner.class_of(w))
    }

    fn character_table(&self, py: Python<'_>) -> PyResult<CharacterTable> {
        let g = self.inner.clone();
        let t = py.detach(|| CoreTable::for_group(&g)).map_err(py_err)?;
        Ok(CharacterTable { group: self.inner.clone(), inner: Arc::new(t) })
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("WeylGroup('{}', order={})", self.inner.datum(), self.inner.order())
    }
}

impl WeylGroup {
    fn check(&self, w: usize) -> PyResult<()> {
        if w < self.inner.order() {
            Ok(())
        } else {
            Err(InputError::new_err(format!("element index {w} out of range")))
        }
    }
}

/// Generic character table; values are polynomial strings in `u`.
#[pyclass(frozen)]
struct CharacterTable {
    group: Arc<CoreGroup>,
    inner: Arc<CoreTable>,
}

#[pymethods]
impl CharacterTable {
    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels.clone()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims.clone()
    }

    #[getter]
    fn class_names(&self) -> Vec<String> {
        self.inner.class_names.clone()
    }

    #[getter]
    fn values(&self) -> Vec<Vec<String>> {
        self.inner.values.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &export::chartable_json(&self.inner))
    }

    fn to_csv(&self) -> String {
        export::chartable_csv(&self.inner)
    }

    /// Schur elements keyed by representation label.
    fn schur<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let (g, t) = (self.group.clone(), self.inner.clone());
        let s = py.detach(|| heckecount_core::chartable::schur_elements(&g, &t)).map_err(py_err)?;
        to_py(py, &s.to_json())
    }

    /// Class polynomials keyed by reduced word, then class name.
    fn class_polynomials<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let (g, t) = (self.group.clone(), self.inner.clone());
        let f = py.detach(|| hecke::class_polynomials(&g, &t)).map_err(py_err)?;
        to_py(py, &export::classpoly_json(&g, &t, &f)["rows"])
    }

    /// Number of simple modules at `(e, ell)` by the rank of the specialised table.
    fn rank_count(&self, e: u64, ell: u64) -> PyResult<usize> {
        let p = counting::make_spec_point(e, ell).map_err(py_err)?;
        counting::count_simples_rank(&self.inner, &p).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("CharacterTable('{}', {} irreducibles)", self.inner.datum, self.inner.size())
    }
}

/// Counting on one group, with an optional on-disk cache.
#[pyclass(frozen)]
struct Counter {
    engine: Engine,
    inner: CoreCounter,
}

#[pymethods]
impl Counter {
    #[new]
    #[pyo3(signature = (cartan_type, seed = 0, max_order = DEFAULT_MAX_ORDER, cache_dir = None))]
    fn new(py: Python<'_>, cartan_type: &str, seed: u64, max_order: u64, cache_dir: Option<String>) -> PyResult<Self> {
        let datum = parse_datum(cartan_type)?;
        let engine = engine(seed, max_order, cache_dir);
        let inner = py.detach(|| engine.counter(&datum)).map_err(py_err)?;
        Ok(Counter { engine, inner })
    }

    /// Methods usable at `(e, ell)`.
    fn applicable(&self, e: u64, ell: u64) -> PyResult<Vec<String>> {
        let p = counting::make_spec_point(e, ell).map_err(py_err)?;
        Ok(self.inner.applicable(&p).iter().map(|m| m.to_string()).collect())
    }

    #[pyo3(signature = (e, ell, method = "auto"))]
    fn count(&self, py: Python<'_>, e: u64, ell: u64, method: &str) -> PyResult<usize> {
        let m: Method = method.parse().map_err(py_err)?;
        let p = counting::make_spec_point(e, ell).map_err(py_err)?;
        py.detach(|| self.inner.count(&p, m)).map_err(py_err)
    }

    /// Counts by every applicable method; raises if they disagree.
    fn count_all(&self, py: Python<'_>, e: u64, ell: u64) -> PyResult<std::collections::BTreeMap<String, usize>> {
        let p = counting::make_spec_point(e, ell).map_err(py_err)?;
        let counts = py.detach(|| self.inner.count_all(&p)).map_err(py_err)?;
        Ok(counts.into_iter().map(|(m, c)| (m.to_string(), c)).collect())
    }

    /// Characteristic-zero count for `e` (an integer or "inf").
    fn char0<'py>(&self, py: Python<'py>, e: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let e = parse_e(e)?;
        let c = py.detach(|| self.engine.char0(&self.inner, e)).map_err(py_err)?;
        to_py(py, &serde_json::json!({"count": c.count, "provenance": c.provenance, "primes": c.primes}))
    }

    /// One report dict per `e`.
    #[pyo3(signature = (e_list, ell_list, expect_bad_strict = false))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        e_list: Vec<u64>,
        ell_list: Vec<u64>,
        expect_bad_strict: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let reports = py
            .detach(|| {
                let char0 = |e: u64| self.engine.char0(&self.inner, EParam::Finite(e));
                counting::verify_theorem(&self.inner, &e_list, &ell_list, &char0, VerifyOptions { expect_bad_strict })
            })
            .map_err(py_err)?;
        let json: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
        to_py(py, &serde_json::Value::Array(json))
    }

    fn __repr__(&self) -> String {
        format!("Counter('{}', seed={})", self.inner.group.datum(), self.inner.seed)
    }
}

/// Order, degrees, bad primes and provenance; E-types come from stored data.
#[pyfunction]
#[pyo3(signature = (cartan_type, max_order = DEFAULT_MAX_ORDER))]
fn group_profile<'py>(py: Python<'py>, cartan_type: &str, max_order: u64) -> PyResult<Bound<'py, PyAny>> {
    let datum = parse_datum(cartan_type)?;
    let p = py.detach(|| rootsys::group_profile(&datum, max_order)).map_err(py_err)?;
    to_py(
        py,
        &serde_json::json!({
            "type": datum.to_string(),
            "order": p.order,
            "degrees": p.degrees,
            "bad_primes": p.bad_primes,
            "num_classes": p.num_classes,
            "poincare": p.poincare,
            "provenance": p.provenance,
        }),
    )
}

/// The specialisation point used for `(e, ell)`.
#[pyfunction]
fn spec_point<'py>(py: Python<'py>, e: u64, ell: u64) -> PyResult<Bound<'py, PyAny>> {
    let p = counting::make_spec_point(e, ell).map_err(py_err)?;
    to_py(py, &p.to_json())
}

/// Number of partitions of `n` with no part repeated `e` or more times.
#[pyfunction]
fn count_eregular(n: usize, e: u64) -> usize {
    counting::count_eregular(n, e)
}

#[pymodule]
pub fn heckecount(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<WeylGroup>()?;
    m.add_class::<CharacterTable>()?;
    m.add_class::<Counter>()?;
    m.add_function(wrap_pyfunction!(group_profile, m)?)?;
    m.add_function(wrap_pyfunction!(spec_point, m)?)?;
    m.add_function(wrap_pyfunction!(count_eregular, m)?)?;
    m.add("InputError", py.get_type::<InputError>())?;
    m.add("ScaleError", py.get_type::<ScaleError>())?;
    m.add("ComputationError", py.get_type::<ComputationError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
