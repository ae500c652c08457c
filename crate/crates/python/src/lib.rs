//! Python bindings for `peirce-core`. Reports come back as plain dicts with the
//! same shape as the command-line JSON.

use std::sync::Arc;

use peirce_core::report::to_json;
use peirce_core::{
    check_conditions, empirical_theorem_report, enumerate_reverse_derivable_maps, find_idempotents,
    find_nonadditive_reverse_derivable, ConditionSet, Element, Error, Limits, MapSource, MapTable,
    Mode, PeirceDecomposition, SearchConfig, SearchMode,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

create_exception!(
    peirce_lab,
    PeirceError,
    PyException,
    "Raised for invalid rings, maps or inputs."
);
create_exception!(
    peirce_lab,
    GuardError,
    PeirceError,
    "Raised when a size guard or search cap is exceeded."
);

fn err(e: Error) -> PyErr {
    match e {
        Error::GuardExceeded { .. } | Error::SearchCap(_) => GuardError::new_err(e.to_string()),
        _ => PeirceError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "json")?.call_method1("loads", (to_json(value),))
}

fn search_config(
    mode: &str,
    max_ring_size: Option<usize>,
    max_solutions: Option<usize>,
    time_budget: Option<f64>,
) -> PyResult<SearchConfig> {
    let mode: SearchMode = mode.parse().map_err(err)?;
    let mut cfg = SearchConfig::for_mode(mode);
    if let Some(n) = max_ring_size {
        cfg.max_ring_size = n;
    }
    cfg.max_solutions = max_solutions;
    cfg.time_budget = time_budget;
    Ok(cfg)
}

/// A finite ring given by structure constants.
#[pyclass(module = "peirce_lab", frozen)]
struct Ring {
    inner: Arc<peirce_core::Ring>,
}

impl Ring {
    fn index(&self, x: Vec<u64>) -> PyResult<usize> {
        self.inner
            .index_of(&self.inner.reduce(&Element::new(x)).map_err(err)?)
            .map_err(err)
    }

    fn coords(&self, i: usize) -> Vec<u64> {
        self.inner.element(i).coords().to_vec()
    }
}

#[pymethods]
impl Ring {
    /// Build a catalog ring, e.g. `Ring.catalog("matrix", [2, 2])`.
    #[staticmethod]
    #[pyo3(signature = (name, params = Vec::new()))]
    fn catalog(name: &str, params: Vec<u64>) -> PyResult<Ring> {
        let limits = Limits::from_env().map_err(err)?;
        let inner = peirce_core::construct_catalog_ring(name, &params, limits).map_err(err)?;
        Ok(Ring {
            inner: Arc::new(inner),
        })
    }

    /// Build a ring from the JSON ring format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Ring> {
        let limits = Limits::from_env().map_err(err)?;
        let inner = peirce_core::Ring::from_json(text, limits).map_err(err)?;
        Ok(Ring {
            inner: Arc::new(inner),
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn moduli(&self) -> Vec<u64> {
        self.inner.moduli().to_vec()
    }

    #[getter]
    fn unit(&self) -> Option<Vec<u64>> {
        self.inner.unit().map(|u| u.coords().to_vec())
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.inner.order()).map(|i| self.coords(i)).collect()
    }

    fn add(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<Vec<u64>> {
        Ok(self.coords(self.inner.add(self.index(x)?, self.index(y)?)))
    }

    fn sub(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<Vec<u64>> {
        Ok(self.coords(self.inner.sub(self.index(x)?, self.index(y)?)))
    }

    fn mul(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<Vec<u64>> {
        Ok(self.coords(self.inner.mul(self.index(x)?, self.index(y)?)))
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.verify_axioms().map_err(err)?)
    }

    fn idempotents<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &find_idempotents(&self.inner).map_err(err)?)
    }

    fn center(&self) -> PyResult<Vec<Vec<u64>>> {
        Ok(self
            .inner
            .center()
            .map_err(err)?
            .into_iter()
            .map(|z| self.coords(z))
            .collect())
    }

    fn is_commutative(&self) -> PyResult<bool> {
        self.inner.is_commutative().map_err(err)
    }

    /// Peirce decomposition relative to a nontrivial idempotent.
    fn peirce<'py>(&self, py: Python<'py>, e: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
        let d = PeirceDecomposition::new(self.inner.clone(), self.index(e)?).map_err(err)?;
        to_py(py, &d.report())
    }

    /// Check `thm1`, `thm2` or `ei` at the idempotent `e`.
    #[pyo3(signature = (e, set, strict = false))]
    fn conditions<'py>(
        &self,
        py: Python<'py>,
        e: Vec<u64>,
        set: &str,
        strict: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let set: ConditionSet = set.parse().map_err(err)?;
        let mode = if strict {
            Mode::AnnihilatesCenter
        } else {
            Mode::All
        };
        to_py(
            py,
            &check_conditions(&self.inner, self.index(e)?, set, mode).map_err(err)?,
        )
    }

    /// Enumerate every reverse derivable map.
    #[pyo3(signature = (mode = "csp", max_ring_size = None, max_solutions = None, time_budget = None))]
    fn search<'py>(
        &self,
        py: Python<'py>,
        mode: &str,
        max_ring_size: Option<usize>,
        max_solutions: Option<usize>,
        time_budget: Option<f64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let cfg = search_config(mode, max_ring_size, max_solutions, time_budget)?;
        let result = enumerate_reverse_derivable_maps(&self.inner, &cfg).map_err(err)?;
        to_py(py, &result.report(&self.inner, &cfg))
    }

    /// The first non-additive reverse derivable map, or `None`.
    #[pyo3(signature = (mode = "csp", max_ring_size = None))]
    fn find_nonadditive(&self, mode: &str, max_ring_size: Option<usize>) -> PyResult<Option<Map>> {
        let cfg = search_config(mode, max_ring_size, None, None)?;
        let found = find_nonadditive_reverse_derivable(&self.inner, &cfg).map_err(err)?;
        Ok(found.map.map(|inner| Map { inner }))
    }

    /// Hypotheses, full solution set and verdicts at `e`.
    #[pyo3(signature = (e, mode = "csp", max_ring_size = None))]
    fn theorem_report<'py>(
        &self,
        py: Python<'py>,
        e: Vec<u64>,
        mode: &str,
        max_ring_size: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let cfg = search_config(mode, max_ring_size, None, None)?;
        to_py(
            py,
            &empirical_theorem_report(&self.inner, self.index(e)?, &cfg).map_err(err)?,
        )
    }

    fn __repr__(&self) -> String {
        format!("Ring({}, order={})", self.inner.name(), self.inner.order())
    }
}

/// A map R -> R stored as a full table.
#[pyclass(module = "peirce_lab", frozen)]
struct Map {
    inner: MapTable,
}

#[pymethods]
impl Map {
    /// Exactly one of `catalog`, `expr` or `table` (a list of `[x, f(x)]` pairs).
    #[new]
    #[pyo3(signature = (ring, catalog = None, expr = None, table = None))]
    fn new(
        ring: &Ring,
        catalog: Option<String>,
        expr: Option<String>,
        table: Option<Vec<(Vec<u64>, Vec<u64>)>>,
    ) -> PyResult<Map> {
        let source = match (catalog, expr, table) {
            (Some(name), None, None) => MapSource::Catalog { name },
            (None, Some(expr), None) => MapSource::Expr {
                vars: Vec::new(),
                expr,
            },
            (None, None, Some(entries)) => MapSource::Table {
                entries: entries
                    .into_iter()
                    .map(|(x, y)| (Element::new(x), Element::new(y)))
                    .collect(),
            },
            _ => {
                return Err(PyValueError::new_err(
                    "give exactly one of catalog, expr, table",
                ))
            }
        };
        let inner = MapTable::build(ring.inner.clone(), &source).map_err(err)?;
        Ok(Map { inner })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn __call__(&self, x: Vec<u64>) -> PyResult<Vec<u64>> {
        Ok(self
            .inner
            .apply(&Element::new(x))
            .map_err(err)?
            .coords()
            .to_vec())
    }

    /// `f(x + y) - f(x) - f(y)`.
    fn psi(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<Vec<u64>> {
        let d = self
            .inner
            .psi_defect(&Element::new(x), &Element::new(y))
            .map_err(err)?;
        Ok(d.coords().to_vec())
    }

    fn table(&self) -> Vec<(Vec<u64>, Vec<u64>)> {
        let r = self.inner.ring();
        (0..r.order())
            .map(|x| {
                (
                    r.element(x).coords().to_vec(),
                    r.element(self.inner.get(x)).coords().to_vec(),
                )
            })
            .collect()
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.classify().map_err(err)?)
    }

    fn psi_identities<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.check_psi_identities().map_err(err)?)
    }

    fn structure<'py>(&self, py: Python<'py>, e: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
        let r = self.inner.ring().clone();
        let e = r
            .index_of(&r.reduce(&Element::new(e)).map_err(err)?)
            .map_err(err)?;
        let d = PeirceDecomposition::new(r, e).map_err(err)?;
        to_py(py, &self.inner.verify_structure(&d).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Map({} on {})",
            self.inner.label(),
            self.inner.ring().name()
        )
    }
}

/// Run the command-line interface in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out =
        peirce_core::cli::run_from_args(std::iter::once("peirce-lab".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub fn peirce_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Map>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("PeirceError", m.py().get_type::<PeirceError>())?;
    m.add("GuardError", m.py().get_type::<GuardError>())?;
    Ok(())
}
