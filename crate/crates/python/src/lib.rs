//! Python bindings: rings from spec strings, both homology computations, the
//! Cohen-Macaulay classification and the surface obstruction.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use zerodiv_core::analysis::{classify_cm_with_budget, surface_obstruction_with_budget};
use zerodiv_core::cli::{self, Method, Target};
use zerodiv_core::complexes::{k0_complex_with_budget, k_complex_with_budget, write_facet_list};
use zerodiv_core::formulas::{self, LocalSummary};
use zerodiv_core::homology::{homology_with_budget, Coefficients};
use zerodiv_core::rings::{FiniteRing, RingSpec};
use zerodiv_core::{Error, DEFAULT_FACE_BUDGET};

create_exception!(zerodiv, BudgetExceeded, PyRuntimeError, "The face budget was exceeded.");
create_exception!(zerodiv, SpecError, PyValueError, "A ring spec could not be parsed.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { offset, message } => SpecError::new_err((format!("at byte {offset}: {message}"), offset)),
        e if e.is_budget() => BudgetExceeded::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn coefficients(text: &str) -> PyResult<Coefficients> {
    text.parse().map_err(to_py)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("results serialize")
}

/// A finite commutative ring built from a spec such as `"Z4 x GF(3^2)"`.
#[pyclass(name = "Ring", frozen)]
struct PyRing {
    spec: RingSpec,
    ring: FiniteRing,
    factors: Vec<LocalSummary>,
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(py: Python<'_>, spec: &str) -> PyResult<Self> {
        let spec = cli::parse_spec(spec).map_err(to_py)?;
        let (ring, factors) = py
            .detach(|| {
                let ring = spec.build()?;
                let factors = formulas::local_summaries(&ring)?;
                Ok((ring, factors))
            })
            .map_err(to_py)?;
        Ok(PyRing { spec, ring, factors })
    }

    /// Normalized spec string.
    #[getter]
    fn spec(&self) -> String {
        self.spec.to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.ring.order()
    }

    /// `(unit count, is_field)` for each local factor.
    #[getter]
    fn local_factors(&self) -> Vec<(u64, bool)> {
        self.factors.iter().map(|f| (f.u, f.is_field)).collect()
    }

    fn is_local(&self) -> bool {
        self.factors.len() == 1
    }

    /// Reduced Betti numbers of `K(R)` from the factor recursion.
    fn k_ranks(&self) -> BTreeMap<usize, BigUint> {
        formulas::k_ranks(&self.factors).iter().map(|(n, r)| (n, r.clone())).collect()
    }

    fn k0_ranks(&self) -> BTreeMap<usize, BigUint> {
        formulas::k0_ranks(&self.factors).iter().map(|(n, r)| (n, r.clone())).collect()
    }

    /// Direct homology of `K(R)` (or `K0(R)`), as `{dim: (rank, torsion)}`.
    #[pyo3(signature = (reduced = true, coefficients = "Z", target = "k", budget = DEFAULT_FACE_BUDGET))]
    fn homology(
        &self,
        py: Python<'_>,
        reduced: bool,
        coefficients: &str,
        target: &str,
        budget: usize,
    ) -> PyResult<BTreeMap<isize, (usize, Vec<BigUint>)>> {
        let coeff = self::coefficients(coefficients)?;
        let k0 = match target {
            "k" | "K" => false,
            "k0" | "K0" => true,
            other => return Err(PyValueError::new_err(format!("unknown target {other:?}"))),
        };
        let h = py
            .detach(|| {
                let k = if k0 {
                    k0_complex_with_budget(&self.ring, budget)?
                } else {
                    k_complex_with_budget(&self.ring, budget)?
                };
                homology_with_budget(&k, reduced, coeff, budget)
            })
            .map_err(to_py)?;
        Ok(h.groups.into_iter().map(|(n, g)| (n, (g.rank, g.torsion))).collect())
    }

    /// Cohen-Macaulay classification as a JSON string.
    #[pyo3(signature = (coefficients = "Q", budget = DEFAULT_FACE_BUDGET))]
    fn classify_cm(&self, py: Python<'_>, coefficients: &str, budget: usize) -> PyResult<String> {
        let coeff = self::coefficients(coefficients)?;
        let c = py
            .detach(|| classify_cm_with_budget(&self.ring, coeff, budget))
            .map_err(to_py)?;
        Ok(to_json(&c))
    }

    /// Surface obstruction as a JSON string.
    #[pyo3(signature = (budget = DEFAULT_FACE_BUDGET))]
    fn surface_obstruction(&self, py: Python<'_>, budget: usize) -> PyResult<String> {
        let s = py
            .detach(|| surface_obstruction_with_budget(&self.ring, budget))
            .map_err(to_py)?;
        Ok(to_json(&s))
    }

    /// Writes the facet list of `K(R)` or `K0(R)` to `path`.
    #[pyo3(signature = (path, target = "k", budget = DEFAULT_FACE_BUDGET))]
    fn export(&self, path: &str, target: &str, budget: usize) -> PyResult<usize> {
        let k = match target {
            "k" | "K" => k_complex_with_budget(&self.ring, budget),
            "k0" | "K0" => k0_complex_with_budget(&self.ring, budget),
            other => return Err(PyValueError::new_err(format!("unknown target {other:?}"))),
        }
        .map_err(to_py)?;
        write_facet_list(&k, path).map_err(to_py)?;
        Ok(k.facets().len())
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.spec.to_string())
    }

    fn __len__(&self) -> usize {
        self.ring.order()
    }
}

/// Normalized form of a ring spec; raises `SpecError` with the byte offset.
#[pyfunction]
fn normalize_spec(spec: &str) -> PyResult<String> {
    cli::parse_spec(spec).map(|s| s.to_string()).map_err(to_py)
}

/// Reduced Betti numbers of `K` for a list of `(unit count, is_field)` factors.
#[pyfunction]
fn k_ranks(factors: Vec<(u64, bool)>) -> PyResult<BTreeMap<usize, BigUint>> {
    let summaries = factors
        .into_iter()
        .map(|(u, f)| LocalSummary::new(u, f))
        .collect::<Result<Vec<_>, _>>()
        .map_err(to_py)?;
    Ok(formulas::k_ranks(&summaries).iter().map(|(n, r)| (n, r.clone())).collect())
}

#[pyfunction]
fn betti_allfields(n: i64, us: Vec<u64>) -> BigUint {
    formulas::betti_allfields(n, &us)
}

#[pyfunction]
fn betti_nonfields(n: i64, us: Vec<u64>) -> BigUint {
    formulas::betti_nonfields(n, &us)
}

fn method(text: &str) -> PyResult<Method> {
    match text {
        "direct" => Ok(Method::Direct),
        "formula" => Ok(Method::Formula),
        "both" => Ok(Method::Both),
        other => Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
}

/// The CLI's `homology` command; returns its JSON document.
#[pyfunction]
#[pyo3(signature = (spec, method = "both", reduced = true, coefficients = "Z", budget = DEFAULT_FACE_BUDGET))]
fn run_homology(
    py: Python<'_>,
    spec: &str,
    method: &str,
    reduced: bool,
    coefficients: &str,
    budget: usize,
) -> PyResult<String> {
    let (m, c) = (self::method(method)?, self::coefficients(coefficients)?);
    let r = py.detach(|| cli::cmd_homology(spec, m, reduced, c, budget)).map_err(to_py)?;
    Ok(r.to_json())
}

/// The CLI's `cm` command; returns its JSON document.
#[pyfunction]
#[pyo3(signature = (spec, coefficients = "Q", budget = DEFAULT_FACE_BUDGET))]
fn run_cm(py: Python<'_>, spec: &str, coefficients: &str, budget: usize) -> PyResult<String> {
    let c = self::coefficients(coefficients)?;
    let r = py.detach(|| cli::cmd_cm(spec, c, budget)).map_err(to_py)?;
    Ok(r.to_json())
}

/// The CLI's `export` command; returns the number of facets written.
#[pyfunction]
#[pyo3(signature = (spec, path, target = "k", budget = DEFAULT_FACE_BUDGET))]
fn run_export(spec: &str, path: &str, target: &str, budget: usize) -> PyResult<usize> {
    let t = match target {
        "k" | "K" => Target::K,
        "k0" | "K0" => Target::K0,
        other => return Err(PyValueError::new_err(format!("unknown target {other:?}"))),
    };
    cli::cmd_export(spec, t, path.as_ref(), budget).map(|s| s.facets).map_err(to_py)
}

#[pymodule]
fn zerodiv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_function(wrap_pyfunction!(normalize_spec, m)?)?;
    m.add_function(wrap_pyfunction!(k_ranks, m)?)?;
    m.add_function(wrap_pyfunction!(betti_allfields, m)?)?;
    m.add_function(wrap_pyfunction!(betti_nonfields, m)?)?;
    m.add_function(wrap_pyfunction!(run_homology, m)?)?;
    m.add_function(wrap_pyfunction!(run_cm, m)?)?;
    m.add_function(wrap_pyfunction!(run_export, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("SpecError", m.py().get_type::<SpecError>())?;
    m.add("DEFAULT_FACE_BUDGET", DEFAULT_FACE_BUDGET)?;
    Ok(())
}
