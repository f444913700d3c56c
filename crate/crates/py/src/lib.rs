//! Python bindings. Exact values come back as `fractions.Fraction`,
//! Fibonacci and Lucas numbers as Python `int`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use circres::closed_form::{self, C2Resistance};
use circres::report::{Check, Quantity};
use circres::{exact, oracle, spectral, walk, BigInt, BigRational, CirculantSpec};

fn err(e: circres::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn quantity<'py>(py: Python<'py>, q: &Quantity) -> PyResult<Bound<'py, PyAny>> {
    match q {
        Quantity::Exact(r) => fraction(py, r),
        Quantity::Float(v) => Ok(v.into_pyobject(py)?.into_any()),
        Quantity::Unreachable => Ok(py.None().into_bound(py)),
    }
}

fn check_dict<'py>(py: Python<'py>, c: &Check) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("name", &c.name)?;
    d.set_item("lhs", quantity(py, &c.lhs)?)?;
    d.set_item("rhs", quantity(py, &c.rhs)?)?;
    d.set_item("residual", c.residual)?;
    d.set_item("tolerance", c.tolerance)?;
    d.set_item("pass", c.pass)?;
    Ok(d)
}

fn checks_list<'py, 'a>(
    py: Python<'py>,
    checks: impl IntoIterator<Item = &'a Check>,
) -> PyResult<Bound<'py, PyList>> {
    let items = checks
        .into_iter()
        .map(|c| check_dict(py, c))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// `C_N(s_1, ..., s_p)` with its spectral and solve-based operations.
#[pyclass(name = "Circulant", module = "pycircres", frozen)]
struct PyCirculant {
    spec: CirculantSpec,
}

#[pymethods]
impl PyCirculant {
    #[new]
    #[pyo3(signature = (n, jumps = vec![1, 2]))]
    fn new(n: usize, jumps: Vec<usize>) -> PyResult<Self> {
        CirculantSpec::new(n, &jumps)
            .map(|spec| Self { spec })
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.spec.n()
    }

    #[getter]
    fn jumps(&self) -> Vec<usize> {
        self.spec.jumps().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.spec.degree()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.spec.edge_count()
    }

    #[getter]
    fn component_count(&self) -> usize {
        self.spec.component_count()
    }

    fn is_connected(&self) -> bool {
        self.spec.is_connected()
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.spec.eigenvalues().values().to_vec()
    }

    /// Spectral `R(0, l)`.
    fn resistance(&self, l: usize) -> PyResult<f64> {
        spectral::resistance_spectral(&self.spec, l).map_err(err)
    }

    fn resistance_profile(&self) -> PyResult<Vec<f64>> {
        spectral::resistance_profile_spectral(&self.spec).map_err(err)
    }

    /// `R(i, j)` from a grounded Laplacian solve.
    fn resistance_solve(&self, i: usize, j: usize) -> PyResult<f64> {
        let lap = self.spec.laplacian().map_err(err)?;
        oracle::resistance_solve(&lap, i, j).map_err(err)
    }

    fn kirchhoff(&self) -> PyResult<f64> {
        spectral::kirchhoff_spectral(&self.spec).map_err(err)
    }

    /// Mean first-passage time by the eigentime identity.
    fn mfpt(&self) -> PyResult<f64> {
        spectral::eigentime_mfpt(&self.spec).map_err(err)
    }

    fn fpt(&self, l: usize) -> PyResult<f64> {
        walk::fpt_general(&self.spec, l).map_err(err)
    }

    fn foster_audit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let report = oracle::foster_audit(&self.spec).map_err(err)?;
        checks_list(py, &report.checks)
    }

    /// Monte Carlo estimate of the first-passage time from 0 to `l`.
    #[pyo3(signature = (l, trials, seed = walk::DEFAULT_SEED))]
    fn simulate_fpt<'py>(
        &self,
        py: Python<'py>,
        l: usize,
        trials: u64,
        seed: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let est = py
            .detach(|| walk::simulate_fpt(&self.spec, l, trials, seed))
            .map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("mean", est.mean)?;
        d.set_item("std_error", est.std_error)?;
        d.set_item("trials", est.trials)?;
        d.set_item("seed", est.seed)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let jumps: Vec<String> = self.spec.jumps().iter().map(ToString::to_string).collect();
        format!("Circulant({}, [{}])", self.spec.n(), jumps.join(", "))
    }
}

#[pyfunction]
fn fib(k: u64) -> BigInt {
    exact::fib(k)
}

#[pyfunction]
fn lucas(k: u64) -> BigInt {
    exact::lucas(k)
}

#[pyfunction]
fn cycle_resistance(py: Python<'_>, n: usize, l: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &closed_form::cycle_resistance(n, l).map_err(err)?)
}

/// Exact `R(l)` on `C_N(1,2)`.
#[pyfunction]
fn c12_resistance(py: Python<'_>, n: usize, l: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &closed_form::c12_resistance(n, l).map_err(err)?)
}

/// `R(l)` for `l` in `0..N`, indexed like `Circulant.resistance_profile`.
#[pyfunction]
fn c12_profile(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyList>> {
    let p = closed_form::c12_profile(n).map_err(err)?;
    let items = (0..n)
        .map(|l| fraction(py, p.get(l)))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

#[pyfunction]
fn c12_kirchhoff(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &closed_form::c12_kirchhoff(n).map_err(err)?.value)
}

/// Exact `R(v)` on `C_N(2)`; `None` when `v` is unreachable.
#[pyfunction]
fn c2_resistance(py: Python<'_>, n: usize, v: usize) -> PyResult<Option<Bound<'_, PyAny>>> {
    match closed_form::c2_resistance(n, v).map_err(err)? {
        C2Resistance::Finite(r) => fraction(py, &r).map(Some),
        C2Resistance::Unreachable => Ok(None),
    }
}

#[pyfunction]
fn fpt_closed(py: Python<'_>, n: usize, l: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &walk::fpt_closed(n, l).map_err(err)?)
}

#[pyfunction]
fn commute_closed(py: Python<'_>, n: usize, l: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &walk::commute_closed(n, l).map_err(err)?)
}

#[pyfunction]
fn mfpt_closed(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &walk::mfpt_closed(n).map_err(err)?)
}

/// Exact `Σ_{n=0}^{N-1} sin^{2J}(nπ/N)`.
#[pyfunction]
fn trig_power_sum(py: Python<'_>, n: u64, j: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &spectral::trig_power_sum_exact(n, j).map_err(err)?)
}

/// Identity, recursion and hitting-relation checks for `C_N(1,2)`.
#[pyfunction]
fn verify(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyList>> {
    let mut report = closed_form::identity_suite(n).map_err(err)?;
    report.merge(closed_form::c12_recursion_checks(n).map_err(err)?);
    report.push(closed_form::c12_foster_check(n).map_err(err)?);
    if n >= 7 {
        report.push(walk::hitting_relation_check(n).map_err(err)?);
    }
    checks_list(py, &report.checks)
}

#[pymodule]
fn pycircres(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SEED", walk::DEFAULT_SEED)?;
    m.add_class::<PyCirculant>()?;
    m.add_function(wrap_pyfunction!(fib, m)?)?;
    m.add_function(wrap_pyfunction!(lucas, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(c12_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(c12_profile, m)?)?;
    m.add_function(wrap_pyfunction!(c12_kirchhoff, m)?)?;
    m.add_function(wrap_pyfunction!(c2_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(fpt_closed, m)?)?;
    m.add_function(wrap_pyfunction!(commute_closed, m)?)?;
    m.add_function(wrap_pyfunction!(mfpt_closed, m)?)?;
    m.add_function(wrap_pyfunction!(trig_power_sum, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
