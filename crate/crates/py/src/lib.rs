//! Python bindings for `bkp-core`.
//!
//! Exact coefficients come back as [`Scalar`] objects whose terms are
//! `fractions.Fraction`; verification reports come back as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

use bkp_core::affine::{self, AffineCoordinates, DiagonalF, SpinHurwitz};
use bkp_core::hirota;
use bkp_core::kacschwarz;
use bkp_core::npoint;
use bkp_core::partitions::{OddPartition, StrictPartition};
use bkp_core::report::Report;
use bkp_core::ring;
use bkp_core::schurq;
use bkp_core::tau;

type Terms<'py> = Vec<((u32, u32), Bound<'py, PyAny>)>;
type HurwitzRow<'py> = (String, u32, Option<u32>, Bound<'py, PyAny>);

fn err(e: bkp_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &ring::Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format!("{}/{}", r.numer(), r.denom()),))
}

fn report_dict(py: Python<'_>, report: &Report) -> PyResult<Py<PyAny>> {
    Ok(py
        .import("json")?
        .call_method1("loads", (report.to_json(),))?
        .unbind())
}

/// Parts from either a list of integers or a string such as `"3,1"`.
fn parts(mu: &Bound<'_, PyAny>) -> PyResult<Vec<u32>> {
    if let Ok(s) = mu.cast::<PyString>() {
        let s = s.to_str()?;
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        return s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| PyValueError::new_err(e.to_string()))
            })
            .collect();
    }
    mu.extract()
}

fn strict(mu: &Bound<'_, PyAny>) -> PyResult<StrictPartition> {
    StrictPartition::new(parts(mu)?).map_err(err)
}

fn odd(mu: &Bound<'_, PyAny>) -> PyResult<OddPartition> {
    OddPartition::new(parts(mu)?).map_err(err)
}

/// A polynomial in `p` and `beta` with rational coefficients, truncated in `beta`.
#[pyclass(module = "bkp", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Scalar(ring::Scalar);

#[pymethods]
impl Scalar {
    #[getter]
    fn beta_order(&self) -> u32 {
        self.0.beta_order()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Coefficient of `p^p_exp beta^beta_exp`.
    fn coeff<'py>(
        &self,
        py: Python<'py>,
        p_exp: u32,
        beta_exp: u32,
    ) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.coeff(p_exp, beta_exp))
    }

    /// `{(p_exp, beta_exp): Fraction}` for the nonzero terms.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Terms<'py>> {
        self.0
            .terms()
            .map(|(&k, v)| Ok((k, fraction(py, v)?)))
            .collect()
    }

    fn at_p_one(&self) -> Scalar {
        Scalar(self.0.at_p_one())
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Scalar> {
        let j: ring::ScalarJson =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        ring::Scalar::from_json(&j).map(Scalar).map_err(err)
    }

    fn __add__(&self, other: &Scalar) -> Scalar {
        Scalar(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Scalar) -> Scalar {
        Scalar(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Scalar) -> Scalar {
        Scalar(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar({})", self.0)
    }
}

/// Affine coordinates `a_{n,m}` of a BKP tau-function.
#[pyclass(module = "bkp", frozen)]
pub struct Provider(Box<dyn AffineCoordinates>);

#[pymethods]
impl Provider {
    /// Spin single Hurwitz numbers with completed `(r+1)`-cycles.
    #[staticmethod]
    fn spin_hurwitz(r: u32, beta_order: u32) -> PyResult<Provider> {
        Ok(Provider(Box::new(
            SpinHurwitz::new(r, beta_order).map_err(err)?,
        )))
    }

    /// The same family through the general diagonal formula.
    #[staticmethod]
    fn completed_cycles(r: u32, beta_order: u32) -> Provider {
        Provider(Box::new(DiagonalF::completed_cycles(r, beta_order)))
    }

    /// Diagonal family with `f ≡ 0`.
    #[staticmethod]
    fn trivial(beta_order: u32) -> Provider {
        Provider(Box::new(DiagonalF::trivial(beta_order)))
    }

    fn a(&self, n: u32, m: u32) -> Scalar {
        Scalar(self.0.a(n, m))
    }

    #[getter]
    fn beta_order(&self) -> u32 {
        self.0.beta_order()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    fn __repr__(&self) -> String {
        format!("Provider({})", self.0.label())
    }
}

fn laurent(s: &ring::LaurentZ) -> Vec<(i64, Scalar)> {
    s.iter_desc().map(|(d, c)| (d, Scalar(c.clone()))).collect()
}

fn tpoly(p: &schurq::TPoly) -> Vec<(String, Scalar)> {
    p.sorted_terms()
        .into_iter()
        .map(|(m, c)| (m.to_string(), Scalar(c.clone())))
        .collect()
}

/// Coefficient of `Q_mu(t/2)` in tau.
#[pyfunction]
fn tau_coeff(provider: &Provider, mu: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    Ok(Scalar(tau::tau_coeff(provider.0.as_ref(), &strict(mu)?)))
}

/// The same coefficient from the neutral-fermion vacuum expectation value.
#[pyfunction]
#[pyo3(signature = (provider, mu, order=None))]
fn oracle_coeff(
    provider: &Provider,
    mu: &Bound<'_, PyAny>,
    order: Option<u32>,
) -> PyResult<Scalar> {
    let mu = strict(mu)?;
    let order = order.unwrap_or_else(|| tau::fermion::default_order(&mu));
    tau::oracle_coeff(provider.0.as_ref(), &mu, order)
        .map(Scalar)
        .map_err(err)
}

/// tau up to weight `weight`, as `[(monomial, coefficient)]`.
#[pyfunction]
fn tau_expand(provider: &Provider, weight: u32) -> Vec<(String, Scalar)> {
    tpoly(&tau::tau_expand(provider.0.as_ref(), weight))
}

#[pyfunction]
#[pyo3(signature = (mu, weight, beta_order=0))]
fn q_strict(
    mu: &Bound<'_, PyAny>,
    weight: u32,
    beta_order: u32,
) -> PyResult<Vec<(String, Scalar)>> {
    Ok(tpoly(&schurq::q_strict(&strict(mu)?, weight, beta_order)))
}

#[pyfunction]
#[pyo3(signature = (mu, beta_order=0))]
fn specialize_delta(mu: &Bound<'_, PyAny>, beta_order: u32) -> PyResult<Scalar> {
    Ok(Scalar(schurq::specialize_delta(&strict(mu)?, beta_order)))
}

/// `Phi_k` on `[-depth, k]` as `[(degree, coefficient)]`, highest degree first.
#[pyfunction]
fn phi_basis(provider: &Provider, k: u32, depth: u32) -> Vec<(i64, Scalar)> {
    laurent(&affine::phi_basis(provider.0.as_ref(), k, depth))
}

#[pyfunction]
fn wave_principal(provider: &Provider, depth: u32) -> Vec<(i64, Scalar)> {
    laurent(&hirota::wave_principal(provider.0.as_ref(), depth))
}

/// Connected spin Hurwitz number `H_mu` as a polynomial in `beta`.
#[pyfunction]
#[pyo3(signature = (provider, mu, degree=None))]
fn hurwitz_connected(
    provider: &Provider,
    mu: &Bound<'_, PyAny>,
    degree: Option<u32>,
) -> PyResult<Scalar> {
    let mu = odd(mu)?;
    let d = degree.unwrap_or(mu.weight());
    npoint::hurwitz_connected(provider.0.as_ref(), &mu, d)
        .map(Scalar)
        .map_err(err)
}

#[pyfunction]
fn hurwitz_single(n: u32, r: u32, beta_order: u32) -> PyResult<Scalar> {
    npoint::hurwitz_single(n, r, beta_order)
        .map(Scalar)
        .map_err(err)
}

/// Rows `(mu, b, g, coefficient)` with `g` `None` when not integral.
#[pyfunction]
fn hurwitz_table<'py>(
    py: Python<'py>,
    r: u32,
    beta_order: u32,
    max_weight: u32,
) -> PyResult<Vec<HurwitzRow<'py>>> {
    npoint::hurwitz_table(r, beta_order, max_weight)
        .map_err(err)?
        .into_iter()
        .map(|row| Ok((row.mu, row.b, row.g, fraction(py, &row.value)?)))
        .collect()
}

#[pyfunction]
fn verify_ks(
    py: Python<'_>,
    r: u32,
    beta_order: u32,
    kmax: u32,
    depth: u32,
) -> PyResult<Py<PyAny>> {
    let report = py
        .detach(|| kacschwarz::verify_theorem(r, beta_order, kmax, depth))
        .map_err(err)?;
    report_dict(py, &report)
}

#[pyfunction]
fn verify_hirota(
    py: Python<'_>,
    provider: &Provider,
    weight: u32,
    depth: u32,
) -> PyResult<Py<PyAny>> {
    let report = hirota::hirota_check(provider.0.as_ref(), weight, depth).map_err(err)?;
    report_dict(py, &report)
}

#[pyfunction]
fn verify_wave(
    py: Python<'_>,
    provider: &Provider,
    kmax: u32,
    depth: u32,
    weight: u32,
) -> PyResult<Py<PyAny>> {
    let report = hirota::wave::wave_suite(provider.0.as_ref(), kmax, depth, weight).map_err(err)?;
    report_dict(py, &report)
}

/// Runs the command-line interface; returns `(stdout, stderr, exit_code)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (String, String, u8) {
    let out = bkp_core::cli::run(std::iter::once("bkp".to_string()).chain(args));
    (out.stdout, out.stderr, out.code)
}

#[pymodule]
pub fn bkp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scalar>()?;
    m.add_class::<Provider>()?;
    m.add_function(wrap_pyfunction!(tau_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(tau_expand, m)?)?;
    m.add_function(wrap_pyfunction!(q_strict, m)?)?;
    m.add_function(wrap_pyfunction!(specialize_delta, m)?)?;
    m.add_function(wrap_pyfunction!(phi_basis, m)?)?;
    m.add_function(wrap_pyfunction!(wave_principal, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_connected, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_single, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_ks, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hirota, m)?)?;
    m.add_function(wrap_pyfunction!(verify_wave, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
