//! Python bindings: exposes polynomials, matrix factorizations, the
//! standard and improved factorization routes, and the tensor products.
//!
//! Build the importable module with
//! `cargo build -p mfkit-py --release --features extension-module` and
//! rename `libmfkit.so` to `mfkit.so` (see `python/smoke_test.py`).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mfkit_core::reducer::{CompareOptions, FactorOptions};
use mfkit_core::tensor::{mult_with, yoshino_with, MultVariant, YoshinoVariant};
use mfkit_core::{expr, reducer, schema};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A multivariate polynomial over exact rationals, in canonical form.
#[pyclass(name = "Polynomial", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial {
    inner: mfkit_core::Polynomial,
}

#[pymethods]
impl PyPolynomial {
    /// Parses an expression and expands it.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPolynomial { inner: mfkit_core::parse_polynomial(text).map_err(value_err)? })
    }

    fn monomial_count(&self) -> usize {
        self.inner.monomial_count()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: &Self) -> Self {
        PyPolynomial { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyPolynomial { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPolynomial { inner: &self.inner * &other.inner }
    }

    fn __neg__(&self) -> Self {
        PyPolynomial { inner: -&self.inner }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner)
    }
}

/// A verified pair (phi, psi) with phi*psi = psi*phi = f*I.
#[pyclass(name = "MatrixFactorization", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrixFactorization {
    inner: mfkit_core::MatrixFactorization,
}

#[pymethods]
impl PyMatrixFactorization {
    /// Builds and verifies a factorization from entry strings.
    #[new]
    fn new(f: &str, phi: Vec<Vec<String>>, psi: Vec<Vec<String>>) -> PyResult<Self> {
        let size = phi.len();
        let file = schema::FactorizationFile { f: f.to_string(), size, phi, psi };
        let text = serde_json::to_string(&file).map_err(value_err)?;
        let raw = schema::from_json(&text).map_err(value_err)?;
        Ok(PyMatrixFactorization { inner: raw.into_verified().map_err(value_err)? })
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn f(&self) -> PyPolynomial {
        PyPolynomial { inner: self.inner.target().clone() }
    }

    fn phi(&self) -> Vec<Vec<String>> {
        matrix_rows(self.inner.phi())
    }

    fn psi(&self) -> Vec<Vec<String>> {
        matrix_rows(self.inner.psi())
    }

    /// Recomputes both products; true iff they equal f*I exactly.
    fn verify(&self) -> bool {
        self.inner.verify().pass
    }

    fn to_json(&self) -> String {
        schema::to_json(&self.inner)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyMatrixFactorization { inner: schema::verified_from_json(text).map_err(value_err)? })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("MatrixFactorization(f={}, size={})", self.inner.target(), self.inner.size())
    }
}

fn matrix_rows(m: &mfkit_core::PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn options(yoshino_variant: u8, mult_variant: u8, auto_expand: bool) -> PyResult<FactorOptions> {
    Ok(FactorOptions {
        yoshino: YoshinoVariant::from_index(yoshino_variant).map_err(value_err)?,
        mult: MultVariant::from_index(mult_variant).map_err(value_err)?,
        auto_expand,
    })
}

/// Parses an expression and expands it into a polynomial.
#[pyfunction]
fn parse(text: &str) -> PyResult<PyPolynomial> {
    PyPolynomial::parse(text)
}

/// Factors an expression; method is "improved" or "standard".
#[pyfunction]
#[pyo3(signature = (expr_text, method="improved", yoshino_variant=0, mult_variant=0, auto_expand=false))]
fn factor(
    expr_text: &str,
    method: &str,
    yoshino_variant: u8,
    mult_variant: u8,
    auto_expand: bool,
) -> PyResult<PyMatrixFactorization> {
    let sf = expr::parse(expr_text).map_err(value_err)?;
    let inner = match method {
        "standard" => {
            mfkit_core::MatrixFactorization::standard_for_polynomial(&sf.expand())
                .map_err(value_err)?
        }
        "improved" => {
            let opts = options(yoshino_variant, mult_variant, auto_expand)?;
            reducer::improved_factorize(&sf, &opts).map_err(value_err)?.0
        }
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    Ok(PyMatrixFactorization { inner })
}

/// The 1x1 factorization ([g], [h]) of g*h.
#[pyfunction]
fn one_by_one(g: &str, h: &str) -> PyResult<PyMatrixFactorization> {
    let g = mfkit_core::parse_polynomial(g).map_err(value_err)?;
    let h = mfkit_core::parse_polynomial(h).map_err(value_err)?;
    Ok(PyMatrixFactorization {
        inner: mfkit_core::MatrixFactorization::one_by_one(&g, &h).map_err(value_err)?,
    })
}

/// Standard method over explicit (g, h) monomial summand pairs.
#[pyfunction]
fn standard_method(pairs: Vec<(String, String)>) -> PyResult<PyMatrixFactorization> {
    let mut monomial_pairs = Vec::with_capacity(pairs.len());
    for (g, h) in &pairs {
        let to_mono = |s: &str| {
            mfkit_core::parse_polynomial(s)
                .map_err(value_err)?
                .as_monomial()
                .ok_or_else(|| PyValueError::new_err(format!("{s:?} is not a monomial")))
        };
        monomial_pairs.push((to_mono(g)?, to_mono(h)?));
    }
    Ok(PyMatrixFactorization {
        inner: mfkit_core::MatrixFactorization::standard_method(&monomial_pairs)
            .map_err(value_err)?,
    })
}

/// Additive tensor product: a factorization of f + g of size 2nm.
#[pyfunction]
#[pyo3(signature = (x, y, variant=0))]
fn yoshino(
    x: &PyMatrixFactorization,
    y: &PyMatrixFactorization,
    variant: u8,
) -> PyResult<PyMatrixFactorization> {
    let v = YoshinoVariant::from_index(variant).map_err(value_err)?;
    Ok(PyMatrixFactorization { inner: yoshino_with(&x.inner, &y.inner, v).map_err(value_err)? })
}

/// Multiplicative tensor product: a factorization of f * g of size 2nm.
#[pyfunction]
#[pyo3(signature = (x, y, variant=0))]
fn mult_tensor(
    x: &PyMatrixFactorization,
    y: &PyMatrixFactorization,
    variant: u8,
) -> PyResult<PyMatrixFactorization> {
    let v = MultVariant::from_index(variant).map_err(value_err)?;
    Ok(PyMatrixFactorization { inner: mult_with(&x.inner, &y.inner, v).map_err(value_err)? })
}

/// Size prediction for an expression in summand-reduced shape.
#[pyfunction]
fn predict_sizes<'py>(py: Python<'py>, expr_text: &str) -> PyResult<Bound<'py, PyDict>> {
    let sf = expr::parse(expr_text).map_err(value_err)?;
    let p = expr::predict_sizes(&sf);
    let dict = PyDict::new(py);
    dict.set_item("standard_size", p.standard_size)?;
    dict.set_item("improved_size", p.improved_size)?;
    dict.set_item("ratio", p.ratio)?;
    dict.set_item("cancellation", p.cancellation)?;
    dict.set_item("expanded_monomials", p.expanded_monomials)?;
    dict.set_item("factored_monomials", p.factored_monomials)?;
    Ok(dict)
}

/// Structural classification of an expression, with advisory lints.
#[pyfunction]
fn classify<'py>(py: Python<'py>, expr_text: &str) -> PyResult<Bound<'py, PyDict>> {
    let sf = expr::parse(expr_text).map_err(value_err)?;
    let report = expr::classify(&sf);
    let dict = PyDict::new(py);
    dict.set_item("class", report.class.to_string())?;
    dict.set_item(
        "lints",
        report.lints.iter().map(|l| l.message.clone()).collect::<Vec<_>>(),
    )?;
    Ok(dict)
}

/// Compares the standard and improved methods on one expression.
#[pyfunction]
#[pyo3(signature = (expr_text, build_standard_limit=64))]
fn compare<'py>(
    py: Python<'py>,
    expr_text: &str,
    build_standard_limit: u128,
) -> PyResult<Bound<'py, PyDict>> {
    let sf = expr::parse(expr_text).map_err(value_err)?;
    let opts = CompareOptions { options: FactorOptions::default(), build_standard_limit };
    let report = reducer::compare_methods(&sf, &opts).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("standard_size", report.standard_size)?;
    dict.set_item("improved_size", report.improved_size)?;
    dict.set_item("ratio", report.ratio)?;
    dict.set_item("verified_standard", report.verified_standard)?;
    dict.set_item("verified_improved", report.verified_improved)?;
    dict.set_item("cancellation", report.cancellation)?;
    dict.set_item("standard_built", report.standard_built)?;
    Ok(dict)
}

#[pymodule]
fn mfkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyMatrixFactorization>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(one_by_one, m)?)?;
    m.add_function(wrap_pyfunction!(standard_method, m)?)?;
    m.add_function(wrap_pyfunction!(yoshino, m)?)?;
    m.add_function(wrap_pyfunction!(mult_tensor, m)?)?;
    m.add_function(wrap_pyfunction!(predict_sizes, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    Ok(())
}
