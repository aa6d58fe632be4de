//! Python bindings, importable as `ratginv`.
//!
//! Exact values cross the boundary as strings in the expression syntax of the
//! matrix-file format; float matrices as lists of rows.

use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ratginv::cli::{parse_matrix_file, parse_ratfun_expr};
use ratginv::numeric::{penrose_residuals, FloatGinv};
use ratginv::{Branch, Family, FloatMatrix, GInvTask};

create_exception!(ratginv, RatGinvError, PyValueError);

fn err(e: ratginv::Error) -> PyErr {
    RatGinvError::new_err(e.to_string())
}

/// A univariate rational function over Q.
#[pyclass(name = "RatFun", module = "ratginv", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyRatFun(pub ratginv::RatFun);

#[pymethods]
impl PyRatFun {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        parse_ratfun_expr(expr).map(PyRatFun).map_err(err)
    }

    /// Value at a rational point given as `"p/q"` or an integer string.
    fn eval(&self, x: &str) -> PyResult<String> {
        let x0: BigRational = x
            .trim()
            .parse()
            .map_err(|_| RatGinvError::new_err(format!("not a rational number: `{x}`")))?;
        self.0.eval(&x0).map(|v| v.to_string()).map_err(err)
    }

    fn is_polynomial(&self) -> bool {
        self.0.is_polynomial()
    }

    fn __add__(&self, rhs: &Self) -> Self {
        PyRatFun(&self.0 + &rhs.0)
    }

    fn __sub__(&self, rhs: &Self) -> Self {
        PyRatFun(&self.0 - &rhs.0)
    }

    fn __mul__(&self, rhs: &Self) -> Self {
        PyRatFun(&self.0 * &rhs.0)
    }

    fn __truediv__(&self, rhs: &Self) -> PyResult<Self> {
        self.0.checked_div(&rhs.0).map(PyRatFun).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyRatFun(-self.0.clone())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RatFun('{}')", self.0)
    }
}

/// A dense matrix over Q(x).
#[pyclass(name = "RatMatrix", module = "ratginv", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyRatMatrix(pub ratginv::RatMatrix);

#[pymethods]
impl PyRatMatrix {
    /// Builds a matrix from rows of expression strings.
    #[new]
    fn new(rows: Vec<Vec<String>>) -> PyResult<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_ratfun_expr(s)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()
            .map_err(err)?;
        ratginv::RatMatrix::from_rows(parsed)
            .map(PyRatMatrix)
            .map_err(err)
    }

    /// Parses the matrix-file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_matrix_file(text).map(PyRatMatrix).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyRatMatrix(ratginv::RatMatrix::identity(n))
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<PyRatFun> {
        let (m, n) = self.0.shape();
        if i >= m || j >= n {
            return Err(RatGinvError::new_err(format!(
                "index ({i}, {j}) out of range for {m}x{n}"
            )));
        }
        Ok(PyRatFun(self.0.get(i, j).clone()))
    }

    fn rows(&self) -> Vec<Vec<String>> {
        (0..self.0.rows())
            .map(|i| self.0.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn transpose(&self) -> Self {
        PyRatMatrix(self.0.star())
    }

    /// Entrywise value at `x`, as float rows; fails at a pole.
    fn eval(&self, x: &str) -> PyResult<Vec<Vec<f64>>> {
        let x0: BigRational = x
            .trim()
            .parse()
            .map_err(|_| RatGinvError::new_err(format!("not a rational number: `{x}`")))?;
        let v = self.0.eval(&x0).map_err(err)?;
        Ok(FloatMatrix::from_rat_matrix(&v).map_err(err)?.to_rows())
    }

    fn __matmul__(&self, rhs: &Self) -> PyResult<Self> {
        self.0.mul(&rhs.0).map(PyRatMatrix).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        let (m, n) = self.0.shape();
        format!("RatMatrix({m}x{n})")
    }
}

/// `{2,4}` (left) or `{2,3}` (right) inverse from a helper matrix.
///
/// Returns `(x, s, branch)`.
#[pyfunction]
#[pyo3(signature = (a, helper, branch = "auto"))]
fn ginv(
    a: &PyRatMatrix,
    helper: &PyRatMatrix,
    branch: &str,
) -> PyResult<(PyRatMatrix, usize, String)> {
    let branch: Branch = branch.parse().map_err(RatGinvError::new_err)?;
    let task = GInvTask {
        a: a.0.clone(),
        helper: helper.0.clone(),
        branch,
    };
    let out = ratginv::algorithm_2_1(&task).map_err(err)?.inverse;
    Ok((PyRatMatrix(out.x), out.s, out.branch.to_string()))
}

#[pyfunction]
fn moore_penrose(a: &PyRatMatrix) -> PyResult<PyRatMatrix> {
    ratginv::moore_penrose(&a.0).map(PyRatMatrix).map_err(err)
}

/// Which Penrose equations `x` satisfies for `a`, as a dict.
#[pyfunction]
fn penrose_check<'py>(
    py: Python<'py>,
    a: &PyRatMatrix,
    x: &PyRatMatrix,
) -> PyResult<Bound<'py, PyDict>> {
    let r = ratginv::penrose_check(&a.0, &x.0).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("eq1", r.eq1)?;
    d.set_item("eq2", r.eq2)?;
    d.set_item("eq3", r.eq3)?;
    d.set_item("eq4", r.eq4)?;
    d.set_item("rank_x", r.rank_x)?;
    d.set_item("rank_a", r.rank_a)?;
    d.set_item("classification", r.classification)?;
    Ok(d)
}

#[pyfunction]
fn reverse_order_law_check(a: &PyRatMatrix, b: &PyRatMatrix) -> PyResult<bool> {
    ratginv::reverse_order_law_check(&a.0, &b.0).map_err(err)
}

fn float_matrix(rows: Vec<Vec<f64>>) -> PyResult<FloatMatrix> {
    FloatMatrix::from_rows(&rows).map_err(err)
}

fn float_result<'py>(
    py: Python<'py>,
    a: &FloatMatrix,
    g: FloatGinv,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item(
        "residuals",
        penrose_residuals(a, &g.x).map_err(err)?.to_vec(),
    )?;
    d.set_item("x", g.x.to_rows())?;
    d.set_item("rank", g.rank)?;
    d.set_item("gram_condition", g.gram_condition)?;
    d.set_item("condition_warning", g.condition_warning)?;
    Ok(d)
}

/// Float Moore-Penrose inverse via the clamped Cholesky of the Gram matrix.
#[pyfunction]
#[pyo3(signature = (a, tol = ratginv::psdfactor::DEFAULT_FLOAT_TOL))]
fn geninv<'py>(py: Python<'py>, a: Vec<Vec<f64>>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let a = float_matrix(a)?;
    let g = ratginv::geninv_float(&a, tol).map_err(err)?;
    float_result(py, &a, g)
}

/// Float counterpart of `ginv`, factoring the squared Gram matrix.
#[pyfunction]
#[pyo3(signature = (a, r, tol = ratginv::psdfactor::DEFAULT_FLOAT_TOL))]
fn modginv<'py>(
    py: Python<'py>,
    a: Vec<Vec<f64>>,
    r: Vec<Vec<f64>>,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let a = float_matrix(a)?;
    let g = ratginv::modginv_float(&a, &float_matrix(r)?, tol).map_err(err)?;
    float_result(py, &a, g)
}

/// Singular test matrix of family `S`, `F` or `A`.
#[pyfunction]
#[pyo3(signature = (family, n, a = 1.0))]
fn testmat(family: &str, n: usize, a: f64) -> PyResult<Vec<Vec<f64>>> {
    let family: Family = family.parse().map_err(err)?;
    Ok(ratginv::testmat_gen(family, n, a).map_err(err)?.to_rows())
}

#[pymodule]
#[pyo3(name = "ratginv")]
pub fn ratginv_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RatGinvError", m.py().get_type::<RatGinvError>())?;
    m.add_class::<PyRatFun>()?;
    m.add_class::<PyRatMatrix>()?;
    m.add_function(wrap_pyfunction!(ginv, m)?)?;
    m.add_function(wrap_pyfunction!(moore_penrose, m)?)?;
    m.add_function(wrap_pyfunction!(penrose_check, m)?)?;
    m.add_function(wrap_pyfunction!(reverse_order_law_check, m)?)?;
    m.add_function(wrap_pyfunction!(geninv, m)?)?;
    m.add_function(wrap_pyfunction!(modginv, m)?)?;
    m.add_function(wrap_pyfunction!(testmat, m)?)?;
    Ok(())
}
