use std::fmt;

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ratfield::{Rat, RatFun};
use crate::ratmat::RatMatrix;

/// Dense matrix of `f64` for the constant-matrix backend.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix(DMatrix<f64>);

impl FloatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FloatMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        FloatMatrix(DMatrix::identity(n, n))
    }

    /// Row-major constructor. Panics if `data.len() != rows * cols`.
    pub fn from_row_slice(rows: usize, cols: usize, data: &[f64]) -> Self {
        FloatMatrix(DMatrix::from_row_slice(rows, cols, data))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (m, n),
                right: (1, bad.len()),
            });
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Ok(Self::from_row_slice(m, n, &flat))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> f64) -> Self {
        FloatMatrix(DMatrix::from_fn(rows, cols, f))
    }

    /// Converts a constant rational matrix; fails on any non-constant entry.
    pub fn from_rat_matrix(a: &RatMatrix) -> Result<Self> {
        let mut out = Self::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let c = a.get(i, j).as_constant().ok_or_else(|| {
                    Error::NumericFailure(format!("entry ({}, {}) is not a constant", i + 1, j + 1))
                })?;
                out.0[(i, j)] = c.to_f64().unwrap_or(f64::NAN);
            }
        }
        Ok(out)
    }

    /// Exact rational image of the stored doubles.
    pub fn to_rat_matrix(&self) -> Result<RatMatrix> {
        let mut entries = Vec::with_capacity(self.0.len());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let v = self.0[(i, j)];
                let r = Rat::from_float(v)
                    .ok_or_else(|| Error::NumericFailure(format!("non-finite entry {v}")))?;
                entries.push(RatFun::constant(r));
            }
        }
        RatMatrix::from_vec(self.rows(), self.cols(), entries)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.0[(i, j)] = v;
    }

    pub fn as_inner(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn row_major(&self) -> Vec<f64> {
        self.0.transpose().as_slice().to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        FloatMatrix(self.0.transpose())
    }

    pub fn mul(&self, rhs: &FloatMatrix) -> Result<FloatMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::DimensionMismatch {
                op: "float_mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(FloatMatrix(&self.0 * &rhs.0))
    }

    pub fn sub(&self, rhs: &FloatMatrix) -> Result<FloatMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op: "float_sub",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(FloatMatrix(&self.0 - &rhs.0))
    }

    pub fn inverse(&self) -> Result<FloatMatrix> {
        if self.rows() != self.cols() {
            return Err(Error::DimensionMismatch {
                op: "float_inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        self.0
            .clone()
            .try_inverse()
            .map(FloatMatrix)
            .ok_or_else(|| Error::NumericFailure("Gram matrix is numerically singular".into()))
    }

    /// Largest column absolute sum.
    pub fn norm1(&self) -> f64 {
        self.0
            .column_iter()
            .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Max-norm distance; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &FloatMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> FloatMatrix {
        FloatMatrix(self.0.select_columns(cols))
    }
}

impl fmt::Display for FloatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            let cells: Vec<String> = (0..self.cols())
                .map(|j| format!("{:.12e}", self.0[(i, j)]))
                .collect();
            writeln!(f, "{}", cells.join("; "))?;
        }
        Ok(())
    }
}

/// Max-norm defects of the four Penrose equations for a candidate `x`.
pub fn penrose_residuals(a: &FloatMatrix, x: &FloatMatrix) -> Result<[f64; 4]> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::DimensionMismatch {
            op: "penrose_residuals",
            left: a.shape(),
            right: x.shape(),
        });
    }
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    Ok([
        ax.mul(a)?.max_abs_diff(a),
        xa.mul(x)?.max_abs_diff(x),
        ax.transpose().max_abs_diff(&ax),
        xa.transpose().max_abs_diff(&xa),
    ])
}
