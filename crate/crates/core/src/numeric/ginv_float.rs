use crate::error::{Error, Result};
use crate::ginv::Branch;
use crate::psdfactor::cholesky_float;

use super::FloatMatrix;

/// Condition number of `L^T L` above which a result is flagged as unreliable.
pub const CONDITION_WARNING_THRESHOLD: f64 = 1e12;

/// A float generalized inverse with conditioning information.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatGinv {
    pub x: FloatMatrix,
    /// Columns kept by the clamped Cholesky.
    pub rank: usize,
    /// 1-norm condition estimate of `L^T L`.
    pub gram_condition: f64,
    pub condition_warning: bool,
    pub branch: Branch,
}

/// `L (L^T L)^-2 L^T` for the clamped Cholesky factor of `g`, plus rank and
/// condition of `L^T L`.
fn gram_pinv(g: &FloatMatrix, tol: f64) -> Result<(FloatMatrix, usize, f64)> {
    let chol = cholesky_float(g, tol)?;
    let n = g.rows();
    if chol.kept == 0 {
        return Ok((FloatMatrix::zeros(n, n), 0, 1.0));
    }
    let l = &chol.l;
    let ltl = l.transpose().mul(l)?;
    let m = ltl.inverse()?;
    if !m.is_finite() {
        return Err(Error::NumericFailure("Gram inverse overflowed".into()));
    }
    let condition = ltl.norm1() * m.norm1();
    let p = l.mul(&m)?.mul(&m)?.mul(&l.transpose())?;
    Ok((p, chol.kept, condition))
}

fn finish(x: FloatMatrix, rank: usize, gram_condition: f64, branch: Branch) -> FloatGinv {
    FloatGinv {
        x,
        rank,
        gram_condition,
        condition_warning: gram_condition.is_nan() || gram_condition > CONDITION_WARNING_THRESHOLD,
        branch,
    }
}

/// Moore-Penrose inverse from the clamped Cholesky factor of `A^T A`
/// (or of `A A^T` when `A` has fewer rows than columns).
pub fn geninv_float(a: &FloatMatrix, tol: f64) -> Result<FloatGinv> {
    let (m, n) = a.shape();
    let at = a.transpose();
    if m < n {
        let (p, rank, cond) = gram_pinv(&a.mul(&at)?, tol)?;
        Ok(finish(at.mul(&p)?, rank, cond, Branch::Right))
    } else {
        let (p, rank, cond) = gram_pinv(&at.mul(a)?, tol)?;
        Ok(finish(p.mul(&at)?, rank, cond, Branch::Left))
    }
}

/// Float counterpart of [`crate::ginv::algorithm_2_1`] with automatic branch
/// selection. It factors the squared Gram matrix `(R^T A)^T (R^T A)` or
/// `(A R^T)(A R^T)^T`, so its conditioning is the square of
/// [`geninv_float`]'s when `R = A`.
pub fn modginv_float(a: &FloatMatrix, r: &FloatMatrix, tol: f64) -> Result<FloatGinv> {
    if r.cols() == a.cols() {
        let rt = r.transpose();
        let b = a.mul(&rt)?;
        let bt = b.transpose();
        let (p, rank, cond) = gram_pinv(&b.mul(&bt)?, tol)?;
        Ok(finish(rt.mul(&bt)?.mul(&p)?, rank, cond, Branch::Right))
    } else if r.rows() == a.rows() {
        let rt = r.transpose();
        let b = rt.mul(a)?;
        let bt = b.transpose();
        let (p, rank, cond) = gram_pinv(&bt.mul(&b)?, tol)?;
        Ok(finish(p.mul(&bt.mul(&rt)?)?, rank, cond, Branch::Left))
    } else {
        Err(Error::DimensionMismatch {
            op: "modginv_float",
            left: a.shape(),
            right: r.shape(),
        })
    }
}
