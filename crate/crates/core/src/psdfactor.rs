//! Full-rank factorizations of symmetric positive-semidefinite Gram matrices.
//!
//! The exact path never takes square roots: a Gram matrix `G` over Q(x) is
//! written as `G = L1 * D * L1^T` with `L1` unit lower triangular on its kept
//! pivot rows and `D` diagonal. The classical Cholesky factor is
//! `L = L1 * sqrt(D)`, which lives outside Q(x) in general, but the
//! pseudoinverse built from it only needs
//!
//! ```text
//! L (L^T L)^-2 L^T = L1 N D^-1 N L1^T,   N = (L1^T L1)^-1
//! ```
//!
//! since the `sqrt(D)` factors cancel. Zero pivots are dropped: for a Gram
//! matrix a vanishing pivot forces the rest of its column to vanish, and the
//! column contributes nothing to the factor.
//!
//! The float path is the classical square-root Cholesky with a small-pivot
//! clamp, as used by the constant-matrix backend.

use crate::error::{Error, Result};
use crate::numeric::FloatMatrix;
use crate::ratfield::RatFun;
use crate::ratmat::RatMatrix;

/// Pivot clamp of the float Cholesky.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-11;

/// `G = l1 * diag(d) * l1^T` with the zero pivots of `G` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdFactorization {
    /// `n x s`; column `k` has a one in row `pivots[k]` and zeros above it.
    pub l1: RatMatrix,
    /// Nonzero pivots, one per kept column.
    pub d: Vec<RatFun>,
    /// Indices of the kept columns of `G`, increasing.
    pub pivots: Vec<usize>,
    pub n: usize,
}

impl PsdFactorization {
    /// Number of kept pivots, i.e. `rank(G)`.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// `l1 * diag(d) * l1^T`.
    pub fn reconstruct(&self) -> RatMatrix {
        let scaled = RatMatrix::from_fn(self.n, self.rank(), |i, k| self.l1.get(i, k) * &self.d[k]);
        scaled.mul(&self.l1.star()).expect("factor shapes agree")
    }

    /// Moore-Penrose inverse of the factored matrix,
    /// `G^+ = l1 K^-1 D^-1 K^-1 l1^T` with `K = l1^T l1`.
    ///
    /// `K^-1 l1^T` is the pseudoinverse of `l1`, and it is evaluated without
    /// forming `K`: the pivot rows of `l1` form a unit lower triangular
    /// `L_P`, so `l1 = E L_P` with `E` equal to the identity on the pivot
    /// rows and `C = B L_P^-1` on the others (`B` the non-pivot rows of
    /// `l1`). Then `l1^+ = L_P^-1 E^+`, and with `S = I + C C^T`
    ///
    /// ```text
    /// E^+ = [ I - C^T S^-1 C  |  C^T S^-1 ]   (pivot columns | the rest)
    /// ```
    ///
    /// so the only general inverse taken is of the `(n - s) x (n - s)`
    /// matrix `S`, and `G^+ = E^+^T (L_P^-T D^-1 L_P^-1) E^+`.
    pub fn pinv(&self) -> Result<RatMatrix> {
        let s = self.rank();
        let n = self.n;
        if s == 0 {
            return Ok(RatMatrix::zeros(n, n));
        }
        let lp = RatMatrix::from_fn(s, s, |a, k| self.l1.get(self.pivots[a], k).clone());
        let lp_inv = unit_lower_inverse(&lp);
        let d_inv = self.d.iter().map(RatFun::inv).collect::<Result<Vec<_>>>()?;
        let middle = lp_inv.star().mul(&RatMatrix::diag(&d_inv))?.mul(&lp_inv)?;

        let others: Vec<usize> = (0..n).filter(|i| !self.pivots.contains(i)).collect();
        let mut e_pinv = RatMatrix::zeros(s, n);
        if others.is_empty() {
            for (k, &p) in self.pivots.iter().enumerate() {
                e_pinv.set(k, p, RatFun::one());
            }
        } else {
            let b = RatMatrix::from_fn(others.len(), s, |r, k| self.l1.get(others[r], k).clone());
            let c = b.mul(&lp_inv)?;
            let ct = c.star();
            let s_inv = RatMatrix::identity(others.len())
                .add(&c.mul(&ct)?)?
                .inverse()?;
            let ct_s = ct.mul(&s_inv)?;
            let on_pivots = RatMatrix::identity(s).sub(&ct_s.mul(&c)?)?;
            for k in 0..s {
                for (a, &p) in self.pivots.iter().enumerate() {
                    e_pinv.set(k, p, on_pivots.get(k, a).clone());
                }
                for (r, &o) in others.iter().enumerate() {
                    e_pinv.set(k, o, ct_s.get(k, r).clone());
                }
            }
        }
        e_pinv.star().mul(&middle)?.mul(&e_pinv)
    }
}

/// Inverse of a unit lower triangular matrix by forward substitution.
fn unit_lower_inverse(l: &RatMatrix) -> RatMatrix {
    let n = l.rows();
    let mut inv = RatMatrix::identity(n);
    for j in 0..n {
        for i in j + 1..n {
            let mut acc = RatFun::zero();
            for k in j..i {
                let (a, b) = (l.get(i, k), inv.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            inv.set(i, j, -acc);
        }
    }
    inv
}

/// Square-root-free factorization of a Gram matrix over Q(x).
///
/// Pivots are taken in natural order. A zero pivot with a nonzero entry
/// below it, a negative constant pivot, or an asymmetric input is reported as
/// [`Error::NotPsd`].
pub fn ldl_psd_exact(g: &RatMatrix) -> Result<PsdFactorization> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch {
            op: "ldl_psd_exact",
            left: g.shape(),
            right: g.shape(),
        });
    }
    let n = g.rows();
    for i in 0..n {
        for j in 0..i {
            if g.get(i, j) != g.get(j, i) {
                return Err(Error::NotPsd { column: j });
            }
        }
    }

    // Lower triangle of the running Schur complement.
    let mut work: Vec<Vec<RatFun>> = (0..n).map(|i| g.row(i)[..=i].to_vec()).collect();
    let mut columns: Vec<Vec<RatFun>> = Vec::new();
    let mut d = Vec::new();
    let mut pivots = Vec::new();

    for k in 0..n {
        let p = work[k][k].clone();
        if p.is_zero() {
            if (k + 1..n).any(|i| !work[i][k].is_zero()) {
                return Err(Error::NotPsd { column: k });
            }
            continue;
        }
        if p.is_negative_constant() {
            return Err(Error::NotPsd { column: k });
        }
        let p_inv = p.inv()?;
        let mut col = vec![RatFun::zero(); n];
        col[k] = RatFun::one();
        for i in k + 1..n {
            col[i] = &work[i][k] * &p_inv;
        }
        for i in k + 1..n {
            if col[i].is_zero() {
                continue;
            }
            for j in k + 1..=i {
                if work[j][k].is_zero() {
                    continue;
                }
                let t = &col[i] * &work[j][k];
                work[i][j] = &work[i][j] - &t;
            }
        }
        columns.push(col);
        d.push(p);
        pivots.push(k);
    }

    let s = pivots.len();
    let l1 = RatMatrix::from_fn(n, s, |i, k| columns[k][i].clone());
    Ok(PsdFactorization { l1, d, pivots, n })
}

/// Convenience: `G^+` for a Gram matrix `G`.
pub fn psd_pinv(f: &PsdFactorization) -> Result<RatMatrix> {
    f.pinv()
}

/// Lower Cholesky factor with the clamped columns removed.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatCholesky {
    /// `n x kept`.
    pub l: FloatMatrix,
    pub kept: usize,
    pub pivots: Vec<usize>,
}

const CLAMP_RESIDUAL_RATIO: f64 = 0.5;

/// Square-root Cholesky in natural order; pivots below `tol` are set to zero
/// and their columns skipped, then dropped from the returned factor.
///
/// A clamped pivot is rejected as non-PSD when what is left of it could not
/// come from a rounding-perturbed Gram matrix: the raw pivot is below
/// `-(g_pp / 2 + tol)`, or some residual entry `r_i` below it exceeds
/// `sqrt(g_ii * g_pp) / 2 + tol` (the Gram bound is `sqrt(g_ii * g_pp)`).
pub fn cholesky_float(g: &FloatMatrix, tol: f64) -> Result<FloatCholesky> {
    if g.rows() != g.cols() {
        return Err(Error::DimensionMismatch {
            op: "cholesky_float",
            left: g.shape(),
            right: g.shape(),
        });
    }
    if !g.is_finite() {
        return Err(Error::NumericFailure("non-finite Gram matrix".into()));
    }
    let n = g.rows();
    let mut c = FloatMatrix::zeros(n, n);
    let mut pivots = Vec::new();
    for p in 0..n {
        let s: f64 = (0..p).map(|q| c.get(p, q) * c.get(p, q)).sum();
        let s1 = g.get(p, p) - s;
        if s1 < tol {
            let gpp = g.get(p, p).max(0.0);
            if s1 < -(CLAMP_RESIDUAL_RATIO * gpp + tol) {
                return Err(Error::NotPsd { column: p });
            }
            for i in p + 1..n {
                let r = g.get(i, p) - (0..p).map(|j| c.get(i, j) * c.get(p, j)).sum::<f64>();
                let budget = (g.get(i, i).max(0.0) * gpp).sqrt();
                if r.abs() > CLAMP_RESIDUAL_RATIO * budget + tol {
                    return Err(Error::NotPsd { column: p });
                }
            }
            continue;
        }
        let lpp = s1.sqrt();
        c.set(p, p, lpp);
        for i in p + 1..n {
            let s: f64 = (0..p).map(|j| c.get(i, j) * c.get(p, j)).sum();
            c.set(i, p, (g.get(i, p) - s) / lpp);
        }
        pivots.push(p);
    }
    let l = c.select_columns(&pivots);
    Ok(FloatCholesky {
        kept: pivots.len(),
        l,
        pivots,
    })
}
