//! Dense matrices over Q(x).

use std::fmt;

use crate::error::{Error, Result};
use crate::ratfield::{Poly, Rat, RatFun};

/// Dense row-major matrix of normalized rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFun>,
}

impl RatMatrix {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<RatFun>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from equally long rows. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (m, n),
                right: (1, bad.len()),
            });
        }
        Self::from_vec(m, n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFun) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Constant integer matrix; all rows must have the same length.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == n), "ragged rows");
        Self::from_fn(m, n, |i, j| RatFun::from_int(rows[i].as_ref()[j]))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| RatFun::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                RatFun::one()
            } else {
                RatFun::zero()
            }
        })
    }

    pub fn diag(d: &[RatFun]) -> Self {
        let n = d.len();
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { d[i].clone() } else { RatFun::zero() },
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFun) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFun] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFun::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact product `self * rhs`.
    ///
    /// Rows of `self` and columns of `rhs` are brought to polynomial form
    /// first, so each output entry is normalized once.
    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let (ra, pa) = self.cleared_rows();
        let (cb, pb) = rhs.star().cleared_rows();
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Poly::zero();
            for (a, b) in pa[i].iter().zip(&pb[j]) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            if acc.is_zero() {
                RatFun::zero()
            } else {
                RatFun::new(acc, &ra[i] * &cb[j]).expect("nonzero denominators")
            }
        }))
    }

    /// Per row, the lcm `r` of the denominators and the polynomial row `r * row`.
    fn cleared_rows(&self) -> (Vec<Poly>, Vec<Vec<Poly>>) {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(Poly::one(), |acc, e| {
                    if e.denom().is_one() || *e.denom() == acc {
                        return acc;
                    }
                    let g = Poly::gcd(&acc, e.denom());
                    &acc * &e.denom().exact_div(&g)
                });
                let polys = row
                    .iter()
                    .map(|e| {
                        if e.denom() == &lcm {
                            e.numer().clone()
                        } else {
                            e.numer() * &lcm.exact_div(e.denom())
                        }
                    })
                    .collect();
                (lcm, polys)
            })
            .unzip()
    }

    fn zip_with(
        &self,
        rhs: &RatMatrix,
        op: &'static str,
        f: impl Fn(&RatFun, &RatFun) -> RatFun,
    ) -> Result<RatMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(rhs, "mat_add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(rhs, "mat_sub", |a, b| a - b)
    }

    pub fn scale(&self, c: &RatFun) -> RatMatrix {
        self.map(|e| e * c)
    }

    pub fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Conjugate transpose; over rational coefficients this is the transpose.
    pub fn star(&self) -> RatMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Specializes every entry at `x0`, giving a constant matrix.
    pub fn eval(&self, x0: &Rat) -> Result<RatMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.eval(x0).map(RatFun::constant))
            .collect::<Result<Vec<_>>>()?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Rank over Q(x).
    ///
    /// Each row is multiplied by the lcm of its denominators, then the
    /// polynomial matrix is reduced by fraction-free (Bareiss) elimination.
    /// Pivots are chosen with minimal degree inside their column.
    pub fn rank(&self) -> usize {
        let (_, mut m) = self.cleared_rows();

        let mut rank = 0;
        let mut prev = Poly::one();
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let pivot = (rank..self.rows)
                .filter(|&r| !m[r][c].is_zero())
                .min_by_key(|&r| m[r][c].degree());
            let Some(p) = pivot else { continue };
            m.swap(rank, p);
            for i in rank + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = &(&m[rank][c] * &m[i][j]) - &(&m[i][c] * &m[rank][j]);
                    m[i][j] = if prev.is_one() { v } else { v.exact_div(&prev) };
                }
                m[i][c] = Poly::zero();
            }
            prev = m[rank][c].clone();
            rank += 1;
        }
        rank
    }

    /// Exact inverse.
    ///
    /// Rows are cleared of denominators and the polynomial matrix `P` is
    /// reduced by fraction-free Gauss-Jordan elimination on `[P | I]`, which
    /// ends at `[det P * I | adj P]` with only exact polynomial divisions.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "mat_inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        let (scale, p) = self.cleared_rows();
        let mut m: Vec<Vec<Poly>> = p
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }));
                row
            })
            .collect();
        let mut prev = Poly::one();
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&r| !m[r][k].is_zero())
                .min_by_key(|&r| m[r][k].degree());
            let Some(p) = pivot else {
                return Err(Error::SingularMatrix {
                    rank: self.rank(),
                    dim: n,
                });
            };
            m.swap(k, p);
            let (head, tail) = m.split_at_mut(k);
            let (pivot_row, below) = tail.split_first_mut().expect("row k exists");
            for row in head.iter_mut().chain(below.iter_mut()) {
                let f = std::mem::replace(&mut row[k], Poly::zero());
                for j in (0..2 * n).filter(|&j| j != k) {
                    if row[j].is_zero() && (f.is_zero() || pivot_row[j].is_zero()) {
                        continue;
                    }
                    let v = &(&pivot_row[k] * &row[j]) - &(&f * &pivot_row[j]);
                    row[j] = if prev.is_one() { v } else { v.exact_div(&prev) };
                }
            }
            prev = pivot_row[k].clone();
        }
        let det = prev;
        Ok(Self::from_fn(n, n, |i, j| {
            let adj = &m[i][n + j];
            if adj.is_zero() {
                RatFun::zero()
            } else {
                RatFun::new(adj * &scale[j], det.clone()).expect("nonzero determinant")
            }
        }))
    }
}

/// Matrix file format: header `m n`, then one line per row with `;`-separated cells.
impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join("; "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
