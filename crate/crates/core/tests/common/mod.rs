//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratginv::{FloatMatrix, Poly, Rat, RatFun, RatMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(rng: &mut impl Rng, max_deg: usize, coef: i64) -> Poly {
    let deg = rng.random_range(0..=max_deg);
    let c: Vec<i64> = (0..=deg).map(|_| rng.random_range(-coef..=coef)).collect();
    Poly::from_ints(&c)
}

/// Mostly polynomial entries; about one in six gets a linear denominator.
pub fn ratfun(rng: &mut impl Rng, max_deg: usize, coef: i64) -> RatFun {
    let num = poly(rng, max_deg, coef);
    if rng.random_range(0..6) == 0 {
        loop {
            let den = poly(rng, 1, coef);
            if !den.is_zero() {
                return RatFun::new(num, den).unwrap();
            }
        }
    }
    RatFun::from_poly(num)
}

pub fn matrix(rng: &mut impl Rng, m: usize, n: usize, max_deg: usize, coef: i64) -> RatMatrix {
    RatMatrix::from_fn(m, n, |_, _| ratfun(rng, max_deg, coef))
}

/// Polynomial `m x n` matrix of rank at most `k`, entries of degree at most 2.
pub fn low_rank(rng: &mut impl Rng, m: usize, n: usize, k: usize, coef: i64) -> RatMatrix {
    let p = RatMatrix::from_fn(m, k, |_, _| RatFun::from_poly(poly(rng, 1, coef)));
    let q = RatMatrix::from_fn(k, n, |_, _| RatFun::from_poly(poly(rng, 1, coef)));
    p.mul(&q).unwrap()
}

/// Random matrix that is rank deficient about a third of the time.
pub fn mixed(rng: &mut impl Rng, m: usize, n: usize, max_deg: usize, coef: i64) -> RatMatrix {
    let full = m.min(n);
    if full > 1 && rng.random_range(0..3) == 0 {
        let k = rng.random_range(1..full);
        low_rank(rng, m, n, k, coef.min(3))
    } else {
        matrix(rng, m, n, max_deg, coef)
    }
}

pub fn int_matrix(rng: &mut impl Rng, m: usize, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(lo..=hi)).collect())
        .collect()
}

pub fn from_int_rows(rows: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_ints(rows)
}

pub fn float_of_ints(rows: &[Vec<i64>]) -> FloatMatrix {
    FloatMatrix::from_rows(
        &rows
            .iter()
            .map(|r| r.iter().map(|&v| v as f64).collect())
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(a: &RatMatrix) -> RatFun {
    let n = a.rows();
    if n == 0 {
        return RatFun::one();
    }
    let mut acc = RatFun::zero();
    for j in 0..n {
        if a.get(0, j).is_zero() {
            continue;
        }
        let minor = RatMatrix::from_fn(n - 1, n - 1, |i, k| {
            a.get(i + 1, if k < j { k } else { k + 1 }).clone()
        });
        let term = a.get(0, j) * &det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest order of a nonzero minor.
pub fn minor_rank(a: &RatMatrix) -> usize {
    for k in (1..=a.rows().min(a.cols())).rev() {
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let sub = RatMatrix::from_fn(k, k, |i, j| a.get(rs[i], cs[j]).clone());
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let (m, n) = a.shape();
    let mut rows: Vec<Vec<RatFun>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let t = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    (
        RatMatrix::from_rows(rows).unwrap_or_else(|_| RatMatrix::zeros(m, n)),
        pivots,
    )
}

/// `A = F G` with `F` the pivot columns of `A` and `G` the nonzero rows of its RREF.
pub fn rank_factorization(a: &RatMatrix) -> (RatMatrix, RatMatrix) {
    let (r, pivots) = rref(a);
    let k = pivots.len();
    let f = RatMatrix::from_fn(a.rows(), k, |i, j| a.get(i, pivots[j]).clone());
    let g = RatMatrix::from_fn(k, a.cols(), |i, j| r.get(i, j).clone());
    (f, g)
}

/// Moore-Penrose inverse from a rank factorization:
/// `A^+ = G^T (G G^T)^-1 (F^T F)^-1 F^T`.
pub fn oracle_mp(a: &RatMatrix) -> RatMatrix {
    let (f, g) = rank_factorization(a);
    if f.cols() == 0 {
        return RatMatrix::zeros(a.cols(), a.rows());
    }
    let ggt = g.mul(&g.star()).unwrap().inverse().unwrap();
    let ftf = f.star().mul(&f).unwrap().inverse().unwrap();
    g.star()
        .mul(&ggt)
        .unwrap()
        .mul(&ftf)
        .unwrap()
        .mul(&f.star())
        .unwrap()
}

/// `a(x0)` as floats, or `None` at a pole.
pub fn float_at(a: &RatMatrix, x0: &Rat) -> Option<FloatMatrix> {
    FloatMatrix::from_rat_matrix(&a.eval(x0).ok()?).ok()
}
