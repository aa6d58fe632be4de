use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::FloatMatrix;

/// Deterministic singular test-matrix families, parametrized by a scale `a`.
///
/// Each family is `n x n` of rank `n - 1` with integer entries for integer `a`,
/// and their nonzero condition numbers grow polynomially in `n`. With `C` the
/// lower-triangular all-ones matrix and `Cz` the same with its last column
/// zeroed:
///
/// * `S`: weighted path Laplacian, edge `k` (1-based) of weight `a * k`; symmetric.
/// * `F`: `a * Cz * diag(1..n) * C`; nonsymmetric.
/// * `A`: `a * Cz * diag(1..n) * Cz^T`; symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    S,
    F,
    A,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::S, Family::F, Family::A];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S => "S",
            Family::F => "F",
            Family::A => "A",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S" | "s" => Ok(Family::S),
            "F" | "f" => Ok(Family::F),
            "A" | "a" | "A_fam" => Ok(Family::A),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

pub fn testmat_gen(family: Family, n: usize, a: f64) -> Result<FloatMatrix> {
    if n < 2 {
        return Err(Error::NumericFailure(format!(
            "test matrices need n >= 2, got {n}"
        )));
    }
    let m = match family {
        Family::S => {
            let mut m = FloatMatrix::zeros(n, n);
            for k in 0..n - 1 {
                let w = a * (k + 1) as f64;
                m.set(k, k, m.get(k, k) + w);
                m.set(k + 1, k + 1, m.get(k + 1, k + 1) + w);
                m.set(k, k + 1, m.get(k, k + 1) - w);
                m.set(k + 1, k, m.get(k + 1, k) - w);
            }
            m
        }
        // sum of (k + 1) over j <= k <= min(i, n - 2)
        Family::F => FloatMatrix::from_fn(n, n, |i, j| {
            let hi = i.min(n - 2);
            a * (j..=hi).map(|k| (k + 1) as f64).sum::<f64>()
        }),
        // sum of (k + 1) over k <= min(i, j, n - 2)
        Family::A => FloatMatrix::from_fn(n, n, |i, j| {
            let hi = i.min(j).min(n - 2);
            a * (0..=hi).map(|k| (k + 1) as f64).sum::<f64>()
        }),
    };
    Ok(m)
}
