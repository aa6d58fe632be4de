//! {2,4}, {2,3}, {1,2,4}, {1,2,3} and Moore-Penrose inverses of matrices over Q(x).
//!
//! For a helper `R` with `R^T A` of rank `s`, the left representation
//!
//! ```text
//! X = (R^T A)^+ R^T = G^+ (R^T A)^T R^T,   G = (R^T A)^T (R^T A)
//! ```
//!
//! is a {2,4}-inverse of rank `s`, and a {1,2,4}-inverse when `s = rank(A)`.
//! Dually `X = T^T (A T^T)^+ = T^T (A T^T)^T G^+` with `G = (A T^T)(A T^T)^T`
//! gives {2,3}- and {1,2,3}-inverses. `G^+` comes from the square-root-free
//! factorization in [`crate::psdfactor`], and `R = T = A` gives `A^+`.

use std::fmt;

use crate::error::{Error, Result};
use crate::psdfactor::ldl_psd_exact;
use crate::ratmat::RatMatrix;

/// Which representation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `(R^T A)^+ R^T`; helper has as many rows as `A`.
    Left,
    /// `T^T (A T^T)^+`; helper has as many columns as `A`.
    Right,
    /// Right when the column counts agree, left otherwise.
    Auto,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Left => "left",
            Branch::Right => "right",
            Branch::Auto => "auto",
        })
    }
}

impl std::str::FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "left" => Ok(Branch::Left),
            "right" => Ok(Branch::Right),
            "auto" => Ok(Branch::Auto),
            other => Err(format!(
                "unknown branch `{other}` (expected left, right or auto)"
            )),
        }
    }
}

/// Input to [`algorithm_2_1`]: the matrix, a helper, and the branch policy.
#[derive(Debug, Clone)]
pub struct GInvTask {
    pub a: RatMatrix,
    pub helper: RatMatrix,
    pub branch: Branch,
}

/// One generalized inverse together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GInverse {
    pub x: RatMatrix,
    /// Realized rank `s` (pivot count of the Gram factorization).
    pub s: usize,
    /// Either [`Branch::Left`] or [`Branch::Right`].
    pub branch: Branch,
}

/// Result of [`algorithm_2_1`], including the rank the shortcut
/// `min(rank A, rank helper)` would have predicted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskOutcome {
    pub inverse: GInverse,
    pub shortcut_rank: usize,
}

impl TaskOutcome {
    /// Human-readable note when the realized rank and the shortcut disagree.
    pub fn rank_diagnostic(&self) -> Option<String> {
        (self.shortcut_rank != self.inverse.s).then(|| {
            format!(
                "realized rank s = {} differs from min(rank A, rank helper) = {}; using s = {}",
                self.inverse.s, self.shortcut_rank, self.inverse.s
            )
        })
    }
}

/// `(R^T A)^+ R^T`, a member of `A{2,4}_s` with `s = rank(R^T A)`.
pub fn ginv_left(a: &RatMatrix, r: &RatMatrix) -> Result<GInverse> {
    if r.rows() != a.rows() {
        return Err(Error::DimensionMismatch {
            op: "ginv_left",
            left: a.shape(),
            right: r.shape(),
        });
    }
    let r_star = r.star();
    let b = r_star.mul(a)?;
    let b_star = b.star();
    let f = ldl_psd_exact(&b_star.mul(&b)?)?;
    if f.rank() == 0 {
        return Err(Error::RankZero);
    }
    let core = f.pinv()?;
    let x = core.mul(&b_star.mul(&r_star)?)?;
    Ok(GInverse {
        x,
        s: f.rank(),
        branch: Branch::Left,
    })
}

/// `T^T (A T^T)^+`, a member of `A{2,3}_s` with `s = rank(A T^T)`.
pub fn ginv_right(a: &RatMatrix, t: &RatMatrix) -> Result<GInverse> {
    if t.cols() != a.cols() {
        return Err(Error::DimensionMismatch {
            op: "ginv_right",
            left: a.shape(),
            right: t.shape(),
        });
    }
    let b = a.mul(&t.star())?;
    let b_star = b.star();
    let f = ldl_psd_exact(&b.mul(&b_star)?)?;
    if f.rank() == 0 {
        return Err(Error::RankZero);
    }
    let core = f.pinv()?;
    let x = t.star().mul(&b_star)?.mul(&core)?;
    Ok(GInverse {
        x,
        s: f.rank(),
        branch: Branch::Right,
    })
}

/// Picks the branch for `task` without computing anything.
pub fn resolve_branch(task: &GInvTask) -> Result<Branch> {
    let (a, h) = (&task.a, &task.helper);
    let mismatch = || Error::DimensionMismatch {
        op: "algorithm_2_1",
        left: a.shape(),
        right: h.shape(),
    };
    match task.branch {
        Branch::Auto if h.cols() == a.cols() => Ok(Branch::Right),
        Branch::Auto if h.rows() == a.rows() => Ok(Branch::Left),
        Branch::Auto => Err(mismatch()),
        Branch::Left if h.rows() == a.rows() => Ok(Branch::Left),
        Branch::Right if h.cols() == a.cols() => Ok(Branch::Right),
        _ => Err(mismatch()),
    }
}

/// Runs the left or right representation according to `task.branch`.
///
/// With [`Branch::Auto`] a helper sharing `A`'s column count takes the right
/// branch (so a square helper of `A`'s size goes right), otherwise one
/// sharing `A`'s row count takes the left branch.
pub fn algorithm_2_1(task: &GInvTask) -> Result<TaskOutcome> {
    let inverse = match resolve_branch(task)? {
        Branch::Right => ginv_right(&task.a, &task.helper)?,
        _ => ginv_left(&task.a, &task.helper)?,
    };
    let shortcut_rank = task.a.rank().min(task.helper.rank());
    Ok(TaskOutcome {
        inverse,
        shortcut_rank,
    })
}

/// Moore-Penrose inverse, computed through both the left and right routes
/// with `R = T = A`; the two results must agree exactly. The zero matrix
/// maps to the transposed-shape zero matrix.
pub fn moore_penrose(a: &RatMatrix) -> Result<RatMatrix> {
    if a.is_zero() {
        return Ok(RatMatrix::zeros(a.cols(), a.rows()));
    }
    let left = ginv_left(a, a)?.x;
    let right = ginv_right(a, a)?.x;
    if left != right {
        return Err(Error::InconsistentRoutes);
    }
    Ok(left)
}

/// Which Penrose equations a candidate satisfies, and what that makes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    /// `A X A = A`
    pub eq1: bool,
    /// `X A X = X`
    pub eq2: bool,
    /// `(A X)^T = A X`
    pub eq3: bool,
    /// `(X A)^T = X A`
    pub eq4: bool,
    pub rank_x: usize,
    pub rank_a: usize,
    pub classification: String,
}

impl CheckReport {
    pub fn equations(&self) -> [bool; 4] {
        [self.eq1, self.eq2, self.eq3, self.eq4]
    }
}

/// Label for a set of satisfied equations.
///
/// All four give `MP`. With equation 1 the set is listed plainly, e.g.
/// `{1,2,4}`; without it, a set containing 2 carries the rank, e.g.
/// `{2,3}_2`. Nothing satisfied gives `none`.
pub fn classify(eqs: [bool; 4], rank_x: usize) -> String {
    if eqs.iter().all(|&e| e) {
        return "MP".to_string();
    }
    let list: Vec<String> = eqs
        .iter()
        .enumerate()
        .filter(|(_, &e)| e)
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    if list.is_empty() {
        return "none".to_string();
    }
    let set = format!("{{{}}}", list.join(","));
    if !eqs[0] && eqs[1] {
        format!("{set}_{rank_x}")
    } else {
        set
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "1:{} 2:{} 3:{} 4:{}",
            self.eq1, self.eq2, self.eq3, self.eq4
        )?;
        writeln!(f, "rank: {}", self.rank_x)?;
        write!(f, "class: {}", self.classification)
    }
}

/// Tests the four Penrose equations exactly.
pub fn penrose_check(a: &RatMatrix, x: &RatMatrix) -> Result<CheckReport> {
    if x.rows() != a.cols() || x.cols() != a.rows() {
        return Err(Error::DimensionMismatch {
            op: "penrose_check",
            left: a.shape(),
            right: x.shape(),
        });
    }
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    let eq1 = ax.mul(a)? == *a;
    let eq2 = xa.mul(x)? == *x;
    let eq3 = ax.star() == ax;
    let eq4 = xa.star() == xa;
    let rank_x = x.rank();
    let rank_a = a.rank();
    Ok(CheckReport {
        eq1,
        eq2,
        eq3,
        eq4,
        rank_x,
        rank_a,
        classification: classify([eq1, eq2, eq3, eq4], rank_x),
    })
}

/// Evaluates both sides of `(AB)^+ = B^T (A^T A B B^T)^+ A^T` with
/// [`moore_penrose`] and compares them exactly.
pub fn reverse_order_law_check(a: &RatMatrix, b: &RatMatrix) -> Result<bool> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "reverse_order_law_check",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let (a_star, b_star) = (a.star(), b.star());
    let lhs = moore_penrose(&a.mul(b)?)?;
    let inner = a_star.mul(a)?.mul(b)?.mul(&b_star)?;
    let rhs = b_star.mul(&moore_penrose(&inner)?)?.mul(&a_star)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{rat, RatFun};

    fn q(n: i64, d: i64) -> RatFun {
        RatFun::constant(rat(n, d))
    }

    #[test]
    fn left_on_diagonal_is_mp() {
        let a = RatMatrix::from_ints(&[[2, 0], [0, 0]]);
        let g = ginv_left(&a, &a).unwrap();
        assert_eq!(g.s, 1);
        assert_eq!(g.x, RatMatrix::diag(&[q(1, 2), q(0, 1)]));
    }

    #[test]
    fn right_on_identity() {
        let i2 = RatMatrix::identity(2);
        let g = ginv_right(&i2, &i2).unwrap();
        assert_eq!((g.x, g.s), (i2, 2));
    }

    #[test]
    fn rank_zero_helper_product() {
        let a = RatMatrix::from_ints(&[[1, 0], [0, 0]]);
        let r = RatMatrix::from_ints(&[[0], [1]]);
        assert_eq!(ginv_left(&a, &r), Err(Error::RankZero));
        assert!(matches!(
            ginv_left(&a, &RatMatrix::zeros(3, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mp_of_all_ones() {
        let j = RatMatrix::from_ints(&[[1, 1], [1, 1]]);
        let x = moore_penrose(&j).unwrap();
        assert!(x.entries().iter().all(|e| e == &q(1, 4)));
        let report = penrose_check(&j, &x).unwrap();
        assert_eq!(report.classification, "MP");
    }

    #[test]
    fn mp_of_zero_is_transposed_zero() {
        assert_eq!(
            moore_penrose(&RatMatrix::zeros(2, 3)).unwrap(),
            RatMatrix::zeros(3, 2)
        );
    }

    #[test]
    fn zero_candidate_fails_only_first_equation() {
        let a = RatMatrix::from_ints(&[[1, 2], [3, 4], [5, 6]]);
        let r = penrose_check(&a, &RatMatrix::zeros(2, 3)).unwrap();
        assert_eq!(r.equations(), [false, true, true, true]);
        assert_eq!(r.rank_x, 0);
    }

    #[test]
    fn classification_labels() {
        assert_eq!(classify([true; 4], 3), "MP");
        assert_eq!(classify([true, true, false, true], 3), "{1,2,4}");
        assert_eq!(classify([true, true, true, false], 3), "{1,2,3}");
        assert_eq!(classify([false, true, false, true], 2), "{2,4}_2");
        assert_eq!(classify([false, true, true, false], 2), "{2,3}_2");
        assert_eq!(classify([false; 4], 0), "none");
        assert_eq!(classify([true, false, false, false], 1), "{1}");
    }

    #[test]
    fn auto_branch_dispatch() {
        let a = RatMatrix::zeros(4, 3);
        let task = |h: RatMatrix, b| GInvTask {
            a: a.clone(),
            helper: h,
            branch: b,
        };
        assert_eq!(
            resolve_branch(&task(RatMatrix::zeros(2, 3), Branch::Auto)),
            Ok(Branch::Right)
        );
        assert_eq!(
            resolve_branch(&task(RatMatrix::zeros(4, 2), Branch::Auto)),
            Ok(Branch::Left)
        );
        assert!(resolve_branch(&task(RatMatrix::zeros(2, 2), Branch::Auto)).is_err());
        assert!(resolve_branch(&task(RatMatrix::zeros(2, 3), Branch::Left)).is_err());
        let sq = RatMatrix::zeros(3, 3);
        let t = GInvTask {
            a: sq.clone(),
            helper: sq,
            branch: Branch::Auto,
        };
        assert_eq!(resolve_branch(&t), Ok(Branch::Right));
    }

    #[test]
    fn reverse_order_law_trivial_cases() {
        let a = RatMatrix::from_rows(vec![
            vec![RatFun::x(), RatFun::from_int(1)],
            vec![RatFun::from_int(2), RatFun::x()],
            vec![RatFun::from_int(0), RatFun::from_int(1)],
        ])
        .unwrap();
        assert!(reverse_order_law_check(&a, &RatMatrix::identity(2)).unwrap());
        assert!(reverse_order_law_check(&RatMatrix::identity(3), &a).unwrap());
    }

    #[test]
    fn reverse_order_law_needs_full_rank_factors() {
        // B has rank 1 < 2: (AB)^+ = (1/2, 0, 1/2) but the right side is (2/5, 1/5, 3/5).
        let a = RatMatrix::from_ints(&[[1, 0], [0, 1], [1, 1]]);
        let b = RatMatrix::from_ints(&[[1], [0]]);
        assert!(!reverse_order_law_check(&a, &b).unwrap());
    }
}
