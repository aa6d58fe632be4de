//! Exact generalized inverses of matrices whose entries are rational
//! functions of one variable `x` with rational coefficients.
//!
//! The exact path works in Q(x) throughout: entries are reduced fractions of
//! polynomials with big-rational coefficients, Gram matrices are factored
//! without square roots, and every result is checked by exact equality.
//! A floating-point backend handles constant matrices and powers the
//! benchmark in [`numeric`].
//!
//! ```
//! use ratginv::{moore_penrose, penrose_check, RatMatrix};
//! use ratginv::cli::parse_matrix_file;
//!
//! let a: RatMatrix = parse_matrix_file("2 2\nx; 1\nx; 1\n").unwrap();
//! let x = moore_penrose(&a).unwrap();
//! assert_eq!(penrose_check(&a, &x).unwrap().classification, "MP");
//! ```

pub mod cli;
pub mod error;
pub mod ginv;
pub mod numeric;
pub mod psdfactor;
pub mod ratfield;
pub mod ratmat;

pub use error::{Error, Result};
pub use ginv::{
    algorithm_2_1, classify, ginv_left, ginv_right, moore_penrose, penrose_check, resolve_branch,
    reverse_order_law_check, Branch, CheckReport, GInvTask, GInverse, TaskOutcome,
};
pub use numeric::{geninv_float, modginv_float, testmat_gen, Family, FloatMatrix};
pub use psdfactor::{cholesky_float, ldl_psd_exact, psd_pinv, PsdFactorization};
pub use ratfield::{rat, Poly, Rat, RatFun};
pub use ratmat::RatMatrix;
