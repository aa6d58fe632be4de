//! Floating-point backend for constant matrices and the benchmark harness.

mod bench;
mod float;
mod ginv_float;
mod testmat;

pub use bench::{
    bench_run, render_records, render_table, write_csv, BenchConfig, BenchRecord, Method,
};
pub use float::{penrose_residuals, FloatMatrix};
pub use ginv_float::{geninv_float, modginv_float, FloatGinv, CONDITION_WARNING_THRESHOLD};
pub use testmat::{testmat_gen, Family};
