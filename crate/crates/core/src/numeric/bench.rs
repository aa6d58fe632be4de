use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::psdfactor::DEFAULT_FLOAT_TOL;

use super::{
    geninv_float, modginv_float, penrose_residuals, testmat_gen, Family, FloatGinv, FloatMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Cholesky of `A^T A`.
    Geninv,
    /// Cholesky of `(A^T A)^T (A^T A)` with helper `R = A`.
    Modginv,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Geninv, Method::Modginv];

    pub fn run(self, a: &FloatMatrix, tol: f64) -> Result<FloatGinv> {
        match self {
            Method::Geninv => geninv_float(a, tol),
            Method::Modginv => modginv_float(a, a, tol),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Geninv => "geninv",
            Method::Modginv => "modginv",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "geninv" => Ok(Method::Geninv),
            "modginv" => Ok(Method::Modginv),
            other => Err(Error::NumericFailure(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Timed runs per cell; the median is reported.
    pub repeats: usize,
    pub tol: f64,
    /// Family parameter `a`.
    pub param: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            repeats: 5,
            tol: DEFAULT_FLOAT_TOL,
            param: 1.0,
        }
    }
}

/// One (matrix, method) cell of the benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    /// Family letter followed by size, e.g. `S25`.
    pub matrix_name: String,
    pub method: Method,
    /// Median wall-clock time, excluding matrix generation.
    pub elapsed_seconds: f64,
    /// Max-norm residuals of Penrose equations 1-4.
    pub residuals: [f64; 4],
    pub condition_warning: bool,
    /// Set when the method failed; residuals are then NaN.
    pub failure: Option<String>,
}

impl BenchRecord {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn time_cell(method: Method, a: &FloatMatrix, cfg: &BenchConfig) -> Result<(f64, FloatGinv)> {
    let mut times = Vec::with_capacity(cfg.repeats.max(1));
    let mut last = None;
    for _ in 0..cfg.repeats.max(1) {
        let start = Instant::now();
        let out = method.run(a, cfg.tol)?;
        times.push(start.elapsed().as_secs_f64());
        last = Some(out);
    }
    times.sort_by(f64::total_cmp);
    Ok((times[times.len() / 2], last.expect("at least one run")))
}

/// Times every (family, size, method) cell serially.
///
/// A failing cell is recorded with its error instead of aborting the run.
pub fn bench_run(
    families: &[Family],
    sizes: &[usize],
    methods: &[Method],
    cfg: &BenchConfig,
) -> Vec<BenchRecord> {
    let mut out = Vec::new();
    if methods.is_empty() {
        return out;
    }
    for &family in families {
        for &n in sizes {
            let name = format!("{family}{n}");
            let a = match testmat_gen(family, n, cfg.param) {
                Ok(a) => a,
                Err(e) => {
                    for &method in methods {
                        out.push(failed(&name, method, &e));
                    }
                    continue;
                }
            };
            for &method in methods {
                let record = time_cell(method, &a, cfg).and_then(|(secs, g)| {
                    Ok(BenchRecord {
                        matrix_name: name.clone(),
                        method,
                        elapsed_seconds: secs,
                        residuals: penrose_residuals(&a, &g.x)?,
                        condition_warning: g.condition_warning,
                        failure: None,
                    })
                });
                out.push(record.unwrap_or_else(|e| failed(&name, method, &e)));
            }
        }
    }
    out
}

fn failed(name: &str, method: Method, e: &Error) -> BenchRecord {
    BenchRecord {
        matrix_name: name.to_string(),
        method,
        elapsed_seconds: f64::NAN,
        residuals: [f64::NAN; 4],
        condition_warning: false,
        failure: Some(e.to_string()),
    }
}

/// CSV with columns `matrix,method,seconds,r1,r2,r3,r4,warning`; failed cells
/// carry `-` in the numeric columns.
pub fn write_csv<W: io::Write>(records: &[BenchRecord], w: W) -> io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record([
        "matrix", "method", "seconds", "r1", "r2", "r3", "r4", "warning",
    ])?;
    for r in records {
        let mut row = vec![r.matrix_name.clone(), r.method.to_string()];
        if r.failure.is_some() {
            row.extend(std::iter::repeat_n("-".to_string(), 5));
        } else {
            row.push(format!("{:.6e}", r.elapsed_seconds));
            row.extend(r.residuals.iter().map(|v| format!("{v:.3e}")));
        }
        row.push(r.condition_warning.to_string());
        wtr.write_record(&row)?;
    }
    wtr.flush()
}

/// Matrices down, methods across; a cell is the median time, with ` *` on a
/// condition warning and `-` on failure.
pub fn render_table(records: &[BenchRecord]) -> String {
    let mut names: Vec<&str> = Vec::new();
    let mut methods: Vec<Method> = Vec::new();
    for r in records {
        if !names.contains(&r.matrix_name.as_str()) {
            names.push(&r.matrix_name);
        }
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    let cell = |name: &str, m: Method| -> String {
        match records
            .iter()
            .find(|r| r.matrix_name == name && r.method == m)
        {
            None => String::new(),
            Some(r) if r.failure.is_some() => "-".into(),
            Some(r) if r.condition_warning => format!("{:.6} *", r.elapsed_seconds),
            Some(r) => format!("{:.6}", r.elapsed_seconds),
        }
    };
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("matrix".to_string())
        .chain(methods.iter().map(ToString::to_string))
        .collect()];
    for name in &names {
        rows.push(
            std::iter::once(name.to_string())
                .chain(methods.iter().map(|&m| cell(name, m)))
                .collect(),
        );
    }
    align(&rows)
}

/// One line per record with residuals, aligned.
pub fn render_records(records: &[BenchRecord]) -> String {
    let mut rows = vec![[
        "matrix", "method", "seconds", "r1", "r2", "r3", "r4", "warning",
    ]
    .map(String::from)
    .to_vec()];
    for r in records {
        let mut row = vec![r.matrix_name.clone(), r.method.to_string()];
        match &r.failure {
            Some(msg) => {
                row.push("-".into());
                row.extend(std::iter::repeat_n("-".to_string(), 4));
                row.push(format!("failed: {msg}"));
            }
            None => {
                row.push(format!("{:.6}", r.elapsed_seconds));
                row.extend(r.residuals.iter().map(|v| format!("{v:.2e}")));
                row.push(if r.condition_warning {
                    "*".into()
                } else {
                    String::new()
                });
            }
        }
        rows.push(row);
    }
    align(&rows)
}

fn align(rows: &[Vec<String>]) -> String {
    let ncol = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncol)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, v)| format!("{v:<w$}", w = widths[c]))
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}
