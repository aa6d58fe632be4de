//! The `ratginv` command line.
//!
//! ```text
//! ratginv rank FILE
//! ratginv mp FILE [--float] [--tol T]
//! ratginv ginv FILE --helper FILE [--branch left|right|auto]
//! ratginv check FILE --candidate FILE
//! ratginv bench [--families S,F,A] [--sizes 5,10,25] [--methods geninv,modginv] [--csv PATH]
//! ```
//!
//! Matrix results are printed in the matrix-file format, so they can be fed
//! back in; extra information follows as `#` comment lines. Exit status is 0
//! on success, 1 on a computation or I/O error and 2 on a usage error.

mod parse;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::ginv::{algorithm_2_1, moore_penrose, penrose_check, Branch, GInvTask};
use crate::numeric::{
    bench_run, geninv_float, render_records, render_table, write_csv, BenchConfig, Family,
    FloatMatrix, Method,
};
use crate::psdfactor::DEFAULT_FLOAT_TOL;
use crate::ratmat::RatMatrix;

pub use parse::{parse_matrix_file, parse_poly_expr, parse_ratfun_expr};

#[derive(Debug, Parser)]
#[command(
    name = "ratginv",
    version,
    about = "Generalized inverses of matrices over Q(x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the rank over Q(x).
    Rank { file: PathBuf },
    /// Print the Moore-Penrose inverse.
    Mp {
        file: PathBuf,
        /// Use the floating-point backend (constant matrices only).
        #[arg(long)]
        float: bool,
        /// Pivot tolerance of the float backend.
        #[arg(long, default_value_t = DEFAULT_FLOAT_TOL)]
        tol: f64,
    },
    /// Compute a {2,4}/{2,3} inverse from a helper matrix.
    Ginv {
        file: PathBuf,
        #[arg(long)]
        helper: PathBuf,
        #[arg(long, default_value = "auto")]
        branch: Branch,
    },
    /// Report which Penrose equations a candidate satisfies.
    Check {
        file: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Time the float methods on the test-matrix families.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "S,F,A")]
        families: Vec<Family>,
        #[arg(long, value_delimiter = ',', default_value = "5,10,25")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "geninv,modginv")]
        methods: Vec<Method>,
        /// Also write the records as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        /// Family parameter `a`.
        #[arg(long, default_value_t = 1.0)]
        param: f64,
        #[arg(long, default_value_t = DEFAULT_FLOAT_TOL)]
        tol: f64,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

fn read_matrix(path: &Path) -> Result<RatMatrix, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_matrix_file(&text).map_err(|source| CliError::Input {
        path: shown,
        source,
    })
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{}", e.render());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        2
                    } else {
                        0
                    }
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Rank { file } => {
            let a = read_matrix(&file)?;
            writeln!(out, "{}", a.rank())?;
        }
        Command::Mp { file, float, tol } => {
            let a = read_matrix(&file)?;
            if float {
                let g = geninv_float(&FloatMatrix::from_rat_matrix(&a)?, tol)?;
                write!(out, "{}", g.x)?;
                writeln!(out, "# rank: {}", g.rank)?;
                writeln!(out, "# condition: {:.3e}", g.gram_condition)?;
                if g.condition_warning {
                    writeln!(
                        err,
                        "warning: Gram condition estimate {:.3e} exceeds threshold",
                        g.gram_condition
                    )?;
                }
            } else {
                write!(out, "{}", moore_penrose(&a)?)?;
            }
        }
        Command::Ginv {
            file,
            helper,
            branch,
        } => {
            let task = GInvTask {
                a: read_matrix(&file)?,
                helper: read_matrix(&helper)?,
                branch,
            };
            let outcome = algorithm_2_1(&task)?;
            if let Some(note) = outcome.rank_diagnostic() {
                writeln!(err, "note: {note}")?;
            }
            let g = &outcome.inverse;
            let report = penrose_check(&task.a, &g.x)?;
            write!(out, "{}", g.x)?;
            writeln!(out, "# s: {}", g.s)?;
            writeln!(out, "# branch: {}", g.branch)?;
            writeln!(out, "# class: {}", report.classification)?;
        }
        Command::Check { file, candidate } => {
            let a = read_matrix(&file)?;
            let x = read_matrix(&candidate)?;
            writeln!(out, "{}", penrose_check(&a, &x)?)?;
        }
        Command::Bench {
            families,
            sizes,
            methods,
            csv,
            repeats,
            param,
            tol,
        } => {
            let cfg = BenchConfig {
                repeats,
                tol,
                param,
            };
            let records = bench_run(&families, &sizes, &methods, &cfg);
            writeln!(out, "{}", render_table(&records))?;
            write!(out, "{}", render_records(&records))?;
            if let Some(path) = csv {
                let shown = path.display().to_string();
                let f = fs::File::create(&path).map_err(|source| CliError::Io {
                    path: shown.clone(),
                    source,
                })?;
                write_csv(&records, f).map_err(|source| CliError::Io {
                    path: shown,
                    source,
                })?;
            }
        }
    }
    Ok(())
}
