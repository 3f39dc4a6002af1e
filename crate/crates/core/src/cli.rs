//! Command-line front end.
//!
//! Reports go to stdout as JSON, diagnostics to stderr. Exit codes: 0 on
//! success, 1 when a verification suite has a failing case, 2 on usage,
//! parse or validation errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::assignment::{min_trace_bruteforce, min_trace_hungarian};
use crate::birkhoff::{birkhoff_decompose, sample_convex, sample_sinkhorn, BirkhoffTerm};
use crate::error::{Error, Result};
use crate::geometry::{
    bounding_ball_radius_enum, bounding_ball_radius_s2, chebyshev_radius, Search, ENUM_MAX_N,
};
use crate::io::{format_matrix, read_matrix, MatrixFormat};
use crate::json;
use crate::matrix::{DoublyStochasticMatrix, DEFAULT_TOL};
use crate::spectral::frobenius_norm;
use crate::spectral::{singular_values, SchattenExponent};
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

const SINKHORN_MAX_ITERS: usize = 10_000;
const SINKHORN_TOL: f64 = 1e-13;

#[derive(Debug, Parser)]
#[command(
    name = "birkhoff",
    version,
    about = "Geometry of the Birkhoff polytope under Schatten norms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schatten p-norm and singular values of a matrix.
    Norm {
        /// Matrix file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Input format; detected from the contents when omitted.
        #[arg(long, value_enum)]
        format: Option<MatrixFormat>,
    },
    /// Minimal trace of A P over permutation matrices P.
    Mintrace {
        file: PathBuf,
        /// Enumerate all permutations instead of running the Hungarian method (n <= 9).
        #[arg(long)]
        exact_brute: bool,
        #[arg(long, value_enum)]
        format: Option<MatrixFormat>,
    },
    /// Radius of the smallest ball centered at the matrix containing every permutation matrix.
    Radius {
        file: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Enumerate permutations even when p = 2.
        #[arg(long)]
        r#enum: bool,
        /// Check this many random permutations instead of all (lower bound).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        format: Option<MatrixFormat>,
    },
    /// Chebyshev radius and center of the polytope.
    Chebyshev {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// Birkhoff decomposition of a doubly stochastic matrix.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<MatrixFormat>,
    },
    /// Random doubly stochastic matrix.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SampleMethod::Convex)]
        method: SampleMethod,
        /// Number of permutations mixed by the convex method.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Randomized invariant checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleMethod {
    Convex,
    Sinkhorn,
}

#[derive(Serialize)]
struct NormReport {
    n: usize,
    p: SchattenExponent,
    schatten_norm: f64,
    singular_values: Vec<f64>,
}

#[derive(Serialize)]
struct MinTraceReport<'a> {
    value: f64,
    sigma: &'a [usize],
    method: &'static str,
}

#[derive(Serialize)]
struct DecomposeReport<'a> {
    n: usize,
    terms: &'a [BirkhoffTerm],
    weight_sum: f64,
    reconstruction_error: f64,
}

fn exponent(p: f64) -> Result<SchattenExponent> {
    SchattenExponent::new(p)
}

/// Runs one parsed command, writing the report to `out`. Returns the exit code.
pub fn execute(command: Command, out: &mut dyn Write) -> Result<u8> {
    let text = match command {
        Command::Norm { file, p, format } => {
            let a = read_matrix(&file, format)?;
            let p = exponent(p)?;
            let s = singular_values(&a)?;
            json::to_string(&NormReport {
                n: a.dim(),
                p,
                schatten_norm: s.schatten(p),
                singular_values: s.into_vec(),
            })
        }
        Command::Mintrace {
            file,
            exact_brute,
            format,
        } => {
            let a = read_matrix(&file, format)?;
            let (r, method) = if exact_brute {
                (min_trace_bruteforce(&a)?, "bruteforce")
            } else {
                (min_trace_hungarian(&a), "hungarian")
            };
            json::to_string(&MinTraceReport {
                value: r.value,
                sigma: &r.assignment,
                method,
            })
        }
        Command::Radius {
            file,
            p,
            r#enum,
            samples,
            seed,
            format,
        } => {
            let a = read_matrix(&file, format)?;
            let p = exponent(p)?;
            let report = match samples {
                Some(samples) => {
                    bounding_ball_radius_enum(&a, p, Search::Sampled { samples, seed })?
                }
                None if p == SchattenExponent::TWO && !r#enum => bounding_ball_radius_s2(&a),
                None if a.dim() > ENUM_MAX_N => {
                    return Err(Error::DimensionTooLarge {
                        n: a.dim(),
                        max: ENUM_MAX_N,
                    })
                }
                None => bounding_ball_radius_enum(&a, p, Search::Exhaustive)?,
            };
            json::to_string(&report)
        }
        Command::Chebyshev { n, p } => json::to_string(&chebyshev_radius(n, exponent(p)?)?),
        Command::Decompose { file, format } => {
            let d = DoublyStochasticMatrix::new(read_matrix(&file, format)?, DEFAULT_TOL)?;
            let dec = birkhoff_decompose(&d)?;
            let reconstruction_error = frobenius_norm(&dec.reconstruct().sub(&d)?);
            json::to_string(&DecomposeReport {
                n: dec.n,
                terms: &dec.terms,
                weight_sum: dec.weight_sum(),
                reconstruction_error,
            })
        }
        Command::Sample {
            n,
            method,
            k,
            seed,
            format,
        } => {
            let d = match method {
                SampleMethod::Convex => sample_convex(n, k.unwrap_or(n), seed)?,
                SampleMethod::Sinkhorn => {
                    sample_sinkhorn(n, seed, SINKHORN_MAX_ITERS, SINKHORN_TOL)?
                }
            };
            out.write_all(format_matrix(&d, format).as_bytes())?;
            return Ok(EXIT_OK);
        }
        Command::Verify {
            suite,
            seed,
            trials,
        } => {
            let report = run_suite(suite, seed, trials);
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            out.write_all(json_text(&report)?.as_bytes())?;
            return Ok(code);
        }
    };
    let text = text.map_err(|e| Error::Parse(e.to_string()))?;
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn json_text<T: Serialize>(v: &T) -> Result<String> {
    json::to_string(v).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
