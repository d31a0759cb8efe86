//! `heptasweep` command-line tool.
//!
//! Exit codes: 0 success, 1 check failed, 2 singular matrix, 3 solver
//! breakdown, 64 usage error, 74 I/O or file-format error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use heptasweep::bench::{run_bench, BenchError};
use heptasweep::generators::{generate, Family, GenError, GenSpec, DEFAULT_DOMINANCE};
use heptasweep::io::{
    is_matrix_market, read_banded, read_matrix_market, read_vector, write_banded,
    write_matrix_market, write_vector, BandedFile, IoError,
};
use heptasweep::matrix::inf_norm;
use heptasweep::sweep::{determinant, solve, SolveError, DEFAULT_EPS};
use heptasweep::HeptaMatrix;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_SINGULAR: u8 = 2;
const EXIT_BREAKDOWN: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "heptasweep",
    version,
    about = "Solve heptadiagonal linear systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve A·x = y.
    Solve {
        /// Matrix file (`.mtx` for Matrix Market, banded JSON otherwise).
        #[arg(long = "in")]
        input: PathBuf,
        /// Right-hand side; defaults to the `y` stored in a banded file.
        #[arg(long)]
        rhs: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        /// Write the report (or `x` alone, for `.mtx`) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print det(A).
    Det {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long)]
        json: bool,
    },
    /// Generate a test matrix.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Store y = A·1 alongside the matrix (banded output only).
        #[arg(long)]
        rhs_ones: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the solver over a range of sizes.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the residual of a solution.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to the `y` stored in a banded file.
        #[arg(long)]
        rhs: Option<PathBuf>,
        #[arg(long)]
        x: PathBuf,
        /// Residual bound; defaults to 1e-7·(1 + ‖y‖∞).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    #[value(name = "random_dd")]
    RandomDd,
    #[value(name = "fd6_laplacian")]
    Fd6Laplacian,
    #[value(name = "toeplitz")]
    Toeplitz,
    #[value(name = "planted_zero_minors")]
    PlantedZeroMinors,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Diagonal dominance factor (random_dd, planted_zero_minors).
    #[arg(long, default_value_t = DEFAULT_DOMINANCE)]
    dominance: f64,
    /// Grid spacing (fd6_laplacian).
    #[arg(long, default_value_t = 1.0)]
    h: f64,
    /// Seven comma-separated entries at offsets -3..3 (toeplitz).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    row: Vec<f64>,
    /// Comma-separated minor indices to zero (planted_zero_minors).
    #[arg(long, value_delimiter = ',')]
    zero_at: Vec<usize>,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, Failure> {
        Ok(match self.family {
            FamilyName::RandomDd => Family::RandomDd {
                dominance: self.dominance,
            },
            FamilyName::Fd6Laplacian => Family::Fd6Laplacian { h: self.h },
            FamilyName::Toeplitz => Family::Toeplitz {
                row: self.row.clone().try_into().map_err(|_| {
                    Failure::usage("toeplitz needs --row with exactly seven entries")
                })?,
            },
            FamilyName::PlantedZeroMinors => {
                if self.zero_at.is_empty() {
                    return Err(Failure::usage("planted_zero_minors needs --zero-at"));
                }
                Family::PlantedZeroMinors {
                    dominance: self.dominance,
                    zero_at: self.zero_at.clone(),
                }
            }
        })
    }
}

/// An error message and the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure {
            code: EXIT_IO,
            msg: e.to_string(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::Singular => EXIT_SINGULAR,
            SolveError::SymbolicBreakdown { .. } | SolveError::Arithmetic { .. } => EXIT_BREAKDOWN,
            SolveError::InvalidEps(_) => EXIT_USAGE,
            SolveError::Matrix(_) | SolveError::NonFiniteRhs(_) => EXIT_IO,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        let code = match e {
            GenError::TooSmall { .. } | GenError::InvalidParam(_) => EXIT_USAGE,
            GenError::ExhaustedRetries(_) | GenError::Matrix(_) => EXIT_BREAKDOWN,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::NoRepeats => Failure::usage(e.to_string()),
            BenchError::Gen(g) => g.into(),
            BenchError::Solve(s) => s.into(),
        }
    }
}

fn load_matrix(path: &Path) -> Result<(HeptaMatrix, Option<Vec<f64>>), Failure> {
    if is_matrix_market(path) {
        Ok((read_matrix_market(path)?, None))
    } else {
        let f = read_banded(path)?;
        Ok((f.matrix, f.rhs))
    }
}

fn load_rhs(explicit: Option<&Path>, embedded: Option<Vec<f64>>) -> Result<Vec<f64>, Failure> {
    match (explicit, embedded) {
        (Some(p), _) => Ok(read_vector(p)?),
        (None, Some(y)) => Ok(y),
        (None, None) => Err(Failure::usage(
            "no right-hand side: pass --rhs or use a banded file that stores `y`",
        )),
    }
}

fn print_json(o: &mut String, value: &serde_json::Value) {
    let _ = writeln!(
        o,
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn cmd_solve(
    o: &mut String,
    input: &Path,
    rhs: Option<&Path>,
    eps: f64,
    out: Option<&Path>,
    as_json: bool,
) -> Result<u8, Failure> {
    let (m, embedded) = load_matrix(input)?;
    let y = load_rhs(rhs, embedded)?;
    let report = solve(&m, &y, eps)?;
    let value = json!({
        "format": "hepta-solution",
        "n": m.n(),
        "x": report.x,
        "det": report.det,
        "residual_inf": report.residual_inf,
        "used_symbolic": report.used_symbolic,
        "symb_index": report.symb_index,
        "eps": report.eps_used,
    });
    if let Some(path) = out {
        if is_matrix_market(path) {
            write_vector(path, &report.x)?;
        } else {
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            std::fs::write(path, text).map_err(|source| IoError::Io {
                path: path.to_path_buf(),
                source,
            })?;
        }
    }
    if as_json {
        print_json(o, &value);
    } else {
        let _ = writeln!(o, "n             {}", m.n());
        let _ = writeln!(o, "det           {:e}", report.det);
        let _ = writeln!(o, "residual_inf  {:e}", report.residual_inf);
        match report.symb_index {
            Some(i) => {
                let _ = writeln!(o, "symbolic      yes (pivot {i})");
            }
            None => {
                let _ = writeln!(o, "symbolic      no");
            }
        }
        let _ = writeln!(o, "eps           {:e}", report.eps_used);
        if out.is_none() {
            let _ = writeln!(o, "x");
            for v in &report.x {
                let _ = writeln!(o, "  {v:e}");
            }
        }
    }
    Ok(0)
}

fn cmd_det(o: &mut String, input: &Path, eps: f64, as_json: bool) -> Result<u8, Failure> {
    let (m, _) = load_matrix(input)?;
    let det = determinant(&m, eps)?;
    if as_json {
        print_json(o, &json!({ "det": det, "eps": eps }));
    } else {
        let _ = writeln!(o, "{det}");
    }
    Ok(0)
}

fn cmd_gen(
    family: &FamilyArgs,
    n: usize,
    seed: u64,
    rhs_ones: bool,
    out: &Path,
) -> Result<u8, Failure> {
    let spec = GenSpec {
        n,
        seed,
        family: family.family()?,
    };
    let g = generate(&spec)?;
    if is_matrix_market(out) {
        if rhs_ones {
            return Err(Failure::usage("--rhs-ones needs banded JSON output"));
        }
        write_matrix_market(out, &g.matrix)?;
        return Ok(0);
    }
    let rhs = if rhs_ones {
        Some(g.matrix.matvec(&vec![1.0; n]).map_err(SolveError::from)?)
    } else {
        None
    };
    write_banded(
        out,
        &BandedFile {
            matrix: g.matrix,
            rhs,
            gen: Some(spec),
            certificate: g.certificate,
        },
    )?;
    Ok(0)
}

fn cmd_bench(
    o: &mut String,
    family: &FamilyArgs,
    sizes: &[usize],
    repeat: usize,
    seed: u64,
    eps: f64,
    as_json: bool,
) -> Result<u8, Failure> {
    let records = run_bench(&family.family()?, sizes, repeat, eps, seed)?;
    if as_json {
        print_json(o, &serde_json::to_value(&records).expect("serializable"));
        return Ok(0);
    }
    let _ = writeln!(
        o,
        "{:<20} {:>10} {:>12} {:>7} {:>12} {:>9} {:>8}",
        "family", "n", "seconds", "repeat", "residual", "symbolic", "eps"
    );
    for r in &records {
        let _ = writeln!(
            o,
            "{:<20} {:>10} {:>12.6} {:>7} {:>12.3e} {:>9} {:>8.1e}",
            r.family, r.n, r.seconds, r.repeat, r.residual_inf, r.used_symbolic, r.eps
        );
    }
    Ok(0)
}

fn cmd_check(
    o: &mut String,
    input: &Path,
    rhs: Option<&Path>,
    x: &Path,
    tol: Option<f64>,
    as_json: bool,
) -> Result<u8, Failure> {
    let (m, embedded) = load_matrix(input)?;
    let y = load_rhs(rhs, embedded)?;
    let x = read_vector(x)?;
    if y.len() != m.n() || x.len() != m.n() {
        return Err(Failure {
            code: EXIT_IO,
            msg: format!(
                "sizes disagree: n = {}, |y| = {}, |x| = {}",
                m.n(),
                y.len(),
                x.len()
            ),
        });
    }
    let tol = tol.unwrap_or(1e-7 * (1.0 + inf_norm(&y)));
    let ax = m.matvec(&x).map_err(SolveError::from)?;
    let r: Vec<f64> = ax.iter().zip(&y).map(|(a, b)| a - b).collect();
    let residual = inf_norm(&r);
    let pass = residual <= tol;
    if as_json {
        print_json(
            o,
            &json!({ "residual_inf": residual, "tol": tol, "pass": pass }),
        );
    } else {
        let _ = writeln!(o, "residual_inf  {residual:e}");
        let _ = writeln!(o, "tol           {tol:e}");
        let _ = writeln!(o, "{}", if pass { "pass" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { EXIT_CHECK_FAILED })
}

fn run(o: &mut String, cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve {
            input,
            rhs,
            eps,
            out,
            json,
        } => cmd_solve(o, &input, rhs.as_deref(), eps, out.as_deref(), json),
        Command::Det { input, eps, json } => cmd_det(o, &input, eps, json),
        Command::Gen {
            family,
            n,
            seed,
            rhs_ones,
            out,
        } => cmd_gen(&family, n, seed, rhs_ones, &out),
        Command::Bench {
            family,
            sizes,
            repeat,
            seed,
            eps,
            json,
        } => cmd_bench(o, &family, &sizes, repeat, seed, eps, json),
        Command::Check {
            input,
            rhs,
            x,
            tol,
            json,
        } => cmd_check(o, &input, rhs.as_deref(), &x, tol, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let mut out = String::new();
    let result = run(&mut out, cli);
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("heptasweep: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
