//! Timing harness for the sweep.

use serde::Serialize;
use std::time::Instant;
use thiserror::Error;

use crate::generators::{generate, Family, GenError, GenSpec};
use crate::sweep::{solve, SolveError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("repeat count must be at least 1")]
    NoRepeats,
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// One row of benchmark output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    /// Median wall time of one full solve.
    pub seconds: f64,
    pub repeat: usize,
    pub residual_inf: f64,
    pub used_symbolic: bool,
    pub eps: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len() / 2;
    if v.len() % 2 == 1 {
        v[k]
    } else {
        0.5 * (v[k - 1] + v[k])
    }
}

/// Times [`solve`] on one generated matrix per size, with the
/// right-hand side `y = A·1`.
pub fn run_bench(
    family: &Family,
    sizes: &[usize],
    repeat: usize,
    eps: f64,
    seed: u64,
) -> Result<Vec<BenchRecord>, BenchError> {
    if repeat == 0 {
        return Err(BenchError::NoRepeats);
    }
    let mut out = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let spec = GenSpec {
            n,
            seed,
            family: family.clone(),
        };
        let m = generate(&spec)?.matrix;
        let y = m.matvec(&vec![1.0; n]).map_err(SolveError::from)?;
        let mut times = Vec::with_capacity(repeat);
        let mut last = None;
        for _ in 0..repeat {
            let t = Instant::now();
            let report = solve(&m, &y, eps)?;
            times.push(t.elapsed().as_secs_f64());
            last = Some(report);
        }
        let report = last.expect("repeat >= 1");
        out.push(BenchRecord {
            family: family.name().to_string(),
            n,
            seconds: median(times),
            repeat,
            residual_inf: report.residual_inf,
            used_symbolic: report.used_symbolic,
            eps,
        });
    }
    Ok(out)
}
