//! Test-matrix families.
//!
//! * `random_dd`: random band, strictly diagonally dominant.
//! * `fd6_laplacian`: the 7-point sixth-order second-derivative stencil,
//!   truncated at the boundaries.
//! * `toeplitz`: a constant user-supplied stencil row.
//! * `planted_zero_minors`: `random_dd` with selected leading principal
//!   minors forced to zero, which defeats elimination without pivoting
//!   while keeping the matrix nonsingular.
//!
//! The FD6 family stands in for pressure-equation style applications. Real
//! 3D discretizations produce seven diagonals at offsets ±1, ±nx, ±nx·ny;
//! the sweep handles the contiguous band ±1, ±2, ±3, so a one-dimensional
//! high-order stencil is the natural contiguous analogue.
//!
//! All randomness comes from [`SplitMix64`], whose output is fully
//! specified by its seed and reproducible in any language.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{diagonal_len, HeptaMatrix, MatrixError, MIN_SWEEP_N};
use crate::oracle::{self, ExactMatrix};
use crate::symbolic::{promote, to_f64, ExactRational};

/// Default dominance factor for the random families.
pub const DEFAULT_DOMINANCE: f64 = 1.5;

/// Reseeding attempts before `planted_zero_minors` gives up.
pub const PLANT_RETRIES: u32 = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("size {n} is below the minimum of {MIN_SWEEP_N}")]
    TooSmall { n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("could not plant the requested zero minors after {0} attempts")]
    ExhaustedRetries(u32),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// SplitMix64 (Steele, Lea, Flood 2014).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[−1, 1)`.
    pub fn next_signed(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Family and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    RandomDd {
        dominance: f64,
    },
    Fd6Laplacian {
        h: f64,
    },
    /// `row` lists the entries at offsets −3 … +3.
    Toeplitz {
        row: [f64; 7],
    },
    PlantedZeroMinors {
        dominance: f64,
        zero_at: Vec<usize>,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::RandomDd { .. } => "random_dd",
            Family::Fd6Laplacian { .. } => "fd6_laplacian",
            Family::Toeplitz { .. } => "toeplitz",
            Family::PlantedZeroMinors { .. } => "planted_zero_minors",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub family: Family,
}

/// Oracle evidence attached to a planted matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Exact leading principal minors `M₀ … M_{n−1}` of the returned matrix.
    pub minors: Vec<ExactRational>,
    /// Seed actually used after any reseeding.
    pub seed_used: u64,
}

impl Certificate {
    pub fn determinant(&self) -> &ExactRational {
        self.minors.last().expect("at least one minor")
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub matrix: HeptaMatrix,
    pub certificate: Option<Certificate>,
}

pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    let n = spec.n;
    let matrix = match &spec.family {
        Family::RandomDd { dominance } => gen_random_dd(n, spec.seed, *dominance)?,
        Family::Fd6Laplacian { h } => gen_fd6_laplacian(n, *h)?,
        Family::Toeplitz { row } => gen_toeplitz(n, row)?,
        Family::PlantedZeroMinors { dominance, zero_at } => {
            let (matrix, cert) = gen_planted_zero_minors_with(n, spec.seed, *dominance, zero_at)?;
            return Ok(Generated {
                matrix,
                certificate: Some(cert),
            });
        }
    };
    Ok(Generated {
        matrix,
        certificate: None,
    })
}

fn check_size(n: usize) -> Result<(), GenError> {
    if n < MIN_SWEEP_N {
        return Err(GenError::TooSmall { n });
    }
    Ok(())
}

/// Random band with off-diagonals uniform in `[−1, 1)`, drawn row by row
/// in column order, and `dᵢ = dominance · Σ|off-diagonals of row i|`.
pub fn gen_random_dd(n: usize, seed: u64, dominance: f64) -> Result<HeptaMatrix, GenError> {
    check_size(n)?;
    if !(dominance >= 1.05 && dominance.is_finite()) {
        return Err(GenError::InvalidParam(format!(
            "dominance must be at least 1.05, got {dominance}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut m = HeptaMatrix::from_diagonal(vec![0.0; n]);
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in i.saturating_sub(3)..(i + 4).min(n) {
            if j == i {
                continue;
            }
            let v = rng.next_signed();
            row_sum += v.abs();
            m.set(i, j, v)?;
        }
        m.set(i, i, dominance * row_sum)?;
    }
    Ok(m)
}

/// Weights of the 7-point central second-derivative stencil at offsets
/// −3 … +3, found by solving the moment system `Σₖ wₖ kᵐ = m!·[m = 2]`
/// for `m = 0 … 6` exactly. Symmetry makes the rule exact through degree 7.
pub fn fd6_stencil() -> [ExactRational; 7] {
    let q = |v: i64| ExactRational::from_integer(v.into());
    let rows: Vec<Vec<ExactRational>> = (0..7u32)
        .map(|m| (-3i64..=3).map(|k| q(k.pow(m))).collect())
        .collect();
    let rhs: Vec<ExactRational> = (0..7).map(|m| if m == 2 { q(2) } else { q(0) }).collect();
    let a = ExactMatrix::new(rows).expect("square");
    let w = oracle::exact_solve(&a, &rhs).expect("Vandermonde system on distinct nodes");
    w.try_into().expect("seven weights")
}

fn banded_toeplitz(n: usize, row: &[f64; 7]) -> Result<HeptaMatrix, GenError> {
    let diag = |k: isize| vec![row[(k + 3) as usize]; diagonal_len(n, k)];
    Ok(HeptaMatrix::new(
        diag(-3),
        diag(-2),
        diag(-1),
        diag(0),
        diag(1),
        diag(2),
        diag(3),
    )?)
}

/// FD6 second-derivative operator scaled by `1/h²`, band-truncated at the
/// boundaries.
pub fn gen_fd6_laplacian(n: usize, h: f64) -> Result<HeptaMatrix, GenError> {
    check_size(n)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(GenError::InvalidParam(format!(
            "grid spacing must be positive, got {h}"
        )));
    }
    let inv_h2 = 1.0 / (h * h);
    let w = fd6_stencil();
    let row: [f64; 7] = std::array::from_fn(|k| to_f64(&w[k]) * inv_h2);
    banded_toeplitz(n, &row)
}

/// Constant-diagonal matrix with entries `row[k]` at offset `k − 3`.
pub fn gen_toeplitz(n: usize, row: &[f64; 7]) -> Result<HeptaMatrix, GenError> {
    check_size(n)?;
    if row.iter().any(|v| !v.is_finite()) {
        return Err(GenError::InvalidParam("stencil row must be finite".into()));
    }
    banded_toeplitz(n, row)
}

/// Planted family with the default dominance.
pub fn gen_planted_zero_minors(
    n: usize,
    seed: u64,
    zero_at: &[usize],
) -> Result<(HeptaMatrix, Certificate), GenError> {
    gen_planted_zero_minors_with(n, seed, DEFAULT_DOMINANCE, zero_at)
}

/// Starts from [`gen_random_dd`] and, for each index `i` in `zero_at`
/// (ascending), sets `dᵢ := dᵢ − Mᵢ/M_{i−1}` computed exactly and rounded to
/// the nearest float. Indices must be strictly increasing, pairwise
/// non-adjacent and below `n − 1`. Rejects and reseeds when the full matrix
/// is singular or a rounded minor is not small enough.
pub fn gen_planted_zero_minors_with(
    n: usize,
    seed: u64,
    dominance: f64,
    zero_at: &[usize],
) -> Result<(HeptaMatrix, Certificate), GenError> {
    check_size(n)?;
    if zero_at.is_empty() {
        return Err(GenError::InvalidParam("zero_at must not be empty".into()));
    }
    if zero_at.windows(2).any(|w| w[1] <= w[0] + 1) {
        return Err(GenError::InvalidParam(
            "planted indices must be strictly increasing and non-adjacent".into(),
        ));
    }
    if zero_at.iter().any(|&i| i >= n - 1) {
        return Err(GenError::InvalidParam(format!(
            "planted indices must be below n − 1 = {}",
            n - 1
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut attempt_seed = seed;
    for _ in 0..PLANT_RETRIES {
        if let Some(found) = try_plant(n, attempt_seed, dominance, zero_at)? {
            return Ok(found);
        }
        attempt_seed = rng.next_u64();
    }
    Err(GenError::ExhaustedRetries(PLANT_RETRIES))
}

fn try_plant(
    n: usize,
    seed: u64,
    dominance: f64,
    zero_at: &[usize],
) -> Result<Option<(HeptaMatrix, Certificate)>, GenError> {
    let mut m = gen_random_dd(n, seed, dominance)?;
    let tiny = promote(1e-12).expect("finite");
    for &i in zero_at {
        // Only the leading (i+1)×(i+1) block matters for Mᵢ and M_{i−1}.
        let block = ExactMatrix::from_hepta(&m).leading(i + 1);
        let minors = oracle::leading_minors(&block);
        let prev = if i == 0 {
            ExactRational::from_integer(1.into())
        } else {
            minors[i - 1].clone()
        };
        if prev.is_zero() {
            return Ok(None);
        }
        let target = promote(m.d(i)).expect("finite") - &minors[i] / &prev;
        m.set(i, i, to_f64(&target))?;
        let block = ExactMatrix::from_hepta(&m).leading(i + 1);
        let mi = oracle::exact_determinant(&block);
        if mi.abs() >= &tiny * prev.abs() {
            return Ok(None);
        }
    }
    let minors = oracle::leading_minors(&ExactMatrix::from_hepta(&m));
    if minors.last().is_some_and(|d| d.is_zero()) {
        return Ok(None);
    }
    Ok(Some((
        m,
        Certificate {
            minors,
            seed_used: seed,
        },
    )))
}

/// Ways of building an exactly singular matrix whose singularity the sweep
/// sees without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularKind {
    /// Row `at` is entirely zero.
    ZeroRow,
    /// Column `at` is entirely zero.
    ZeroColumn,
    /// Rows `at` and `at + 1` are equal and decoupled from the rows above;
    /// `d_at` is a power of two so the elimination step is exact.
    DuplicateRows,
}

/// Random diagonally dominant matrix made singular at index `at`.
pub fn gen_singular(
    n: usize,
    seed: u64,
    kind: SingularKind,
    at: usize,
) -> Result<HeptaMatrix, GenError> {
    let mut m = gen_random_dd(n, seed, DEFAULT_DOMINANCE)?;
    let band = |i: usize| i.saturating_sub(3)..(i + 4).min(n);
    match kind {
        SingularKind::ZeroRow => {
            if at >= n {
                return Err(GenError::InvalidParam(format!("row {at} out of range")));
            }
            for j in band(at) {
                m.set(at, j, 0.0)?;
            }
        }
        SingularKind::ZeroColumn => {
            if at >= n {
                return Err(GenError::InvalidParam(format!("column {at} out of range")));
            }
            for i in band(at) {
                m.set(i, at, 0.0)?;
            }
        }
        SingularKind::DuplicateRows => {
            if at + 1 >= n {
                return Err(GenError::InvalidParam(format!(
                    "rows {at}, {} out of range",
                    at + 1
                )));
            }
            let mut rng = SplitMix64::new(seed ^ 0xD1B5_4A32_D192_ED03);
            // Decouple rows above from columns ≥ at.
            for i in at.saturating_sub(3)..at {
                for j in at..(i + 4).min(n) {
                    m.set(i, j, 0.0)?;
                }
            }
            let exponent = (rng.next_u64() % 5) as i32 - 2;
            let sign = if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
            let mut row = vec![sign * 2f64.powi(exponent)];
            for _ in 1..4 {
                row.push(rng.next_signed());
            }
            for pair in [at, at + 1] {
                for j in band(pair) {
                    m.set(pair, j, 0.0)?;
                }
            }
            for (k, &v) in row.iter().enumerate() {
                let j = at + k;
                if j < n {
                    m.set(at, j, v)?;
                    m.set(at + 1, j, v)?;
                }
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs for seed 1234567.
        let mut r = SplitMix64::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
        assert_eq!(r.next_u64(), 9817491932198370423);
    }

    #[test]
    fn random_dd_is_strictly_dominant() {
        let m = gen_random_dd(7, 1, 1.5).unwrap();
        for i in 0..7 {
            let off: f64 = m.row_off_diagonal(i).map(f64::abs).sum();
            assert!(m.d(i).abs() > off);
        }
    }

    #[test]
    fn random_dd_is_deterministic() {
        let a = gen_random_dd(20, 99, 2.0).unwrap();
        let b = gen_random_dd(20, 99, 2.0).unwrap();
        for (x, y) in a.diagonals().iter().zip(b.diagonals()) {
            let xb: Vec<u64> = x.iter().map(|v| v.to_bits()).collect();
            let yb: Vec<u64> = y.iter().map(|v| v.to_bits()).collect();
            assert_eq!(xb, yb);
        }
        assert_ne!(a, gen_random_dd(20, 100, 2.0).unwrap());
    }

    #[test]
    fn random_dd_rejects_weak_dominance() {
        assert!(gen_random_dd(7, 1, 1.0).is_err());
        assert!(gen_random_dd(6, 1, 1.5).is_err());
    }

    #[test]
    fn fd6_stencil_moments() {
        let w = fd6_stencil();
        let q = |v: i64| ExactRational::from_integer(v.into());
        let sum = w.iter().fold(q(0), |acc, x| acc + x);
        assert!(sum.is_zero());
        for k in 0..3 {
            assert_eq!(w[k], w[6 - k]);
        }
        // Applied to x² at any centre the stencil gives exactly 2.
        for centre in [-5i64, 0, 3, 11] {
            let v = (-3i64..=3)
                .zip(&w)
                .fold(q(0), |acc, (k, wk)| acc + wk * q((centre + k).pow(2)));
            assert_eq!(v, q(2));
        }
        // Odd moments and degree 3..7 moments vanish.
        for m in [1u32, 3, 4, 5, 6, 7] {
            let v = (-3i64..=3)
                .zip(&w)
                .fold(q(0), |acc, (k, wk)| acc + wk * q(k.pow(m)));
            assert!(v.is_zero(), "moment {m}");
        }
    }

    #[test]
    fn fd6_matrix_layout() {
        let m = gen_fd6_laplacian(9, 0.5).unwrap();
        let w = fd6_stencil();
        for (k, wk) in w.iter().enumerate() {
            let expected = to_f64(wk) * 4.0;
            assert_eq!(m.get(4, 4 + k - 3), expected);
        }
        assert!(gen_fd6_laplacian(9, 0.0).is_err());
    }

    #[test]
    fn toeplitz_layout() {
        let row = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
        let m = gen_toeplitz(8, &row).unwrap();
        assert_eq!(m.get(5, 2), 1.0);
        assert_eq!(m.get(5, 5), 4.0);
        assert_eq!(m.get(0, 3), 7.0);
    }

    #[test]
    fn planted_zero_at_first_row() {
        let (m, cert) = gen_planted_zero_minors(7, 3, &[0]).unwrap();
        assert_eq!(m.d(0), 0.0);
        assert!(cert.minors[0].is_zero());
        assert!(!cert.determinant().is_zero());
    }

    #[test]
    fn planted_minors_are_tiny() {
        let (_, cert) = gen_planted_zero_minors(10, 5, &[2]).unwrap();
        let bound = promote(1e-12).unwrap() * cert.minors[1].abs();
        assert!(cert.minors[2].abs() < bound);
        assert!(!cert.determinant().is_zero());
    }

    #[test]
    fn planted_rejects_bad_indices() {
        assert!(gen_planted_zero_minors(10, 1, &[2, 3]).is_err());
        assert!(gen_planted_zero_minors(10, 1, &[4, 2]).is_err());
        assert!(gen_planted_zero_minors(10, 1, &[9]).is_err());
        assert!(gen_planted_zero_minors(10, 1, &[]).is_err());
    }

    #[test]
    fn singular_kinds_have_zero_determinant() {
        for kind in [
            SingularKind::ZeroRow,
            SingularKind::ZeroColumn,
            SingularKind::DuplicateRows,
        ] {
            for at in [0, 3, 8] {
                let m = gen_singular(10, 11, kind, at).unwrap();
                let det = oracle::exact_determinant(&ExactMatrix::from_hepta(&m));
                assert!(det.is_zero(), "{kind:?} at {at}");
            }
        }
    }

    #[test]
    fn gen_spec_serializes_flat() {
        let spec = GenSpec {
            n: 12,
            seed: 8,
            family: Family::PlantedZeroMinors {
                dominance: 1.5,
                zero_at: vec![1, 4],
            },
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"family\":\"planted_zero_minors\""));
        let back: GenSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
