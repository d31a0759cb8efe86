//! LU sweep for heptadiagonal systems with symbolic zero-pivot recovery.
//!
//! The factorization `A = LU` and the forward substitution `Lz = y` happen
//! together in one downward pass that produces, for each row `i`,
//!
//! * the pivot `μᵢ`,
//! * the multipliers `δᵢ` and `ξᵢ` (sub-diagonal entries of `L`),
//! * the normalized super-diagonal entries `αᵢ`, `βᵢ`, `γᵢ` of `U`,
//! * the forward value `zᵢ`.
//!
//! The upward pass then computes `xᵢ = zᵢ − αᵢx_{i+1} − βᵢx_{i+2} − γᵢx_{i+3}`.
//!
//! When a pivot's magnitude falls below the threshold `eps`, it is replaced
//! by the symbol `s` and a latch is set. From then on no pivot is compared
//! against `eps` again, and every quantity depending on `s` is carried as
//! an exact rational function. At the end each solution component is
//! cancelled to lowest terms and evaluated at `s = 0`. Only one symbol is
//! ever introduced.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{inf_norm, HeptaMatrix, MatrixError, MIN_SWEEP_N};
use crate::oracle::{self, ExactMatrix, OracleError};
use crate::symbolic::{promote, to_f64, RationalFn, Scalar, ScalarError, ScalarGuard};

/// Default absolute pivot threshold.
pub const DEFAULT_EPS: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("pivot threshold must be positive and finite, got {0}")]
    InvalidEps(f64),
    #[error("right-hand side has a non-finite entry at index {0}")]
    NonFiniteRhs(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("symbolic breakdown at row {row}: pivot is identically zero after the symbol was introduced")]
    SymbolicBreakdown { row: usize },
    #[error("arithmetic failure at row {row}: {source}")]
    Arithmetic { row: usize, source: ScalarError },
}

/// Every quantity produced by the downward pass.
///
/// Lengths follow the band truncation: `alpha` has N−1 entries, `beta`
/// N−2, `gamma` N−3; `delta`, `xi`, `mu` and `z` have N. `delta[0]` and
/// `xi[0..3]` are always exactly zero.
#[derive(Debug, Clone)]
pub struct SweepState {
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub gamma: Vec<Scalar>,
    pub delta: Vec<Scalar>,
    pub xi: Vec<Scalar>,
    pub mu: Vec<Scalar>,
    pub z: Vec<Scalar>,
    /// Set once a pivot has been replaced by the symbol.
    pub flag: bool,
    /// Row whose pivot became the symbol.
    pub symb_index: Option<usize>,
    /// Number of pivots compared against `eps`.
    pub comparisons: usize,
    pub eps: f64,
}

impl SweepState {
    pub fn n(&self) -> usize {
        self.mu.len()
    }
}

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub x: Vec<f64>,
    pub det: f64,
    pub residual_inf: f64,
    pub used_symbolic: bool,
    pub symb_index: Option<usize>,
    pub eps_used: f64,
}

#[inline]
fn num(x: f64) -> Scalar {
    Scalar::Numeric(x)
}

struct Sweep<'a> {
    m: &'a HeptaMatrix,
    y: &'a [f64],
    guard: ScalarGuard,
    s: SweepState,
}

impl Sweep<'_> {
    #[inline]
    fn admit(&self, row: usize, v: Scalar) -> Result<Scalar, SolveError> {
        self.guard
            .admit(v)
            .map_err(|source| SolveError::Arithmetic { row, source })
    }

    /// Stores `μᵢ`, substituting the symbol if it is the first pivot below
    /// the threshold.
    fn pivot(&mut self, i: usize, mu: Scalar) -> Result<(), SolveError> {
        let mu = self.admit(i, mu)?;
        let mu = if self.s.flag {
            if mu.is_exact_zero() {
                return Err(SolveError::SymbolicBreakdown { row: i });
            }
            mu
        } else {
            self.s.comparisons += 1;
            let small = mu
                .is_numerically_zero(self.s.eps)
                .map_err(|source| SolveError::Arithmetic { row: i, source })?;
            if small {
                self.s.flag = true;
                self.s.symb_index = Some(i);
                Scalar::symbol()
            } else {
                mu
            }
        };
        self.s.mu[i] = mu;
        Ok(())
    }

    /// `numerator / μᵢ`.
    #[inline]
    fn over_mu(&self, i: usize, numerator: Scalar, op: &'static str) -> Result<Scalar, SolveError> {
        let q = numerator
            .checked_div(&self.s.mu[i], op)
            .map_err(|source| match source {
                ScalarError::ZeroDivide { .. } => SolveError::SymbolicBreakdown { row: i },
                source => SolveError::Arithmetic { row: i, source },
            })?;
        self.admit(i, q)
    }

    fn first_rows(&mut self) -> Result<(), SolveError> {
        let m = self.m;

        // (0)
        self.pivot(0, num(m.d(0)))?;
        self.s.alpha[0] = self.over_mu(0, num(m.a(0)), "alpha")?;
        self.s.beta[0] = self.over_mu(0, num(m.b(0)), "beta")?;
        self.s.gamma[0] = self.over_mu(0, num(m.c(0)), "gamma")?;
        // δ₀ = 0 is the initial value.

        // (1)
        let delta1 = num(m.a_star(1));
        let mu1 = num(m.d(1)) - &self.s.alpha[0] * &delta1;
        self.pivot(1, mu1)?;
        let a1 = num(m.a(1)) - &self.s.beta[0] * &delta1;
        self.s.alpha[1] = self.over_mu(1, a1, "alpha")?;
        let b1 = num(m.b(1)) - &self.s.gamma[0] * &delta1;
        self.s.beta[1] = self.over_mu(1, b1, "beta")?;
        self.s.gamma[1] = self.over_mu(1, num(m.c(1)), "gamma")?;
        self.s.delta[1] = delta1;

        // (2)
        let b_star2 = num(m.b_star(2));
        let delta2 = self.admit(2, num(m.a_star(2)) - &self.s.alpha[0] * &b_star2)?;
        let mu2 = num(m.d(2)) - &self.s.alpha[1] * &delta2 - &self.s.beta[0] * &b_star2;
        self.pivot(2, mu2)?;
        let a2 = num(m.a(2)) - &self.s.beta[1] * &delta2 - &self.s.gamma[0] * &b_star2;
        self.s.alpha[2] = self.over_mu(2, a2, "alpha")?;
        let b2 = num(m.b(2)) - &self.s.gamma[1] * &delta2;
        self.s.beta[2] = self.over_mu(2, b2, "beta")?;
        self.s.gamma[2] = self.over_mu(2, num(m.c(2)), "gamma")?;

        let y = self.y;
        self.s.z[0] = self.over_mu(0, num(y[0]), "z")?;
        let z1 = num(y[1]) - &self.s.delta[1] * &self.s.z[0];
        self.s.z[1] = self.over_mu(1, z1, "z")?;
        let z2 = num(y[2]) - &delta2 * &self.s.z[1] - &b_star2 * &self.s.z[0];
        self.s.z[2] = self.over_mu(2, z2, "z")?;
        self.s.delta[2] = delta2;
        // ξ₀ = ξ₁ = ξ₂ = 0 are the initial values.
        Ok(())
    }

    /// Row `i ≥ 3`. `coefficients` is how many of αᵢ, βᵢ, γᵢ exist for this
    /// row: 3 in the interior, then 2, 1, 0 for rows N−3, N−2, N−1.
    fn row(&mut self, i: usize, coefficients: usize) -> Result<(), SolveError> {
        let m = self.m;
        let s = &self.s;
        let b_star = num(m.b_star(i));
        let c_star = num(m.c_star(i));

        let xi = self.admit(i, &b_star - &s.alpha[i - 3] * &c_star)?;
        // Same as a*ᵢ − α_{i−2}b*ᵢ − c*ᵢ(β_{i−3} − α_{i−3}α_{i−2}), but built
        // on the stored ξᵢ so that a rounded ξᵢ is never multiplied by a pole
        // in α_{i−2} without the matching term in μᵢ.
        let delta = num(m.a_star(i)) - &s.alpha[i - 2] * &xi - &c_star * &s.beta[i - 3];
        let delta = self.admit(i, delta)?;
        let mu = num(m.d(i))
            - &s.alpha[i - 1] * &delta
            - &s.beta[i - 2] * &xi
            - &s.gamma[i - 3] * &c_star;
        self.pivot(i, mu)?;

        if coefficients >= 1 {
            let s = &self.s;
            let a = num(m.a(i)) - &s.beta[i - 1] * &delta - &s.gamma[i - 2] * &xi;
            self.s.alpha[i] = self.over_mu(i, a, "alpha")?;
        }
        if coefficients >= 2 {
            let b = num(m.b(i)) - &self.s.gamma[i - 1] * &delta;
            self.s.beta[i] = self.over_mu(i, b, "beta")?;
        }
        if coefficients >= 3 {
            self.s.gamma[i] = self.over_mu(i, num(m.c(i)), "gamma")?;
        }

        let s = &self.s;
        let z = num(self.y[i]) - &delta * &s.z[i - 1] - &xi * &s.z[i - 2] - &c_star * &s.z[i - 3];
        self.s.z[i] = self.over_mu(i, z, "z")?;
        self.s.delta[i] = delta;
        self.s.xi[i] = xi;
        Ok(())
    }
}

fn check_inputs(m: &HeptaMatrix, y: &[f64], eps: f64) -> Result<(), SolveError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(SolveError::InvalidEps(eps));
    }
    if y.len() != m.n() {
        return Err(MatrixError::LengthMismatch {
            expected: m.n(),
            found: y.len(),
        }
        .into());
    }
    if let Some(i) = y.iter().position(|v| !v.is_finite()) {
        return Err(SolveError::NonFiniteRhs(i));
    }
    Ok(())
}

/// Downward pass: factorization and forward substitution.
pub fn forward_sweep(m: &HeptaMatrix, y: &[f64], eps: f64) -> Result<SweepState, SolveError> {
    m.validate()?;
    check_inputs(m, y, eps)?;
    let n = m.n();
    let zeros = |len: usize| vec![Scalar::ZERO; len];
    let mut sw = Sweep {
        m,
        y,
        guard: ScalarGuard::for_size(n),
        s: SweepState {
            alpha: zeros(n - 1),
            beta: zeros(n - 2),
            gamma: zeros(n - 3),
            delta: zeros(n),
            xi: zeros(n),
            mu: zeros(n),
            z: zeros(n),
            flag: false,
            symb_index: None,
            comparisons: 0,
            eps,
        },
    };

    sw.first_rows()?;
    for i in 3..=n - 4 {
        sw.row(i, 3)?;
    }
    sw.row(n - 3, 2)?;
    sw.row(n - 2, 1)?;
    sw.row(n - 1, 0)?;
    Ok(sw.s)
}

/// Upward pass over a completed [`SweepState`].
pub fn back_substitute(state: &SweepState) -> Result<Vec<Scalar>, SolveError> {
    let n = state.n();
    let guard = ScalarGuard::for_size(n);
    let admit = |row: usize, v: Scalar| {
        guard
            .admit(v)
            .map_err(|source| SolveError::Arithmetic { row, source })
    };
    let (alpha, beta, gamma, z) = (&state.alpha, &state.beta, &state.gamma, &state.z);
    let mut x = vec![Scalar::ZERO; n];
    x[n - 1] = z[n - 1].clone();
    x[n - 2] = admit(n - 2, &z[n - 2] - &alpha[n - 2] * &x[n - 1])?;
    x[n - 3] = admit(
        n - 3,
        &z[n - 3] - &alpha[n - 3] * &x[n - 2] - &beta[n - 3] * &x[n - 1],
    )?;
    for j in (0..n - 3).rev() {
        let v = &z[j] - &alpha[j] * &x[j + 1] - &beta[j] * &x[j + 2] - &gamma[j] * &x[j + 3];
        x[j] = admit(j, v)?;
    }
    Ok(x)
}

/// Evaluates every component at `s = 0`. Components are already in lowest
/// terms, so a remaining pole means the matrix is singular.
pub fn finalize(x: &[Scalar]) -> Result<Vec<f64>, SolveError> {
    x.iter()
        .enumerate()
        .map(|(row, v)| {
            v.substitute_zero().map_err(|source| match source {
                ScalarError::PoleAtZero { .. } => SolveError::Singular,
                source => SolveError::Arithmetic { row, source },
            })
        })
        .collect()
}

/// Product of float factors kept as `mantissa · 2^exponent` so that long
/// products neither overflow nor underflow before the final rounding.
struct ScaledProduct {
    mantissa: f64,
    exponent: i64,
}

/// Splits a finite nonzero `v` into `m · 2^e` with `0.5 ≤ |m| < 1`.
fn frexp(v: f64) -> (f64, i64) {
    if v == 0.0 || !v.is_finite() {
        return (v, 0);
    }
    let (v, bias) = if v.abs() < f64::MIN_POSITIVE {
        (v * 2f64.powi(64), -64)
    } else {
        (v, 0)
    };
    let bits = v.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64 - 1022;
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, e + bias)
}

impl ScaledProduct {
    fn new() -> Self {
        ScaledProduct {
            mantissa: 1.0,
            exponent: 0,
        }
    }

    fn mul(&mut self, v: f64) {
        let (m, e) = frexp(v);
        let (m, e2) = frexp(self.mantissa * m);
        self.mantissa = m;
        self.exponent += e + e2;
    }

    fn value(&self) -> f64 {
        let mut v = self.mantissa;
        let mut e = self.exponent;
        while e != 0 && v != 0.0 && v.is_finite() {
            let step = e.clamp(-1000, 1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        v
    }
}

/// Determinant of a completed sweep, `∏ μᵢ` evaluated at `s = 0` after
/// cancellation. Returns the value and whether it is exactly zero (the
/// float value alone cannot tell an underflow from a true zero).
pub fn sweep_determinant(state: &SweepState) -> Result<(f64, bool), SolveError> {
    let mut numeric = ScaledProduct::new();
    let mut symbolic = RationalFn::constant(num_traits::One::one());
    for (i, mu) in state.mu.iter().enumerate() {
        match mu {
            Scalar::Numeric(v) => numeric.mul(*v),
            Scalar::Symbolic(r) => {
                symbolic = symbolic.mul(r);
                ScalarGuard::for_size(state.n())
                    .admit(Scalar::symbolic(symbolic.clone()))
                    .map_err(|source| SolveError::Arithmetic { row: i, source })?;
            }
        }
    }
    let at_zero = symbolic
        .substitute_zero()
        .map_err(|source| SolveError::Arithmetic {
            row: state.n() - 1,
            source,
        })?;
    let is_zero = numeric.mantissa == 0.0 || num_traits::Zero::is_zero(&at_zero);
    numeric.mul(to_f64(&at_zero));
    Ok((numeric.value(), is_zero))
}

/// `det(A)` as the product of the sweep pivots.
pub fn determinant(m: &HeptaMatrix, eps: f64) -> Result<f64, SolveError> {
    if m.n() < MIN_SWEEP_N {
        m.check_shape()?;
        let det = oracle::exact_determinant(&ExactMatrix::from_hepta(m));
        return Ok(to_f64(&det));
    }
    let state = forward_sweep(m, &vec![0.0; m.n()], eps)?;
    Ok(sweep_determinant(&state)?.0)
}

fn residual_inf(m: &HeptaMatrix, x: &[f64], y: &[f64]) -> Result<f64, SolveError> {
    let ax = m.matvec(x)?;
    let r: Vec<f64> = ax.iter().zip(y).map(|(a, b)| a - b).collect();
    Ok(inf_norm(&r))
}

fn solve_small(m: &HeptaMatrix, y: &[f64], eps: f64) -> Result<SolveReport, SolveError> {
    let a = ExactMatrix::from_hepta(m);
    let det = oracle::exact_determinant(&a);
    if num_traits::Zero::is_zero(&det) {
        return Err(SolveError::Singular);
    }
    let yq = y
        .iter()
        .enumerate()
        .map(|(i, &v)| promote(v).map_err(|_| SolveError::NonFiniteRhs(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let xq = oracle::exact_solve(&a, &yq).map_err(|e| match e {
        OracleError::Singular { .. } => SolveError::Singular,
        OracleError::Dimension { expected, found } => {
            MatrixError::LengthMismatch { expected, found }.into()
        }
        OracleError::Scalar(source) => SolveError::Arithmetic { row: 0, source },
    })?;
    let x: Vec<f64> = xq.iter().map(to_f64).collect();
    Ok(SolveReport {
        residual_inf: residual_inf(m, &x, y)?,
        x,
        det: to_f64(&det),
        used_symbolic: false,
        symb_index: None,
        eps_used: eps,
    })
}

/// Solves `A·x = y`.
///
/// Systems with N < 7 are handed to the exact dense solver. Otherwise the
/// sweep runs first and the matrix is declared singular when the pivot
/// product, after cancellation and `s = 0`, is exactly zero.
pub fn solve(m: &HeptaMatrix, y: &[f64], eps: f64) -> Result<SolveReport, SolveError> {
    m.check_shape()?;
    check_inputs(m, y, eps)?;
    if m.n() < MIN_SWEEP_N {
        return solve_small(m, y, eps);
    }
    let state = forward_sweep(m, y, eps)?;
    let (det, det_is_zero) = sweep_determinant(&state)?;
    if det_is_zero {
        return Err(SolveError::Singular);
    }
    let x = finalize(&back_substitute(&state)?)?;
    Ok(SolveReport {
        residual_inf: residual_inf(m, &x, y)?,
        x,
        det,
        used_symbolic: state.flag,
        symb_index: state.symb_index,
        eps_used: eps,
    })
}
