//! Values that may carry the single pivot symbol `s`.
//!
//! A sweep runs in plain floating point until a pivot falls below the
//! threshold. That pivot is replaced by `s`, and every quantity depending on
//! it becomes a rational function in `s` with exact rational coefficients.
//! Common factors are cancelled after every operation, so evaluating at
//! `s = 0` at the end only fails on a genuine pole.

mod poly;
mod ratfn;
mod rational;
mod scalar;

pub use poly::{poly_gcd, Poly};
pub use ratfn::RationalFn;
pub use rational::{promote, to_f64, ExactRational};
pub use scalar::{Scalar, ScalarGuard};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("division by exact zero while computing {op}")]
    ZeroDivide { op: &'static str },
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("cannot convert non-finite value {0} to an exact rational")]
    NonFinite(f64),
    #[error("pole of order {order} at s = 0 survives cancellation")]
    PoleAtZero { order: usize },
    #[error("contract violation: {0}")]
    ContractViolation(&'static str),
    #[error("rational function degree {degree} exceeds the cap {cap}")]
    DegreeLimit { degree: usize, cap: usize },
}
