//! Direct solver for heptadiagonal linear systems.
//!
//! A single downward sweep factors `A = LU` and forward-substitutes; an
//! upward pass recovers `x`. If a pivot vanishes the sweep replaces it by
//! a symbol `s`, finishes the computation over rational functions in `s`,
//! and evaluates at `s = 0`. The pivot product yields `det(A)`.
//!
//! ```
//! use heptasweep::{solve, HeptaMatrix, DEFAULT_EPS};
//!
//! let a = HeptaMatrix::from_diagonal(vec![2.0; 7]);
//! let report = solve(&a, &[4.0; 7], DEFAULT_EPS).unwrap();
//! assert_eq!(report.x, vec![2.0; 7]);
//! assert_eq!(report.det, 128.0);
//! ```
//!
//! Modules:
//!
//! * [`matrix`]: band storage and validation.
//! * [`symbolic`]: exact rationals, polynomials and rational functions in `s`,
//!   and the [`Scalar`] type the sweep computes with.
//! * [`sweep`]: the solver and determinant.
//! * [`oracle`]: exact dense elimination, used as the reference.
//! * [`generators`]: reproducible test matrices.
//! * [`io`]: banded JSON and Matrix Market files.
//! * [`bench`]: timing harness.

pub mod bench;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod sweep;
pub mod symbolic;

pub use generators::{generate, Family, GenSpec, SingularKind};
pub use matrix::{HeptaMatrix, MatrixError};
pub use oracle::ExactMatrix;
pub use sweep::{determinant, solve, SolveError, SolveReport, DEFAULT_EPS};
pub use symbolic::{ExactRational, RationalFn, Scalar};

// Code in the guide runs as doc-tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/storage.md")]
    mod storage {}
    #[doc = include_str!("../../../book/src/sweep.md")]
    mod sweep {}
    #[doc = include_str!("../../../book/src/symbolic.md")]
    mod symbolic {}
    #[doc = include_str!("../../../book/src/determinant.md")]
    mod determinant {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/files.md")]
    mod files {}
}
