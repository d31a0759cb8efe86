use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use super::ScalarError;

/// Exact rational over arbitrary-precision integers, always in lowest terms
/// with a positive denominator.
pub type ExactRational = BigRational;

/// Exact conversion of a finite binary float. Every finite `f64` is a
/// dyadic rational, so no rounding happens.
pub fn promote(x: f64) -> Result<ExactRational, ScalarError> {
    BigRational::from_float(x).ok_or(ScalarError::NonFinite(x))
}

/// Nearest `f64` to an exact rational. Values beyond the float range
/// saturate to ±∞.
pub fn to_f64(q: &ExactRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub(crate) fn is_one(q: &ExactRational) -> bool {
    q.is_one()
}

pub(crate) fn from_int(v: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Writes `p` or `p/q`.
pub(crate) struct RationalDisplay<'a>(pub &'a ExactRational);

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
