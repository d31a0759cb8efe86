use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ratfn::RationalFn;
use super::rational::{promote, to_f64, ExactRational};
use super::ScalarError;

/// A sweep quantity: a plain float, or a rational function in the pivot
/// symbol once the zero-pivot fallback has fired.
///
/// Arithmetic between two `Numeric` values is ordinary floating point. As
/// soon as one operand is `Symbolic`, the other is promoted exactly and the
/// result is a canonical rational function. A non-finite `Numeric` operand
/// meeting a `Symbolic` one yields `Numeric(NaN)`; [`ScalarGuard::admit`]
/// turns that into an error.
///
/// A constant `Symbolic` value stays `Symbolic`; only [`Scalar::substitute_zero`]
/// collapses to a float.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Numeric(f64),
    Symbolic(Box<RationalFn>),
}

impl Scalar {
    pub const ZERO: Scalar = Scalar::Numeric(0.0);

    /// The fresh pivot symbol `s`.
    pub fn symbol() -> Scalar {
        Scalar::Symbolic(Box::new(RationalFn::symbol()))
    }

    pub fn symbolic(r: RationalFn) -> Scalar {
        Scalar::Symbolic(Box::new(r))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Scalar::Symbolic(_))
    }

    pub fn as_numeric(&self) -> Option<f64> {
        match self {
            Scalar::Numeric(x) => Some(*x),
            Scalar::Symbolic(_) => None,
        }
    }

    pub fn as_symbolic(&self) -> Option<&RationalFn> {
        match self {
            Scalar::Symbolic(r) => Some(r),
            Scalar::Numeric(_) => None,
        }
    }

    /// Exact zero: `Numeric(±0.0)` or a rational function with zero numerator.
    pub fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Numeric(x) => *x == 0.0,
            Scalar::Symbolic(r) => r.is_zero(),
        }
    }

    /// Degree of a symbolic value, zero for numerics.
    pub fn degree(&self) -> usize {
        self.as_symbolic().map_or(0, RationalFn::degree)
    }

    /// `|value| < eps`. Only defined for numerics: once the symbol is in
    /// play, comparisons against the threshold are meaningless.
    pub fn is_numerically_zero(&self, eps: f64) -> Result<bool, ScalarError> {
        match self {
            Scalar::Numeric(x) => Ok(x.abs() < eps),
            Scalar::Symbolic(_) => Err(ScalarError::ContractViolation(
                "threshold comparison on a symbolic value",
            )),
        }
    }

    /// Evaluates at `s = 0`. Numerics pass through unchanged.
    pub fn substitute_zero(&self) -> Result<f64, ScalarError> {
        match self {
            Scalar::Numeric(x) => Ok(*x),
            Scalar::Symbolic(r) => Ok(to_f64(&r.substitute_zero()?)),
        }
    }

    fn lift(x: f64) -> Option<ExactRational> {
        promote(x).ok()
    }

    fn binary(&self, rhs: &Scalar, op: Op) -> Scalar {
        match (self, rhs) {
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => Scalar::symbolic(match op {
                Op::Add => a.add(b),
                Op::Sub => a.sub(b),
                Op::Mul => a.mul(b),
            }),
            (Scalar::Numeric(a), Scalar::Symbolic(b)) => match Self::lift(*a) {
                Some(a) => Scalar::symbolic(match op {
                    Op::Add => b.add_constant(&a),
                    Op::Sub => b.neg().add_constant(&a),
                    Op::Mul => b.scale(&a),
                }),
                None => Scalar::Numeric(f64::NAN),
            },
            (Scalar::Symbolic(a), Scalar::Numeric(b)) => match Self::lift(*b) {
                Some(b) => Scalar::symbolic(match op {
                    Op::Add => a.add_constant(&b),
                    Op::Sub => a.add_constant(&-b),
                    Op::Mul => a.scale(&b),
                }),
                None => Scalar::Numeric(f64::NAN),
            },
        }
    }

    /// Division that refuses an exactly zero divisor. `op` names the
    /// quantity being computed and is carried in the error.
    pub fn checked_div(&self, rhs: &Scalar, op: &'static str) -> Result<Scalar, ScalarError> {
        if rhs.is_exact_zero() {
            return Err(ScalarError::ZeroDivide { op });
        }
        match (self, rhs) {
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Ok(Scalar::Numeric(a / b)),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => {
                a.checked_div(b, op).map(Scalar::symbolic)
            }
            (Scalar::Numeric(a), Scalar::Symbolic(b)) => match Self::lift(*a) {
                Some(a) => RationalFn::constant(a)
                    .checked_div(b, op)
                    .map(Scalar::symbolic),
                None => Ok(Scalar::Numeric(f64::NAN)),
            },
            (Scalar::Symbolic(a), Scalar::Numeric(b)) => match Self::lift(*b) {
                Some(b) => Ok(Scalar::symbolic(a.scale(&b.recip()))),
                None => Ok(Scalar::Numeric(f64::NAN)),
            },
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Numeric(x)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binary(rhs, $op)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, Op::Add);
scalar_binop!(Sub, sub, Op::Sub);
scalar_binop!(Mul, mul, Op::Mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Numeric(x) => Scalar::Numeric(-x),
            Scalar::Symbolic(r) => Scalar::symbolic(r.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Numeric(x) => write!(f, "{x}"),
            Scalar::Symbolic(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Admission check applied to every stored sweep quantity: numerics must be
/// finite and symbolic degrees must stay within the cap (2N for a system of
/// size N).
#[derive(Debug, Clone, Copy)]
pub struct ScalarGuard {
    pub degree_cap: usize,
}

impl ScalarGuard {
    pub fn for_size(n: usize) -> Self {
        ScalarGuard { degree_cap: 2 * n }
    }

    pub fn unbounded() -> Self {
        ScalarGuard {
            degree_cap: usize::MAX,
        }
    }

    #[inline]
    pub fn admit(&self, s: Scalar) -> Result<Scalar, ScalarError> {
        match &s {
            Scalar::Numeric(x) if !x.is_finite() => Err(ScalarError::NonFinite(*x)),
            Scalar::Symbolic(r) if r.degree() > self.degree_cap => Err(ScalarError::DegreeLimit {
                degree: r.degree(),
                cap: self.degree_cap,
            }),
            _ => Ok(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::{poly_gcd, Poly};
    use super::super::rational::ExactRational;
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn sym(num: &[i64], den: &[i64]) -> Scalar {
        Scalar::symbolic(RationalFn::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap())
    }

    #[test]
    fn numeric_stays_numeric() {
        assert_eq!(
            &Scalar::from(2.0) + &Scalar::from(3.0),
            Scalar::Numeric(5.0)
        );
    }

    #[test]
    fn symbol_times_inverse_cancels() {
        let x = Scalar::symbol();
        let inv = sym(&[1], &[0, 1]);
        assert_eq!(&x * &inv, sym(&[1], &[1]));
    }

    #[test]
    fn planted_factor_division() {
        let q = sym(&[-1, 0, 1], &[1])
            .checked_div(&sym(&[-1, 1], &[1]), "t")
            .unwrap();
        assert_eq!(q, sym(&[1, 1], &[1]));
    }

    #[test]
    fn zero_divide_carries_tag() {
        let err = Scalar::from(1.0)
            .checked_div(&Scalar::ZERO, "alpha")
            .unwrap_err();
        assert_eq!(err, ScalarError::ZeroDivide { op: "alpha" });
        let err = Scalar::symbol()
            .checked_div(&sym(&[0], &[1]), "mu")
            .unwrap_err();
        assert_eq!(err, ScalarError::ZeroDivide { op: "mu" });
    }

    #[test]
    fn mixed_promotes_exactly() {
        let r = &Scalar::from(0.1) + &Scalar::symbol();
        let c0 = r.as_symbolic().unwrap().num().eval_zero();
        assert_eq!(c0, promote(0.1).unwrap());
    }

    #[test]
    fn non_finite_meeting_symbol_becomes_nan() {
        let r = &Scalar::from(f64::INFINITY) * &Scalar::symbol();
        assert!(r.as_numeric().unwrap().is_nan());
        assert!(ScalarGuard::unbounded().admit(r).is_err());
    }

    #[test]
    fn substitute_zero_examples() {
        assert_eq!(sym(&[2, 3], &[1, 1]).substitute_zero().unwrap(), 2.0);
        assert_eq!(Scalar::from(7.0).substitute_zero().unwrap(), 7.0);
        let x_over_x = Scalar::symbol()
            .checked_div(&Scalar::symbol(), "t")
            .unwrap();
        assert_eq!(x_over_x.substitute_zero().unwrap(), 1.0);
        assert_eq!(
            sym(&[1], &[0, 1]).substitute_zero(),
            Err(ScalarError::PoleAtZero { order: 1 })
        );
    }

    #[test]
    fn threshold_comparison() {
        assert!(Scalar::from(1e-14).is_numerically_zero(1e-10).unwrap());
        assert!(!Scalar::from(0.5).is_numerically_zero(1e-10).unwrap());
        assert!(matches!(
            Scalar::symbol().is_numerically_zero(1e-10),
            Err(ScalarError::ContractViolation(_))
        ));
    }

    #[test]
    fn degree_guard() {
        let g = ScalarGuard { degree_cap: 2 };
        assert!(g.admit(sym(&[1, 1, 1], &[1])).is_ok());
        assert_eq!(
            g.admit(sym(&[1, 0, 0, 1], &[1])),
            Err(ScalarError::DegreeLimit { degree: 3, cap: 2 })
        );
    }

    #[test]
    fn debug_rendering() {
        assert_eq!(format!("{:?}", sym(&[2, 3], &[1, 1])), "(3*s + 2)/(s + 1)");
        assert_eq!(format!("{:?}", Scalar::from(1.5)), "1.5");
    }

    // Random rational functions of degree ≤ 4 with small integer coefficients.
    fn poly_strategy() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-9i64..=9, 1..=5).prop_map(|c| Poly::from_ints(&c))
    }

    fn ratfn_strategy() -> impl Strategy<Value = Scalar> {
        (poly_strategy(), poly_strategy())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| Scalar::symbolic(RationalFn::new(n, d).unwrap()))
    }

    fn assert_canonical(s: &Scalar) {
        let r = s.as_symbolic().expect("symbolic");
        let den_lead = r.den().leading().cloned().unwrap();
        assert_eq!(den_lead, ExactRational::from_integer(1.into()));
        if !r.is_zero() {
            assert!(poly_gcd(r.num(), r.den()).unwrap().is_one());
        } else {
            assert!(r.den().is_one());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in ratfn_strategy(), b in ratfn_strategy(), c in ratfn_strategy()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_exact_zero() {
                prop_assert_eq!(&a.checked_div(&b, "t").unwrap() * &b, a.clone());
            }
        }

        #[test]
        fn results_are_canonical(a in ratfn_strategy(), b in ratfn_strategy()) {
            assert_canonical(&(&a + &b));
            assert_canonical(&(&a - &b));
            assert_canonical(&(&a * &b));
            if !b.is_exact_zero() {
                assert_canonical(&a.checked_div(&b, "t").unwrap());
            }
        }

        #[test]
        fn cancellation_precedes_evaluation(p in poly_strategy()) {
            prop_assume!(!p.eval_zero().is_zero());
            let px = &p * &Poly::symbol();
            let r = Scalar::symbolic(RationalFn::new(px.clone(), px).unwrap());
            prop_assert_eq!(r.substitute_zero().unwrap(), 1.0);
        }
    }
}
