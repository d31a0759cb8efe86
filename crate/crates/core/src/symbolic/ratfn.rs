//! Rational functions in the pivot symbol, kept in canonical form.

use num_traits::Zero;
use std::fmt;

use super::poly::{poly_gcd, Poly};
use super::rational::{is_one, ExactRational};
use super::ScalarError;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
///
/// Every constructor and every arithmetic result is canonical, so two
/// rational functions are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    /// Cancels common factors and normalizes the denominator to be monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDivide { op: "rational_fn" });
        }
        if num.is_zero() {
            return Ok(RationalFn::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den)?;
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let lc = den.leading().expect("nonzero denominator");
        if is_one(lc) {
            return Ok(RationalFn { num, den });
        }
        let inv = lc.recip();
        Ok(RationalFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        RationalFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: ExactRational) -> Self {
        RationalFn {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// The identity function `s / 1`.
    pub fn symbol() -> Self {
        RationalFn {
            num: Poly::symbol(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(num: Poly) -> Self {
        RationalFn {
            num,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_symbol(&self) -> bool {
        *self == RationalFn::symbol()
    }

    /// Larger of the numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    /// Value at `s = 0`. Canonical form means a zero denominator there is a
    /// genuine pole rather than a removable factor.
    pub fn substitute_zero(&self) -> Result<ExactRational, ScalarError> {
        let den0 = self.den.eval_zero();
        if den0.is_zero() {
            return Err(ScalarError::PoleAtZero {
                order: self.den.zero_order(),
            });
        }
        Ok(self.num.eval_zero() / den0)
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &RationalFn) -> RationalFn {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &RationalFn) -> RationalFn {
        self.combine(rhs, true)
    }

    /// Rescales so the denominator is monic. Does not cancel.
    fn normalized(num: Poly, den: Poly) -> RationalFn {
        if num.is_zero() {
            return RationalFn::zero();
        }
        let lc = den.leading().expect("nonzero denominator");
        if is_one(lc) {
            return RationalFn { num, den };
        }
        let inv = lc.recip();
        RationalFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    fn combine(&self, rhs: &RationalFn, subtract: bool) -> RationalFn {
        let pick = |a: &Poly, b: &Poly| if subtract { a - b } else { a + b };
        if self.den == rhs.den {
            return RationalFn::new(pick(&self.num, &rhs.num), self.den.clone())
                .expect("monic denominator is nonzero");
        }
        if self.den.is_one() {
            return RationalFn {
                num: pick(&(&self.num * &rhs.den), &rhs.num),
                den: rhs.den.clone(),
            }
            .trimmed();
        }
        if rhs.den.is_one() {
            return RationalFn {
                num: pick(&self.num, &(&rhs.num * &self.den)),
                den: self.den.clone(),
            }
            .trimmed();
        }
        // b = g·b', d = g·d'; only factors of g can cancel.
        let g = poly_gcd(&self.den, &rhs.den).expect("nonzero denominators");
        if g.is_one() {
            let num = pick(&(&self.num * &rhs.den), &(&rhs.num * &self.den));
            return RationalFn::normalized(num, &self.den * &rhs.den);
        }
        let b1 = self.den.div_exact(&g);
        let d1 = rhs.den.div_exact(&g);
        let t = pick(&(&self.num * &d1), &(&rhs.num * &b1));
        if t.is_zero() {
            return RationalFn::zero();
        }
        let g2 = poly_gcd(&t, &g).expect("nonzero");
        let (t, g) = if g2.is_one() {
            (t, g)
        } else {
            (t.div_exact(&g2), g.div_exact(&g2))
        };
        RationalFn::normalized(t, &(&b1 * &d1) * &g)
    }

    /// Zero numerator collapses to the canonical zero.
    fn trimmed(self) -> RationalFn {
        if self.num.is_zero() {
            RationalFn::zero()
        } else {
            self
        }
    }

    /// `self + c`. Canonical without a gcd: `gcd(p + c·q, q) = gcd(p, q)`.
    pub fn add_constant(&self, c: &ExactRational) -> RationalFn {
        if c.is_zero() {
            return self.clone();
        }
        RationalFn {
            num: &self.num + &self.den.scale(c),
            den: self.den.clone(),
        }
        .trimmed()
    }

    /// `k · self`.
    pub fn scale(&self, k: &ExactRational) -> RationalFn {
        if k.is_zero() || self.is_zero() {
            return RationalFn::zero();
        }
        RationalFn {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    /// `(a/b)·(c/d)` with cross-cancellation of `gcd(a, d)` and `gcd(c, b)`.
    fn product(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> RationalFn {
        let cancel = |p: &Poly, q: &Poly| -> (Poly, Poly) {
            if q.is_constant() || p.is_constant() {
                return (p.clone(), q.clone());
            }
            let g = poly_gcd(p, q).expect("nonzero");
            if g.is_one() {
                (p.clone(), q.clone())
            } else {
                (p.div_exact(&g), q.div_exact(&g))
            }
        };
        let (a, d) = cancel(a, d);
        let (c, b) = cancel(c, b);
        RationalFn::normalized(&a * &c, &b * &d)
    }

    pub fn mul(&self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero();
        }
        RationalFn::product(&self.num, &self.den, &rhs.num, &rhs.den)
    }

    pub fn checked_div(
        &self,
        rhs: &RationalFn,
        op: &'static str,
    ) -> Result<RationalFn, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::ZeroDivide { op });
        }
        if self.is_zero() {
            return Ok(RationalFn::zero());
        }
        Ok(RationalFn::product(
            &self.num, &self.den, &rhs.den, &rhs.num,
        ))
    }

    /// Value at `s = 0` when this is a constant function.
    pub fn as_constant(&self) -> Option<ExactRational> {
        if self.is_constant() {
            Some(self.num.eval_zero() / self.den.eval_zero())
        } else {
            None
        }
    }
}

impl Default for RationalFn {
    fn default() -> Self {
        RationalFn::zero()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<ExactRational> for RationalFn {
    fn from(c: ExactRational) -> Self {
        if c.is_zero() {
            RationalFn::zero()
        } else {
            RationalFn::constant(c)
        }
    }
}
