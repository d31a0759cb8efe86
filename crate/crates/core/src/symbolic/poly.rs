//! Univariate polynomials over exact rationals.

use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::{from_int, ExactRational, RationalDisplay};
use super::ScalarError;

/// Polynomial in the pivot symbol `s`, coefficients in ascending degree.
///
/// Canonical form: no trailing zero coefficients, so the zero polynomial is
/// the empty coefficient list and the last coefficient is the leading one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ExactRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The indeterminate `s`.
    pub fn symbol() -> Self {
        Poly {
            coeffs: vec![ExactRational::zero(), ExactRational::one()],
        }
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience for tests and examples: integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    /// Value at `s = 0`.
    pub fn eval_zero(&self) -> ExactRational {
        self.coeffs
            .first()
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn eval(&self, at: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, k: &ExactRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divides through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), ScalarError> {
        let lead = divisor
            .leading()
            .ok_or(ScalarError::ZeroDivide { op: "poly_div_rem" })?;
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = lead.recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ExactRational::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd - 1];
            if top.is_zero() {
                continue;
            }
            let f = top * &inv;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rem[k + j] -= &f * c;
                }
            }
            quot[k] = f;
        }
        rem.truncate(dd - 1);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact quotient when `divisor` is known to divide `self`.
    pub(crate) fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self
            .div_rem(divisor)
            .expect("div_exact called with zero divisor");
        debug_assert!(r.is_zero(), "div_exact left a remainder");
        q
    }

    /// Degree of the highest power of `s` dividing `self`.
    pub fn zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

/// Monic greatest common divisor by the Euclidean algorithm.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly, ScalarError> {
    if p.is_zero() && q.is_zero() {
        return Err(ScalarError::GcdOfZeros);
    }
    let (mut a, mut b) = if p.degree() >= q.degree() {
        (p.clone(), q.clone())
    } else {
        (q.clone(), p.clone())
    };
    while !b.is_zero() {
        if b.is_constant() {
            return Ok(Poly::one());
        }
        let (_, r) = a.div_rem(&b)?;
        // Keeping the remainder monic stops coefficient growth.
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, ExactRational::zero());
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= r;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{}", RationalDisplay(&mag))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", RationalDisplay(&mag))?,
            }
            match k {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).coeffs().len(), 2);
    }

    #[test]
    fn gcd_difference_of_squares() {
        // x² − 1 and x − 1
        assert_eq!(
            poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(),
            p(&[-1, 1])
        );
    }

    #[test]
    fn gcd_with_constant() {
        assert_eq!(
            poly_gcd(&Poly::symbol(), &Poly::one()).unwrap(),
            Poly::one()
        );
    }

    #[test]
    fn gcd_planted_factor_is_monic() {
        // (x + 2)(3x − 1) = 3x² + 5x − 2
        let f = &p(&[2, 1]) * &p(&[-1, 3]);
        assert_eq!(f, p(&[-2, 5, 3]));
        assert_eq!(poly_gcd(&f, &p(&[2, 1])).unwrap(), p(&[2, 1]));
        assert_eq!(poly_gcd(&f, &p(&[4, 2])).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn gcd_of_zeros_is_an_error() {
        assert_eq!(
            poly_gcd(&Poly::zero(), &Poly::zero()),
            Err(ScalarError::GcdOfZeros)
        );
        assert_eq!(
            poly_gcd(&Poly::zero(), &p(&[2, 4])).unwrap(),
            p(&[1, 2]).monic()
        );
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[5, -3, 0, 2, 7]);
        let b = p(&[1, 0, 3]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree() < b.degree());
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, 3]).to_string(), "3*s + 2");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "s^2 - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-s");
        assert_eq!(Poly::zero().to_string(), "0");
        let half = Poly::constant("1/2".parse().unwrap());
        assert_eq!((&half * &Poly::symbol()).to_string(), "1/2*s");
    }

    #[test]
    fn eval() {
        let f = p(&[1, -2, 3]);
        assert_eq!(f.eval(&from_int(2)), from_int(9));
        assert_eq!(f.eval_zero(), from_int(1));
        assert_eq!(p(&[0, 0, 4]).zero_order(), 2);
    }
}
