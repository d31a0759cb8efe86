//! Exact-rational dense linear algebra.
//!
//! This is the reference the sweep is checked against. It shares no code
//! with the sweep: plain Gaussian elimination over [`ExactRational`], with a
//! row exchange whenever a pivot is exactly zero. Elimination skips exact
//! zeros, so banded inputs cost roughly `O(n·w²)` rational operations
//! rather than `O(n³)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::HeptaMatrix;
use crate::symbolic::{promote, to_f64, ExactRational, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("matrix is singular: no nonzero pivot in column {column}")]
    Singular { column: usize },
    #[error("expected {expected} values, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Dense square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    n: usize,
    rows: Vec<Vec<ExactRational>>,
}

impl ExactMatrix {
    pub fn new(rows: Vec<Vec<ExactRational>>) -> Result<Self, OracleError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(OracleError::Dimension {
                expected: n,
                found: r.len(),
            });
        }
        Ok(ExactMatrix { n, rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            ExactRational::one()
                        } else {
                            ExactRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ExactMatrix { n, rows }
    }

    /// Exact image of a dense float matrix.
    pub fn from_f64_rows(rows: &[Vec<f64>]) -> Result<Self, OracleError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| promote(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        ExactMatrix::new(rows)
    }

    pub fn from_hepta(m: &HeptaMatrix) -> Self {
        // HeptaMatrix entries are finite by construction.
        ExactMatrix::from_f64_rows(&m.to_dense()).expect("finite entries")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactRational) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<ExactRational>] {
        &self.rows
    }

    /// Top-left `k × k` block.
    pub fn leading(&self, k: usize) -> ExactMatrix {
        ExactMatrix {
            n: k,
            rows: self.rows[..k].iter().map(|r| r[..k].to_vec()).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[ExactRational]) -> Vec<ExactRational> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(ExactRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

/// Outcome of forward elimination.
struct Elimination {
    /// Diagonal of the upper-triangular factor, in elimination order.
    pivots: Vec<ExactRational>,
    /// Number of row exchanges performed.
    swaps: usize,
    /// First column with no usable pivot.
    stalled_at: Option<usize>,
}

/// Reduces `rows` (and `rhs`, if given) to upper-triangular form in place.
/// Without `exchange`, stops at the first exactly-zero pivot.
fn eliminate(
    rows: &mut [Vec<ExactRational>],
    mut rhs: Option<&mut [ExactRational]>,
    exchange: bool,
) -> Elimination {
    let n = rows.len();
    let mut pivots = Vec::with_capacity(n);
    let mut swaps = 0;
    for k in 0..n {
        if rows[k][k].is_zero() {
            let found = if exchange {
                (k + 1..n).find(|&r| !rows[r][k].is_zero())
            } else {
                None
            };
            match found {
                Some(r) => {
                    rows.swap(k, r);
                    if let Some(b) = rhs.as_deref_mut() {
                        b.swap(k, r);
                    }
                    swaps += 1;
                }
                None => {
                    return Elimination {
                        pivots,
                        swaps,
                        stalled_at: Some(k),
                    }
                }
            }
        }
        let (upper, lower) = rows.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = pivot_row[k].clone();
        let cols: Vec<usize> = (k + 1..n).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (offset, row) in lower.iter_mut().enumerate() {
            if row[k].is_zero() {
                continue;
            }
            let factor = &row[k] / &pivot;
            for &j in &cols {
                let t = &factor * &pivot_row[j];
                row[j] -= t;
            }
            row[k] = ExactRational::zero();
            if let Some(b) = rhs.as_deref_mut() {
                let t = &factor * &b[k];
                b[k + 1 + offset] -= t;
            }
        }
        pivots.push(pivot);
    }
    Elimination {
        pivots,
        swaps,
        stalled_at: None,
    }
}

/// Solves `A·x = y` exactly.
pub fn exact_solve(
    a: &ExactMatrix,
    y: &[ExactRational],
) -> Result<Vec<ExactRational>, OracleError> {
    let n = a.n;
    if y.len() != n {
        return Err(OracleError::Dimension {
            expected: n,
            found: y.len(),
        });
    }
    let mut rows = a.rows.clone();
    let mut b = y.to_vec();
    let e = eliminate(&mut rows, Some(&mut b), true);
    if let Some(column) = e.stalled_at {
        return Err(OracleError::Singular { column });
    }
    let mut x = vec![ExactRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            if !rows[i][j].is_zero() {
                acc -= &rows[i][j] * &x[j];
            }
        }
        x[i] = acc / &e.pivots[i];
    }
    Ok(x)
}

/// Exact determinant by elimination with sign tracking.
pub fn exact_determinant(a: &ExactMatrix) -> ExactRational {
    let mut rows = a.rows.clone();
    let e = eliminate(&mut rows, None, true);
    if e.stalled_at.is_some() {
        return ExactRational::zero();
    }
    let det = e.pivots.iter().fold(ExactRational::one(), |acc, p| acc * p);
    if e.swaps % 2 == 1 {
        -det
    } else {
        det
    }
}

/// Leading principal minors `M₀ … M_{n−1}`, where `Mᵢ` is the determinant of
/// the top-left `(i+1) × (i+1)` block.
pub fn leading_minors(a: &ExactMatrix) -> Vec<ExactRational> {
    let n = a.n;
    let mut rows = a.rows.clone();
    // Without exchanges, the k-th pivot is M_k / M_{k−1}.
    let e = eliminate(&mut rows, None, false);
    let mut minors = Vec::with_capacity(n);
    let mut acc = ExactRational::one();
    for p in &e.pivots {
        acc *= p;
        minors.push(acc.clone());
    }
    if let Some(k) = e.stalled_at {
        minors.push(ExactRational::zero());
        for i in k + 1..n {
            minors.push(exact_determinant(&a.leading(i + 1)));
        }
    }
    minors
}

/// Solves a float system exactly and rounds the solution.
pub fn solve_f64(m: &HeptaMatrix, y: &[f64]) -> Result<Vec<f64>, OracleError> {
    let a = ExactMatrix::from_hepta(m);
    let y = y
        .iter()
        .map(|&v| promote(v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(exact_solve(&a, &y)?.iter().map(to_f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> ExactRational {
        ExactRational::from_integer(v.into())
    }

    fn int_matrix(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_solve() {
        let x = exact_solve(&ExactMatrix::identity(3), &[q(1), q(2), q(3)]).unwrap();
        assert_eq!(x, vec![q(1), q(2), q(3)]);
    }

    #[test]
    fn permutation_needs_exchange() {
        let a = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(exact_solve(&a, &[q(5), q(7)]).unwrap(), vec![q(7), q(5)]);
        assert_eq!(exact_determinant(&a), q(-1));
    }

    #[test]
    fn seeded_integer_solve_checks_exactly() {
        let mut s: u64 = 42;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % 19) as i64 - 9
        };
        let rows: Vec<Vec<i64>> = (0..6).map(|_| (0..6).map(|_| next()).collect()).collect();
        let a = ExactMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
        .unwrap();
        assert!(!exact_determinant(&a).is_zero());
        let y: Vec<_> = (1..=6).map(q).collect();
        let x = exact_solve(&a, &y).unwrap();
        assert_eq!(a.mul_vec(&x), y);
    }

    #[test]
    fn singular_detected() {
        let a = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            exact_solve(&a, &[q(1), q(1)]),
            Err(OracleError::Singular { column: 1 })
        );
        assert!(exact_determinant(&a).is_zero());
    }

    #[test]
    fn determinants() {
        assert_eq!(exact_determinant(&ExactMatrix::identity(5)), q(1));
        let diag = ExactMatrix::from_hepta(&HeptaMatrix::from_diagonal(
            (1..=7).map(f64::from).collect(),
        ));
        assert_eq!(exact_determinant(&diag), q(5040));
    }

    #[test]
    fn minors() {
        assert_eq!(leading_minors(&ExactMatrix::identity(4)), vec![q(1); 4]);
        let d = int_matrix(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]);
        assert_eq!(leading_minors(&d), vec![q(2), q(6), q(24)]);
    }

    #[test]
    fn minors_through_a_zero_pivot() {
        let a = int_matrix(&[&[0, 1, 2], &[1, 1, 0], &[3, 0, 1]]);
        let m = leading_minors(&a);
        assert_eq!(m, vec![q(0), q(-1), exact_determinant(&a)]);
    }

    #[test]
    fn last_minor_is_determinant() {
        let a = int_matrix(&[
            &[4, -2, 1, 0, 3],
            &[1, 5, -1, 2, 0],
            &[0, 2, 6, -3, 1],
            &[2, 0, 1, 7, -1],
            &[-1, 3, 0, 2, 8],
        ]);
        assert_eq!(leading_minors(&a).last().unwrap(), &exact_determinant(&a));
    }
}
