//! Heptadiagonal matrix storage.
//!
//! The seven diagonals are stored with their natural (trimmed) lengths:
//!
//! | field  | offset | length | first entry |
//! |--------|--------|--------|-------------|
//! | `c_lo` | −3     | N−3    | c*₃         |
//! | `b_lo` | −2     | N−2    | b*₂         |
//! | `a_lo` | −1     | N−1    | a*₁         |
//! | `d`    | 0      | N      | d₀          |
//! | `a_up` | +1     | N−1    | a₀          |
//! | `b_up` | +2     | N−2    | b₀          |
//! | `c_up` | +3     | N−3    | c₀          |
//!
//! Upper diagonals are indexed by row, lower diagonals by row minus their
//! offset, so `a_lo[k]` holds the entry at `(k + 1, k)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest size the sweep accepts; smaller systems go through the exact
/// dense solver.
pub const MIN_SWEEP_N: usize = 7;

/// Names of the seven diagonals, lowest offset first.
pub const DIAGONAL_NAMES: [&str; 7] = ["c_lo", "b_lo", "a_lo", "d", "a_up", "b_up", "c_up"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("system size {n} is below the sweep minimum of {MIN_SWEEP_N}")]
    TooSmall { n: usize },
    #[error("system size must be positive")]
    Empty,
    #[error("diagonal `{name}` has length {found}, expected {expected}")]
    DimensionMismatch {
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("diagonal `{name}` has a non-finite entry at index {index}")]
    NonFinite { name: &'static str, index: usize },
    #[error("entry ({row}, {col}) lies outside the heptadiagonal band")]
    BandwidthViolation { row: usize, col: usize },
    #[error("dense input is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("vector length {found} does not match system size {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A heptadiagonal matrix `heptadiag(c*, b*, a*, d, a, b, c)`.
///
/// Instances built through [`HeptaMatrix::new`] always have consistent
/// lengths and finite entries. Sizes below [`MIN_SWEEP_N`] are
/// representable (the public solver hands them to the exact dense
/// routine) but [`HeptaMatrix::validate`] rejects them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeptaMatrix {
    n: usize,
    c_lo: Vec<f64>,
    b_lo: Vec<f64>,
    a_lo: Vec<f64>,
    d: Vec<f64>,
    a_up: Vec<f64>,
    b_up: Vec<f64>,
    c_up: Vec<f64>,
}

/// Expected length of the diagonal at `offset` for an `n × n` matrix.
pub fn diagonal_len(n: usize, offset: isize) -> usize {
    n.saturating_sub(offset.unsigned_abs())
}

fn check_diagonal(name: &'static str, v: &[f64], expected: usize) -> Result<(), MatrixError> {
    if v.len() != expected {
        return Err(MatrixError::DimensionMismatch {
            name,
            expected,
            found: v.len(),
        });
    }
    if let Some(index) = v.iter().position(|x| !x.is_finite()) {
        return Err(MatrixError::NonFinite { name, index });
    }
    Ok(())
}

impl HeptaMatrix {
    /// Builds a matrix from its diagonals, listed lowest offset first.
    ///
    /// The size is taken from `d`. Any size ≥ 1 is accepted here; see
    /// [`HeptaMatrix::validate`] for the sweep's stricter requirement.
    pub fn new(
        c_lo: Vec<f64>,
        b_lo: Vec<f64>,
        a_lo: Vec<f64>,
        d: Vec<f64>,
        a_up: Vec<f64>,
        b_up: Vec<f64>,
        c_up: Vec<f64>,
    ) -> Result<Self, MatrixError> {
        let m = HeptaMatrix {
            n: d.len(),
            c_lo,
            b_lo,
            a_lo,
            d,
            a_up,
            b_up,
            c_up,
        };
        m.check_shape()?;
        Ok(m)
    }

    /// Builds a matrix from an array of seven diagonals in [`DIAGONAL_NAMES`] order.
    pub fn from_diagonals(diagonals: [Vec<f64>; 7]) -> Result<Self, MatrixError> {
        let [c_lo, b_lo, a_lo, d, a_up, b_up, c_up] = diagonals;
        Self::new(c_lo, b_lo, a_lo, d, a_up, b_up, c_up)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(vec![1.0; n])
    }

    /// Diagonal matrix with the given main diagonal.
    pub fn from_diagonal(d: Vec<f64>) -> Self {
        let n = d.len();
        let z = |k: isize| vec![0.0; diagonal_len(n, k)];
        HeptaMatrix {
            n,
            c_lo: z(3),
            b_lo: z(2),
            a_lo: z(1),
            d,
            a_up: z(1),
            b_up: z(2),
            c_up: z(3),
        }
    }

    /// Checks lengths and finiteness, allowing any positive size.
    pub fn check_shape(&self) -> Result<(), MatrixError> {
        let n = self.n;
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        for (k, (name, diag)) in DIAGONAL_NAMES.iter().zip(self.diagonals()).enumerate() {
            check_diagonal(name, diag, diagonal_len(n, k as isize - 3))?;
        }
        Ok(())
    }

    /// Full invariant check for the sweep: shape, finiteness and `n ≥ 7`.
    pub fn validate(&self) -> Result<(), MatrixError> {
        self.check_shape()?;
        if self.n < MIN_SWEEP_N {
            return Err(MatrixError::TooSmall { n: self.n });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The diagonals in [`DIAGONAL_NAMES`] order.
    pub fn diagonals(&self) -> [&[f64]; 7] {
        [
            &self.c_lo, &self.b_lo, &self.a_lo, &self.d, &self.a_up, &self.b_up, &self.c_up,
        ]
    }

    pub fn into_diagonals(self) -> [Vec<f64>; 7] {
        [
            self.c_lo, self.b_lo, self.a_lo, self.d, self.a_up, self.b_up, self.c_up,
        ]
    }

    /// Diagonal by name, one of [`DIAGONAL_NAMES`].
    pub fn diagonal(&self, name: &str) -> Option<&[f64]> {
        DIAGONAL_NAMES
            .iter()
            .position(|&k| k == name)
            .map(|k| self.diagonals()[k])
    }

    // Accessors in row notation: `a(i)` is aᵢ at (i, i+1), `a_star(i)` is a*ᵢ at (i, i−1).

    #[inline]
    pub fn d(&self, i: usize) -> f64 {
        self.d[i]
    }
    #[inline]
    pub fn a(&self, i: usize) -> f64 {
        self.a_up[i]
    }
    #[inline]
    pub fn b(&self, i: usize) -> f64 {
        self.b_up[i]
    }
    #[inline]
    pub fn c(&self, i: usize) -> f64 {
        self.c_up[i]
    }
    #[inline]
    pub fn a_star(&self, i: usize) -> f64 {
        self.a_lo[i - 1]
    }
    #[inline]
    pub fn b_star(&self, i: usize) -> f64 {
        self.b_lo[i - 2]
    }
    #[inline]
    pub fn c_star(&self, i: usize) -> f64 {
        self.c_lo[i - 3]
    }

    /// Entry `(i, j)`, zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let off = j as isize - i as isize;
        if off.unsigned_abs() > 3 || i >= self.n || j >= self.n {
            return 0.0;
        }
        let k = (off + 3) as usize;
        // Upper diagonals are indexed by row, lower ones by column.
        let idx = if off >= 0 { i } else { j };
        self.diagonals()[k][idx]
    }

    fn slot_mut(&mut self, i: usize, j: usize) -> Option<&mut f64> {
        let off = j as isize - i as isize;
        if off.unsigned_abs() > 3 || i >= self.n || j >= self.n {
            return None;
        }
        let idx = if off >= 0 { i } else { j };
        let diag = match off {
            -3 => &mut self.c_lo,
            -2 => &mut self.b_lo,
            -1 => &mut self.a_lo,
            0 => &mut self.d,
            1 => &mut self.a_up,
            2 => &mut self.b_up,
            _ => &mut self.c_up,
        };
        Some(&mut diag[idx])
    }

    /// Sets entry `(i, j)`, which must lie within the band.
    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<(), MatrixError> {
        if !value.is_finite() {
            return Err(MatrixError::NonFinite {
                name: DIAGONAL_NAMES[(j as isize - i as isize + 3).clamp(0, 6) as usize],
                index: i,
            });
        }
        *self
            .slot_mut(i, j)
            .ok_or(MatrixError::BandwidthViolation { row: i, col: j })? = value;
        Ok(())
    }

    /// Expands to a dense row-major `n × n` matrix.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Extracts the band of a dense square matrix. Every entry with
    /// `|i − j| > 3` must be exactly zero.
    pub fn from_dense(dense: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let n = dense.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        for (i, row) in dense.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if i.abs_diff(j) > 3 && v != 0.0 {
                    return Err(MatrixError::BandwidthViolation { row: i, col: j });
                }
            }
        }
        let mut m = HeptaMatrix::from_diagonal(vec![0.0; n]);
        for (i, row) in dense.iter().enumerate() {
            let lo = i.saturating_sub(3);
            for (j, &v) in row.iter().enumerate().take((i + 4).min(n)).skip(lo) {
                m.set(i, j, v)?;
            }
        }
        Ok(m)
    }

    /// Computes `A·v`, treating entries outside the matrix as zero.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>, MatrixError> {
        let n = self.n;
        if v.len() != n {
            return Err(MatrixError::LengthMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let out = (0..n)
            .map(|i| {
                let mut s = self.d[i] * v[i];
                if i >= 1 {
                    s += self.a_lo[i - 1] * v[i - 1];
                }
                if i >= 2 {
                    s += self.b_lo[i - 2] * v[i - 2];
                }
                if i >= 3 {
                    s += self.c_lo[i - 3] * v[i - 3];
                }
                if i + 1 < n {
                    s += self.a_up[i] * v[i + 1];
                }
                if i + 2 < n {
                    s += self.b_up[i] * v[i + 2];
                }
                if i + 3 < n {
                    s += self.c_up[i] * v[i + 3];
                }
                s
            })
            .collect();
        Ok(out)
    }

    /// Off-diagonal entries of row `i`, in column order.
    pub fn row_off_diagonal(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        (i.saturating_sub(3)..(i + 4).min(self.n))
            .filter(move |&j| j != i)
            .map(move |j| self.get(i, j))
    }
}

/// `max |v_i|`, zero for an empty slice.
pub fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}
