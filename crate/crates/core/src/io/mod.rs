//! File formats.
//!
//! * Native banded JSON (`heptaband`, version 1): the seven diagonals by
//!   name, an optional right-hand side, and for generated matrices the
//!   generator spec and oracle certificate. Floats are written as
//!   shortest round-trip decimals and parsed with correct rounding, so a
//!   write/read cycle reproduces every bit (including `-0.0`).
//! * Matrix Market coordinate (`real`/`integer`, `general`/`symmetric`)
//!   for matrices, and Matrix Market `array` for vectors. Writers emit
//!   every band slot, zeros included, in shortest round-trip exponent form.
//! * Vector JSON (`hepta-vector`, version 1) for right-hand sides and
//!   solutions.

mod banded;
mod mtx;

pub use banded::{
    banded_from_str, banded_to_string, read_banded, read_vector, vector_from_str, vector_to_string,
    write_banded, write_vector, BandedFile, BANDED_FORMAT, FORMAT_VERSION, VECTOR_FORMAT,
};
pub use mtx::{
    matrix_market_to_string, mm_vector_to_string, parse_matrix_market, parse_mm_vector,
    read_matrix_market, read_mm_vector, write_matrix_market, write_mm_vector,
};

use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::matrix::MatrixError;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("unsupported format `{found}`, expected `{expected}`")]
    Format { expected: String, found: String },
    #[error("unsupported version {found}, expected {expected}")]
    Version { expected: u64, found: u64 },
    #[error("entry ({row}, {col}) lies outside the heptadiagonal band (1-based)")]
    Bandwidth { row: usize, col: usize },
    #[error("right-hand side has length {found}, expected {expected}")]
    RhsLength { expected: usize, found: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

pub(crate) fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// True when the path ends in `.mtx` (case-insensitive).
pub fn is_matrix_market(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("mtx"))
}
