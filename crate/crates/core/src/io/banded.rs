use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

use super::{read_file, write_file, IoError};
use crate::generators::{Certificate, GenSpec};
use crate::matrix::{HeptaMatrix, DIAGONAL_NAMES};
use crate::symbolic::ExactRational;

pub const BANDED_FORMAT: &str = "heptaband";
pub const VECTOR_FORMAT: &str = "hepta-vector";
pub const FORMAT_VERSION: u64 = 1;

/// Contents of a native banded file.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedFile {
    pub matrix: HeptaMatrix,
    pub rhs: Option<Vec<f64>>,
    pub gen: Option<GenSpec>,
    pub certificate: Option<Certificate>,
}

impl BandedFile {
    pub fn new(matrix: HeptaMatrix) -> Self {
        BandedFile {
            matrix,
            rhs: None,
            gen: None,
            certificate: None,
        }
    }

    pub fn with_rhs(mut self, y: Vec<f64>) -> Self {
        self.rhs = Some(y);
        self
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateRecord {
    seed_used: u64,
    /// Exact minors as `p/q` strings.
    minors: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Raw {
    format: String,
    version: u64,
    n: usize,
    c_lo: Vec<f64>,
    b_lo: Vec<f64>,
    a_lo: Vec<f64>,
    d: Vec<f64>,
    a_up: Vec<f64>,
    b_up: Vec<f64>,
    c_up: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gen: Option<GenSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateRecord>,
}

fn check_header(v: &Value, format: &str) -> Result<(), IoError> {
    let found = v
        .get("format")
        .ok_or_else(|| IoError::MissingKey("format".into()))?;
    if found.as_str() != Some(format) {
        return Err(IoError::Format {
            expected: format.into(),
            found: found.to_string(),
        });
    }
    let version = v
        .get("version")
        .ok_or_else(|| IoError::MissingKey("version".into()))?;
    match version.as_u64() {
        Some(FORMAT_VERSION) => Ok(()),
        other => Err(IoError::Version {
            expected: FORMAT_VERSION,
            found: other.unwrap_or(0),
        }),
    }
}

fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

pub fn banded_to_string(file: &BandedFile) -> Result<String, IoError> {
    let [c_lo, b_lo, a_lo, d, a_up, b_up, c_up] = file.matrix.clone().into_diagonals();
    let raw = Raw {
        format: BANDED_FORMAT.into(),
        version: FORMAT_VERSION,
        n: file.matrix.n(),
        c_lo,
        b_lo,
        a_lo,
        d,
        a_up,
        b_up,
        c_up,
        y: file.rhs.clone(),
        gen: file.gen.clone(),
        certificate: file.certificate.as_ref().map(|c| CertificateRecord {
            seed_used: c.seed_used,
            minors: c.minors.iter().map(ToString::to_string).collect(),
        }),
    };
    Ok(serde_json::to_string_pretty(&raw)?)
}

pub fn banded_from_str(text: &str) -> Result<BandedFile, IoError> {
    let value = parse_json(text)?;
    check_header(&value, BANDED_FORMAT)?;
    for key in std::iter::once("n").chain(DIAGONAL_NAMES) {
        if value.get(key).is_none() {
            return Err(IoError::MissingKey(key.into()));
        }
    }
    let raw: Raw = serde_json::from_value(value)?;
    let declared = raw.n;
    let matrix = HeptaMatrix::new(
        raw.c_lo, raw.b_lo, raw.a_lo, raw.d, raw.a_up, raw.b_up, raw.c_up,
    )?;
    if matrix.n() != declared {
        return Err(crate::matrix::MatrixError::DimensionMismatch {
            name: "d",
            expected: declared,
            found: matrix.n(),
        }
        .into());
    }
    if let Some(y) = &raw.y {
        if y.len() != declared {
            return Err(IoError::RhsLength {
                expected: declared,
                found: y.len(),
            });
        }
    }
    let certificate = raw
        .certificate
        .map(|c| {
            let minors = c
                .minors
                .iter()
                .map(|s| {
                    s.parse::<ExactRational>().map_err(|_| IoError::Parse {
                        line: 0,
                        msg: format!("certificate minor `{s}` is not a rational"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok::<_, IoError>(Certificate {
                minors,
                seed_used: c.seed_used,
            })
        })
        .transpose()?;
    Ok(BandedFile {
        matrix,
        rhs: raw.y,
        gen: raw.gen,
        certificate,
    })
}

pub fn write_banded(path: impl AsRef<Path>, file: &BandedFile) -> Result<(), IoError> {
    write_file(path.as_ref(), &banded_to_string(file)?)
}

pub fn read_banded(path: impl AsRef<Path>) -> Result<BandedFile, IoError> {
    banded_from_str(&read_file(path.as_ref())?)
}

#[derive(Serialize, Deserialize)]
struct RawVector {
    format: String,
    version: u64,
    n: usize,
    values: Vec<f64>,
}

pub fn vector_to_string(values: &[f64]) -> Result<String, IoError> {
    Ok(serde_json::to_string_pretty(&RawVector {
        format: VECTOR_FORMAT.into(),
        version: FORMAT_VERSION,
        n: values.len(),
        values: values.to_vec(),
    })?)
}

/// Reads a vector from JSON. Accepts a `hepta-vector` file, or any object
/// carrying the vector under `x` (a solution report) or `y` (a banded file).
pub fn vector_from_str(text: &str) -> Result<Vec<f64>, IoError> {
    let value = parse_json(text)?;
    if value.get("format").and_then(Value::as_str) == Some(VECTOR_FORMAT) {
        check_header(&value, VECTOR_FORMAT)?;
        let raw: RawVector = serde_json::from_value(value)?;
        if raw.values.len() != raw.n {
            return Err(IoError::RhsLength {
                expected: raw.n,
                found: raw.values.len(),
            });
        }
        return Ok(raw.values);
    }
    for key in ["values", "x", "y"] {
        if let Some(v) = value.get(key) {
            return Ok(serde_json::from_value(v.clone())?);
        }
    }
    Err(IoError::MissingKey("values".into()))
}

pub fn write_vector(path: impl AsRef<Path>, values: &[f64]) -> Result<(), IoError> {
    let path = path.as_ref();
    if super::is_matrix_market(path) {
        return super::write_mm_vector(path, values);
    }
    write_file(path, &vector_to_string(values)?)
}

/// Reads a vector from a `.mtx` array file or a JSON vector file.
pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<f64>, IoError> {
    let path = path.as_ref();
    if super::is_matrix_market(path) {
        return super::read_mm_vector(path);
    }
    vector_from_str(&read_file(path)?)
}
