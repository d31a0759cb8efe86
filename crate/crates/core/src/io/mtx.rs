use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{read_file, write_file, IoError};
use crate::matrix::HeptaMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

struct Header {
    layout: Layout,
    symmetry: Symmetry,
}

fn parse_error(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_header(line: &str) -> Result<Header, IoError> {
    let words: Vec<String> = line
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(parse_error(
            1,
            "expected `%%MatrixMarket matrix <layout> <field> <symmetry>`",
        ));
    }
    let layout = match words[2].as_str() {
        "coordinate" => Layout::Coordinate,
        "array" => Layout::Array,
        other => return Err(parse_error(1, format!("unsupported layout `{other}`"))),
    };
    match words[3].as_str() {
        "real" | "integer" | "double" => {}
        other => return Err(parse_error(1, format!("unsupported field `{other}`"))),
    }
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        other => return Err(parse_error(1, format!("unsupported symmetry `{other}`"))),
    };
    Ok(Header { layout, symmetry })
}

/// Non-comment, non-blank lines after the header, with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, IoError> {
    tok.ok_or_else(|| parse_error(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_error(line, format!("invalid {what}")))
}

fn parse_value(tok: Option<&str>, line: usize) -> Result<f64, IoError> {
    let v: f64 = tok
        .ok_or_else(|| parse_error(line, "missing value"))?
        .parse()
        .map_err(|_| parse_error(line, "invalid value"))?;
    if !v.is_finite() {
        return Err(parse_error(line, "non-finite value"));
    }
    Ok(v)
}

/// Parses a coordinate-format matrix. Duplicate entries are summed; the
/// band is checked after summation, and a violation reports the first
/// offending entry in file order using the file's 1-based coordinates.
pub fn parse_matrix_market(text: &str) -> Result<HeptaMatrix, IoError> {
    let header = parse_header(text.lines().next().unwrap_or(""))?;
    if header.layout != Layout::Coordinate {
        return Err(parse_error(
            1,
            "matrix files must use the coordinate layout",
        ));
    }
    let mut lines = data_lines(text);
    let (size_line, size) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing size line"))?;
    let mut toks = size.split_whitespace();
    let rows = parse_usize(toks.next(), size_line, "row count")?;
    let cols = parse_usize(toks.next(), size_line, "column count")?;
    let nnz = parse_usize(toks.next(), size_line, "entry count")?;
    if rows != cols {
        return Err(parse_error(
            size_line,
            format!("matrix is {rows} × {cols}, not square"),
        ));
    }
    if rows == 0 {
        return Err(crate::matrix::MatrixError::Empty.into());
    }

    let mut m = HeptaMatrix::from_diagonal(vec![0.0; rows]);
    // First write to a slot assigns, later ones add, so `-0e0` survives.
    let mut seen = vec![false; 7 * rows];
    let mut outside: Vec<(usize, usize)> = Vec::new();
    let mut outside_sum: HashMap<(usize, usize), f64> = HashMap::new();
    let mut count = 0;
    for (line, entry) in lines {
        if count == nnz {
            return Err(parse_error(line, format!("more than {nnz} entries")));
        }
        let mut toks = entry.split_whitespace();
        let i = parse_usize(toks.next(), line, "row index")?;
        let j = parse_usize(toks.next(), line, "column index")?;
        let v = parse_value(toks.next(), line)?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(parse_error(line, format!("index ({i}, {j}) out of range")));
        }
        let mut place = |r: usize, c: usize| -> Result<(), IoError> {
            if r.abs_diff(c) > 3 {
                let slot = outside_sum.entry((r, c)).or_insert_with(|| {
                    outside.push((r, c));
                    0.0
                });
                *slot += v;
                return Ok(());
            }
            let slot = 7 * (r - 1) + (c + 3 - r);
            let value = if seen[slot] {
                m.get(r - 1, c - 1) + v
            } else {
                v
            };
            seen[slot] = true;
            m.set(r - 1, c - 1, value)
                .map_err(|e| parse_error(line, e.to_string()))
        };
        place(i, j)?;
        if header.symmetry == Symmetry::Symmetric && i != j {
            place(j, i)?;
        }
        count += 1;
    }
    if count < nnz {
        return Err(parse_error(
            text.lines().count(),
            format!("expected {nnz} entries, found {count}"),
        ));
    }
    if let Some(&(row, col)) = outside.iter().find(|k| outside_sum[k] != 0.0) {
        return Err(IoError::Bandwidth { row, col });
    }
    Ok(m)
}

/// Writes every band slot, zeros included, so the stored diagonals
/// (down to the sign of zero) survive a round trip.
pub fn matrix_market_to_string(m: &HeptaMatrix) -> String {
    let n = m.n();
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i.saturating_sub(3)..(i + 4).min(n)).map(move |j| (i, j)))
        .collect();
    let mut out = String::with_capacity(32 * slots.len() + 64);
    out.push_str("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(out, "{n} {n} {}", slots.len());
    for (i, j) in slots {
        let _ = writeln!(out, "{} {} {:e}", i + 1, j + 1, m.get(i, j));
    }
    out
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<HeptaMatrix, IoError> {
    parse_matrix_market(&read_file(path.as_ref())?)
}

pub fn write_matrix_market(path: impl AsRef<Path>, m: &HeptaMatrix) -> Result<(), IoError> {
    write_file(path.as_ref(), &matrix_market_to_string(m))
}

/// Parses an `array` file holding a single column.
pub fn parse_mm_vector(text: &str) -> Result<Vec<f64>, IoError> {
    let header = parse_header(text.lines().next().unwrap_or(""))?;
    if header.layout != Layout::Array || header.symmetry != Symmetry::General {
        return Err(parse_error(
            1,
            "vector files must use the general array layout",
        ));
    }
    let mut lines = data_lines(text);
    let (size_line, size) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing size line"))?;
    let mut toks = size.split_whitespace();
    let rows = parse_usize(toks.next(), size_line, "row count")?;
    let cols = parse_usize(toks.next(), size_line, "column count")?;
    if cols != 1 {
        return Err(parse_error(
            size_line,
            format!("expected one column, found {cols}"),
        ));
    }
    let mut values = Vec::with_capacity(rows);
    for (line, entry) in lines {
        if values.len() == rows {
            return Err(parse_error(line, format!("more than {rows} values")));
        }
        values.push(parse_value(entry.split_whitespace().next(), line)?);
    }
    if values.len() < rows {
        return Err(parse_error(
            text.lines().count(),
            format!("expected {rows} values, found {}", values.len()),
        ));
    }
    Ok(values)
}

pub fn mm_vector_to_string(values: &[f64]) -> String {
    let mut out = String::with_capacity(24 * values.len() + 64);
    out.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{} 1", values.len());
    for v in values {
        let _ = writeln!(out, "{v:e}");
    }
    out
}

pub fn read_mm_vector(path: impl AsRef<Path>) -> Result<Vec<f64>, IoError> {
    parse_mm_vector(&read_file(path.as_ref())?)
}

pub fn write_mm_vector(path: impl AsRef<Path>, values: &[f64]) -> Result<(), IoError> {
    write_file(path.as_ref(), &mm_vector_to_string(values))
}
