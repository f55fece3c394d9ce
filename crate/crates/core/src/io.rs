//! The T3 text format.
//!
//! ```text
//! T3 <m> <n> <p>
//! <p slice blocks, each m lines of n numbers separated by single spaces>
//! ```
//!
//! Blank lines between slices are ignored on input; the writer puts one
//! blank line between consecutive slices. Numbers are written in the
//! shortest decimal form that parses back to the same `f64`, so a parse and
//! re-emit of a written file is byte-identical.

use std::fs;
use std::path::Path;

use crate::error::{Result, TensorError};
use crate::tensor::Tensor3;

/// Shortest round-trip decimal for `v`. Plain notation for magnitudes in
/// `[1e-5, 1e16)`, exponent notation otherwise.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> TensorError {
    TensorError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_t3(text: &str) -> Result<Tensor3> {
    let mut lines = text.lines().enumerate().map(|(no, l)| (no + 1, l));
    let (header_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_error(1, "empty input"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "T3" {
        return Err(parse_error(header_no, "expected header `T3 <m> <n> <p>`"));
    }
    let dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_error(header_no, format!("invalid dimension `{s}`")))
    };
    let (m, n, p) = (dim(fields[1])?, dim(fields[2])?, dim(fields[3])?);
    if m == 0 || n == 0 || p < 2 {
        return Err(TensorError::InvalidShape { m, n, p });
    }

    let mut data = Vec::with_capacity(m * n * p);
    let mut rows = 0;
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if rows == m * p {
            return Err(parse_error(no, "trailing data after the last slice"));
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_error(no, format!("invalid number `{tok}`")))?;
            if !v.is_finite() {
                return Err(parse_error(no, format!("non-finite entry `{tok}`")));
            }
            data.push(v);
        }
        if data.len() - before != n {
            return Err(parse_error(
                no,
                format!("expected {n} numbers, found {}", data.len() - before),
            ));
        }
        rows += 1;
    }
    if rows != m * p {
        return Err(parse_error(
            text.lines().count().max(1),
            format!("expected {} rows, found {rows}", m * p),
        ));
    }
    Tensor3::new(m, n, p, data)
}

pub fn write_t3(t: &Tensor3) -> String {
    let (m, n, p) = t.dims();
    let mut out = format!("T3 {m} {n} {p}\n");
    for k in 0..p {
        if k > 0 {
            out.push('\n');
        }
        for i in 0..m {
            let row: Vec<String> = (0..n).map(|j| format_float(t.get(i, j, k))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Reads a T3 file. I/O failures are reported as parse errors on line 0.
pub fn read_t3_file(path: impl AsRef<Path>) -> Result<Tensor3> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| parse_error(0, format!("cannot read {}: {e}", path.display())))?;
    parse_t3(&text)
}

pub fn write_t3_file(path: impl AsRef<Path>, t: &Tensor3) -> std::io::Result<()> {
    fs::write(path, write_t3(t))
}
