//! Complex scalar and matrix literals: `re`, `imi`, `re+imi`, `re-imi`, and
//! `[[a, b], [c, d]]`.

use num_complex::Complex64;

use super::CMatrix;
use crate::presentation::{ParseError, Token};

fn parse_decimal(text: &str) -> Option<f64> {
    let body = text.strip_prefix(['+', '-']).unwrap_or(text);
    let first = body.chars().next()?;
    if !(first.is_ascii_digit() || first == '.') {
        return None;
    }
    if !body.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-')) {
        return None;
    }
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses a complex literal made of one or two decimal doubles.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let text = text.trim();
    let Some(body) = text.strip_suffix('i') else {
        return parse_decimal(text).map(|re| Complex64::new(re, 0.0));
    };
    // Split at the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = parse_decimal(&body[..k])?;
            let im = parse_decimal(&body[k..])?;
            Some(Complex64::new(re, im))
        }
        None => parse_decimal(body).map(|im| Complex64::new(0.0, im)),
    }
}

/// Parses `[[a, b, …], [c, d, …], …]` into a square matrix. `body` may carry
/// trailing text, whose offset is returned alongside the matrix.
pub fn parse_matrix(body: &Token<'_>) -> Result<(CMatrix, usize), ParseError> {
    let text = body.text;
    let err = |offset: usize, msg: &str| ParseError::syntax(body.line, body.column + offset, msg.to_string());
    let mut pos = skip_ws(text, 0);
    if !text[pos..].starts_with('[') {
        return Err(err(pos, "expected `[` to open a matrix"));
    }
    pos += 1;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    loop {
        pos = skip_ws(text, pos);
        if !text[pos..].starts_with('[') {
            return Err(err(pos, "expected `[` to open a matrix row"));
        }
        pos += 1;
        let close = text[pos..].find(']').ok_or_else(|| err(pos, "unterminated matrix row"))? + pos;
        let mut row = Vec::new();
        let mut entry_start = pos;
        for piece in text[pos..close].split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let value = parse_complex(piece).ok_or_else(|| {
                err(entry_start + lead, &format!("bad complex literal `{}`", piece.trim()))
            })?;
            row.push(value);
            entry_start += piece.len() + 1;
        }
        rows.push(row);
        pos = skip_ws(text, close + 1);
        if text[pos..].starts_with(',') {
            pos += 1;
        } else if text[pos..].starts_with(']') {
            pos += 1;
            break;
        } else {
            return Err(err(pos, "expected `,` or `]` after a matrix row"));
        }
    }
    let n = rows.len();
    if let Some(bad) = rows.iter().position(|r| r.len() != n) {
        return Err(err(0, &format!("matrix must be square: row {} has {} entries, expected {n}", bad + 1, rows[bad].len())));
    }
    let flat: Vec<Complex64> = rows.into_iter().flatten().collect();
    Ok((CMatrix::from_row_slice(n, n, &flat), pos))
}

fn skip_ws(text: &str, mut pos: usize) -> usize {
    while let Some(c) = text[pos..].chars().next() {
        if !c.is_whitespace() {
            break;
        }
        pos += c.len_utf8();
    }
    pos
}

/// Formats a complex number in the literal syntax with full precision.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.re == 0.0 {
        format!("{:?}i", z.im)
    } else if z.im < 0.0 {
        format!("{:?}{:?}i", z.re, z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

pub fn format_matrix(m: &CMatrix) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            let entries: Vec<String> = (0..m.ncols()).map(|j| format_complex(m[(i, j)])).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
