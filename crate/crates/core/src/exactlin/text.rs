//! Plain-text matrix format: a line holding `d`, then `d` lines of `d`
//! whitespace-separated integers. Blank lines and `#` comments are ignored.

use num_bigint::BigInt;

use super::Matrix;
use crate::error::{Error, Result};

pub fn parse_matrix_text(text: &str) -> Result<Matrix<BigInt>> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .enumerate()
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let d: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("line 1: expected dimension, got {header:?}")))?;
    let mut data = Vec::with_capacity(d * d);
    for row in 0..d {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {d} rows, found {row}")))?;
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: BigInt = tok
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad integer {tok:?}", lineno + 1)))?;
            data.push(v);
        }
        if data.len() - before != d {
            return Err(Error::Parse(format!(
                "line {}: expected {d} entries, found {}",
                lineno + 1,
                data.len() - before
            )));
        }
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(Error::Parse(format!("line {}: trailing content after {d} rows", lineno + 1)));
    }
    Matrix::new(d, d, data)
}

pub fn format_matrix_text(m: &Matrix<BigInt>) -> String {
    let mut out = format!("{}\n", m.rows());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
