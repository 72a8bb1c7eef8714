//! Text formats for matrices.
//!
//! Dense: one row per line, entries separated by whitespace, each entry
//! `re` or `re,im`; `#` starts a comment. Block layout: Jordan blocks joined
//! by `⊕` (or `+`), e.g. `J(3,0.53,0.53) ⊕ J(1,-0.2,0)`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::jet::{jordan_matrix, JetPoint, SquareMatrix};

pub fn parse_matrix(text: &str) -> Result<SquareMatrix> {
    let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n");
    if body.contains("J(") {
        parse_blocks(&body).map(|b| jordan_matrix(&b))
    } else {
        parse_dense(&body)
    }
}

fn num(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{}`", s.trim())))
}

fn parse_entry(s: &str) -> Result<C64> {
    match s.split_once(',') {
        Some((re, im)) => Ok(C64::new(num(re)?, num(im)?)),
        None => Ok(C64::new(num(s)?, 0.0)),
    }
}

pub fn parse_dense(text: &str) -> Result<SquareMatrix> {
    let rows: Vec<Vec<C64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(parse_entry).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("matrix is not square".into()));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// Jordan blocks of a block layout, in order.
pub fn parse_blocks(text: &str) -> Result<Vec<JetPoint>> {
    let norm = text.replace('⊕', "+");
    let mut out = Vec::new();
    for part in norm.split('+').map(str::trim).filter(|p| !p.is_empty()) {
        let inner = part
            .strip_prefix("J(")
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected J(k,re,im), got `{part}`")))?;
        let f: Vec<&str> = inner.split(',').collect();
        if f.len() != 3 {
            return Err(Error::Parse(format!("expected three fields in `{part}`")));
        }
        let k: usize = f[0].trim().parse().map_err(|_| Error::Parse(format!("bad block size `{}`", f[0])))?;
        if k == 0 {
            return Err(Error::Parse("block size must be positive".into()));
        }
        out.push(JetPoint::new(C64::new(num(f[1])?, num(f[2])?), k));
    }
    if out.is_empty() {
        return Err(Error::Parse("no blocks".into()));
    }
    Ok(out)
}
