//! Plain-text matrices and vectors.
//!
//! A matrix file starts with a `d n` header followed by `d` rows of `n`
//! whitespace-separated integers. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::path::Path;

use semihole_core::{GeneratorMatrix, Point};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Core(#[from] semihole_core::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((k + 1, l))
    })
}

fn parse_ints(line: usize, s: &str) -> Result<Vec<i64>, FormatError> {
    s.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| syntax(line, format!("not an integer: {t:?}")))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<GeneratorMatrix, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing \"d n\" header"))?;
    let dims = parse_ints(hl, header)?;
    let [d, n] = dims[..] else {
        return Err(syntax(hl, "header must be \"d n\""));
    };
    if d < 1 || n < 1 {
        return Err(syntax(hl, "dimensions must be positive"));
    }
    let mut rows = Vec::new();
    for (k, l) in lines {
        let row = parse_ints(k, l)?;
        if row.len() != n as usize {
            return Err(syntax(
                k,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != d as usize {
        return Err(syntax(
            hl,
            format!("expected {d} rows, found {}", rows.len()),
        ));
    }
    Ok(GeneratorMatrix::from_rows(&rows)?)
}

pub fn read_matrix(path: &Path) -> Result<GeneratorMatrix, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix(&text)
}

pub fn write_matrix(a: &GeneratorMatrix) -> String {
    let mut out = format!("{} {}\n", a.dim(), a.len());
    for i in 0..a.dim() {
        let row: Vec<String> = a.entries().row(i).iter().map(i64::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn parse_vector(text: &str) -> Result<Point, FormatError> {
    let mut lines = content_lines(text);
    let (k, l) = lines.next().ok_or_else(|| syntax(1, "empty vector"))?;
    if let Some((k2, _)) = lines.next() {
        return Err(syntax(k2, "a vector is a single line"));
    }
    Ok(Point::from(parse_ints(k, l)?))
}

pub fn write_vector(p: &Point) -> String {
    let v: Vec<String> = p.iter().map(i64::to_string).collect();
    v.join(" ")
}
