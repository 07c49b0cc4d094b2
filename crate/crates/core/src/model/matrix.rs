//! Matrix TSV files: a header line of dimensions (`T V` or `T d`), then one
//! tab-separated row of decimal floats per frame.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TsvMatrix {
    /// Header dimensions as written (e.g. `[T, V]`).
    pub dims: Vec<usize>,
    pub rows: Vec<Vec<f64>>,
}

pub fn parse_matrix_tsv(text: &str) -> Result<TsvMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::MalformedFile {
        what: "matrix",
        line: 1,
        detail: "missing header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|f| {
            f.parse().map_err(|e| Error::MalformedFile {
                what: "matrix",
                line: 1,
                detail: format!("bad dimension '{f}': {e}"),
            })
        })
        .collect::<Result<_>>()?;
    if dims.is_empty() {
        return Err(Error::MalformedFile {
            what: "matrix",
            line: 1,
            detail: "empty header".into(),
        });
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split('\t')
            .map(|f| {
                f.trim().parse().map_err(|e| Error::MalformedFile {
                    what: "matrix",
                    line: i + 1,
                    detail: format!("bad float '{f}': {e}"),
                })
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.len() != dims[0] {
        return Err(Error::MalformedFile {
            what: "matrix",
            line: 1,
            detail: format!("header promises {} rows, found {}", dims[0], rows.len()),
        });
    }
    Ok(TsvMatrix { dims, rows })
}

pub fn format_matrix_tsv(dims: &[usize], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    let header: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "{}", header.join("\t"));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
        let _ = writeln!(out, "{}", cells.join("\t"));
    }
    out
}
