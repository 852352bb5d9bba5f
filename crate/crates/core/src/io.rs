//! Matrix files.
//!
//! Text form: a header line `N n`, then `N` lines of `n` integers. Lines
//! starting with `#` are comments. A JSON object `{"rows": [[...]],
//! "labels": [...]}` is accepted wherever the text form is.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::system::UnimodularSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: IntMatrix,
    pub labels: Option<Vec<String>>,
}

#[derive(Deserialize, Serialize)]
struct JsonMatrix {
    rows: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn parse_json(text: &str) -> Result<MatrixFile> {
    let doc: JsonMatrix = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let cols = doc.rows.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(doc.rows.len());
    for (i, row) in doc.rows.iter().enumerate() {
        let parsed: Vec<BigInt> = row
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n.to_string().parse::<BigInt>().ok(),
                serde_json::Value::String(s) => s.trim().parse::<BigInt>().ok(),
                _ => None,
            })
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("row {} has a non-integer entry", i + 1),
            })?;
        rows.push(parsed);
    }
    let matrix = IntMatrix::from_big_rows(&rows, cols)?;
    if let Some(labels) = &doc.labels {
        if labels.len() != matrix.rows() {
            return Err(Error::Parse {
                line: 0,
                message: format!("{} labels for {} rows", labels.len(), matrix.rows()),
            });
        }
    }
    Ok(MatrixFile {
        matrix,
        labels: doc.labels,
    })
}

fn parse_text(text: &str) -> Result<MatrixFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing header line \"N n\"".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            line,
            message: "header must be \"N n\"".into(),
        })?;
    if dims.len() != 2 {
        return Err(Error::Parse {
            line,
            message: "header must be \"N n\"".into(),
        });
    }
    let (count, dim) = (dims[0], dims[1]);
    let mut rows = Vec::with_capacity(count);
    for (line, text) in lines {
        let row: Vec<BigInt> = text
            .split_whitespace()
            .map(|t| t.parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line,
                message: "expected integers".into(),
            })?;
        if row.len() != dim {
            return Err(Error::Parse {
                line,
                message: format!("expected {} entries, found {}", dim, row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != count {
        return Err(Error::Parse {
            line: 0,
            message: format!("header announces {} rows, found {}", count, rows.len()),
        });
    }
    Ok(MatrixFile {
        matrix: IntMatrix::from_big_rows(&rows, dim)?,
        labels: None,
    })
}

pub fn write_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let cells: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Text form of a system's standard matrix, with its labels as comments.
pub fn write_system(sys: &UnimodularSystem) -> String {
    let mut out = String::new();
    let base: Vec<String> = sys
        .base_rows()
        .iter()
        .map(|r| (r + 1).to_string())
        .collect();
    out.push_str(&format!("# base rows: {}\n", base.join(" ")));
    for (i, l) in sys.labels().iter().enumerate() {
        out.push_str(&format!("# form {}: {}\n", i + 1, l));
    }
    out.push_str(&write_matrix(sys.matrix()));
    out
}

pub fn write_system_json(sys: &UnimodularSystem) -> String {
    let doc = JsonMatrix {
        rows: sys
            .rows()
            .iter()
            .map(|r| r.iter().map(|&x| serde_json::Value::from(x)).collect())
            .collect(),
        labels: Some(sys.labels().to_vec()),
    };
    serde_json::to_string(&doc).expect("serializable")
}

/// Builds a system from a parsed file, keeping its labels if present.
pub fn system_from_file(file: &MatrixFile) -> Result<UnimodularSystem> {
    match &file.labels {
        Some(l) => UnimodularSystem::from_matrix_labeled(&file.matrix, l.clone()),
        None => UnimodularSystem::from_matrix(&file.matrix),
    }
}
