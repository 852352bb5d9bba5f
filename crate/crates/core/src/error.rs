use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

/// A square minor that certifies a failed unimodularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    /// Row indices (0-based) of the offending submatrix.
    pub rows: Vec<usize>,
    /// Column indices (0-based) of the offending submatrix.
    pub cols: Vec<usize>,
    /// Value of the minor.
    pub value: BigInt,
    /// When set, the minor of the reference base that `value` had to be a
    /// multiple of for every row to lie in the group that base generates.
    pub base_minor: Option<BigInt>,
}

impl fmt::Display for MinorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| (r + 1).to_string()).collect();
        let cols: Vec<String> = self.cols.iter().map(|c| (c + 1).to_string()).collect();
        write!(
            f,
            "minor on rows {{{}}} cols {{{}}} = {}",
            rows.join(","),
            cols.join(","),
            self.value
        )?;
        if let Some(base) = &self.base_minor {
            write!(f, " (not a multiple of base minor {})", base)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("rank deficiency: matrix has rank {rank}, expected {expected}")]
    Rank { rank: usize, expected: usize },

    #[error("row {} is the zero form", .row + 1)]
    ZeroForm { row: usize },

    #[error("not a unimodular system: {witness}")]
    NotUnimodular { witness: MinorWitness },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration cap exceeded: {what} needs {size}, cap is {cap}")]
    Cap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("graph is not connected")]
    Connectivity,

    #[error("degenerate system: {0}")]
    DegenerateSystem(String),

    #[error("vector {index} is not a point of the lattice")]
    Membership { index: usize },

    #[error("catalog: {0}")]
    Catalog(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
