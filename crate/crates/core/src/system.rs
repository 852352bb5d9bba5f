//! Unimodular systems of linear forms.
//!
//! A system with `N` forms on an `n`-dimensional space is stored as its
//! `N x n` coefficient matrix over a base of the group the forms generate.
//! The base rows read as the identity, so the matrix is in standard form
//! `[E; Ã]` up to row order. Every stored row has a positive first nonzero
//! entry; the sign that was divided out is kept in [`UnimodularSystem::orientation`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, MinorWitness, Result};
use crate::linalg::{
    self, adjugate, determinant, find_non_tu_minor, first_row_basis, next_combination, rank,
    IntMatrix,
};

/// Largest number of forms for which bases, isomorphisms and automorphisms
/// are enumerated unless the caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularSystem {
    dim: usize,
    matrix: IntMatrix,
    rows: Vec<Vec<i64>>,
    base_rows: Vec<usize>,
    labels: Vec<String>,
    orientation: Vec<i8>,
}

/// Result of splitting off the `Υ` summands of a system.
#[derive(Clone, Debug)]
pub struct UpsilonSplit {
    /// The system without `Υ` summands; the empty system if nothing is left.
    pub core: UnimodularSystem,
    /// Number of `Υ` summands split off.
    pub count: usize,
    /// Rows of the original system carrying the `Υ` summands.
    pub removed_rows: Vec<usize>,
    /// For each row of `core`, the row of the original system it came from.
    pub core_rows: Vec<usize>,
}

impl UnimodularSystem {
    /// Verifies and standardizes a system given by the coefficients of its
    /// forms (one row per form) in an arbitrary basis.
    ///
    /// The first maximal independent set of rows is taken as the base; every
    /// row is re-expanded over it. The input is accepted exactly when all
    /// expansions are integral and the re-expanded matrix is totally
    /// unimodular, i.e. when every base of rows generates the same group.
    pub fn from_matrix(raw: &IntMatrix) -> Result<Self> {
        let labels = (1..=raw.rows()).map(|i| i.to_string()).collect();
        Self::from_matrix_labeled(raw, labels)
    }

    pub fn from_matrix_labeled(raw: &IntMatrix, labels: Vec<String>) -> Result<Self> {
        let (count, dim) = (raw.rows(), raw.cols());
        if count == 0 || dim == 0 {
            return Err(Error::Dimension(format!(
                "a system needs at least one form and one dimension, got {}x{}",
                count, dim
            )));
        }
        if labels.len() != count {
            return Err(Error::Dimension(format!(
                "{} labels for {} forms",
                labels.len(),
                count
            )));
        }
        if let Some(row) = (0..count).find(|&r| raw.row(r).iter().all(Zero::is_zero)) {
            return Err(Error::ZeroForm { row });
        }
        let r = rank(raw);
        if r != dim {
            return Err(Error::Rank {
                rank: r,
                expected: dim,
            });
        }

        let base = first_row_basis(raw);
        debug_assert_eq!(base.len(), dim);
        let base_matrix = raw.select_rows(&base);
        let base_t = base_matrix.transpose();
        let mut expanded = IntMatrix::zeros(count, dim);
        for i in 0..count {
            if let Some(k) = base.iter().position(|&b| b == i) {
                expanded.set(i, k, BigInt::one());
                continue;
            }
            let (num, den) = linalg::solve_scaled(&base_t, raw.row(i))?;
            for (k, x) in num.iter().enumerate() {
                if !x.is_multiple_of(&den) {
                    let mut rows = base.clone();
                    rows[k] = i;
                    return Err(Error::NotUnimodular {
                        witness: MinorWitness {
                            rows,
                            cols: (0..dim).collect(),
                            value: x.clone(),
                            base_minor: Some(den),
                        },
                    });
                }
                expanded.set(i, k, x / &den);
            }
        }

        let tail: Vec<usize> = (0..count).filter(|i| !base.contains(i)).collect();
        if !tail.is_empty() {
            if let Some(mut w) = find_non_tu_minor(&expanded.select_rows(&tail)) {
                w.rows = w.rows.iter().map(|&t| tail[t]).collect();
                return Err(Error::NotUnimodular { witness: w });
            }
        }

        Ok(Self::normalized(expanded, base, labels))
    }

    fn normalized(mut matrix: IntMatrix, base_rows: Vec<usize>, labels: Vec<String>) -> Self {
        let (count, dim) = (matrix.rows(), matrix.cols());
        let mut orientation = vec![1i8; count];
        for (i, sign) in orientation.iter_mut().enumerate() {
            let lead = matrix.row(i).iter().find(|x| !x.is_zero()).cloned();
            if lead.is_some_and(|x| x < BigInt::zero()) {
                *sign = -1;
                for c in 0..dim {
                    let v = -matrix.get(i, c);
                    matrix.set(i, c, v);
                }
            }
        }
        let rows = matrix.to_i64_rows();
        UnimodularSystem {
            dim,
            matrix,
            rows,
            base_rows,
            labels,
            orientation,
        }
    }

    /// The system with no forms on the zero space.
    pub fn empty() -> Self {
        UnimodularSystem {
            dim: 0,
            matrix: IntMatrix::zeros(0, 0),
            rows: Vec::new(),
            base_rows: Vec::new(),
            labels: Vec::new(),
            orientation: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Dimension `n` of the underlying space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number `N` of forms.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Standard-form coefficient matrix, sign-normalized.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Rows of [`Self::matrix`] as machine integers (all entries are 0 or ±1).
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Row indices whose rows form the identity, in column order.
    pub fn base_rows(&self) -> &[usize] {
        &self.base_rows
    }

    /// Row indices outside the base, in row order; these rows form `Ã`.
    pub fn tail_rows(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|i| !self.base_rows.contains(i))
            .collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Sign each stored row was multiplied by during normalization.
    pub fn orientation(&self) -> &[i8] {
        &self.orientation
    }

    /// The standard-form matrix with the normalization signs put back, i.e.
    /// the rows exactly as they were expanded from the input.
    pub fn oriented_matrix(&self) -> IntMatrix {
        let mut m = self.matrix.clone();
        for (i, &s) in self.orientation.iter().enumerate() {
            if s < 0 {
                for c in 0..self.dim {
                    let v = -m.get(i, c);
                    m.set(i, c, v);
                }
            }
        }
        m
    }

    /// Gram matrix `AᵀA` of the coefficient matrix.
    pub fn gram(&self) -> IntMatrix {
        self.matrix.gram()
    }

    /// Number of bases, computed as `det(AᵀA)`.
    pub fn complexity(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::one();
        }
        determinant(&self.gram()).expect("gram matrix is square")
    }

    /// Every `n`-subset of rows with nonzero determinant, in lexicographic
    /// order.
    pub fn enumerate_bases(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        self.check_cap("base enumeration", cap)?;
        let (count, dim) = (self.len(), self.dim);
        if dim == 0 {
            return Ok(vec![Vec::new()]);
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..dim).collect();
        let mut buf = Vec::with_capacity(dim * dim);
        loop {
            buf.clear();
            for &r in &idx {
                buf.extend_from_slice(&self.rows[r]);
            }
            if !linalg::det_small(&buf, dim).is_zero() {
                out.push(idx.clone());
            }
            if !next_combination(&mut idx, count) {
                break;
            }
        }
        Ok(out)
    }

    pub(crate) fn check_cap(&self, what: &'static str, cap: usize) -> Result<()> {
        if self.len() > cap {
            Err(Error::Cap {
                what,
                size: self.len(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// For every row, the number of bases containing it, computed as
    /// `a_i · adj(AᵀA) · a_iᵀ` without enumerating bases.
    pub fn row_weights(&self) -> Vec<BigInt> {
        if self.is_empty() {
            return Vec::new();
        }
        let adj = adjugate(&self.gram()).expect("gram matrix is square");
        self.rows
            .iter()
            .map(|row| {
                let mut acc = BigInt::zero();
                for (i, &x) in row.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in row.iter().enumerate() {
                        if y != 0 {
                            acc += adj.get(i, j) * (x * y);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Groups of row indices whose forms agree up to sign, ordered by first
    /// member.
    pub fn multiplicity_classes(&self) -> Vec<Vec<usize>> {
        let mut first_seen: BTreeMap<&[i64], usize> = BTreeMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            match first_seen.get(row.as_slice()) {
                Some(&c) => classes[c].push(i),
                None => {
                    first_seen.insert(row, classes.len());
                    classes.push(vec![i]);
                }
            }
        }
        classes
    }

    /// Block-diagonal sum; the forms of `other` follow those of `self`.
    pub fn direct_sum(&self, other: &UnimodularSystem) -> UnimodularSystem {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let dim = self.dim + other.dim;
        let mut m = IntMatrix::zeros(self.len() + other.len(), dim);
        for (i, row) in self.oriented_matrix().row_vecs().into_iter().enumerate() {
            for (c, x) in row.into_iter().enumerate() {
                m.set(i, c, x);
            }
        }
        for (i, row) in other.oriented_matrix().row_vecs().into_iter().enumerate() {
            for (c, x) in row.into_iter().enumerate() {
                m.set(self.len() + i, self.dim + c, x);
            }
        }
        let mut base_rows = self.base_rows.clone();
        base_rows.extend(other.base_rows.iter().map(|&r| r + self.len()));
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        // Both blocks are already standard over their base rows.
        Self::normalized(m, base_rows, labels)
    }

    /// Splits `self = core ⊕ Υ^count`.
    ///
    /// A `Υ` summand is a base row whose column in `Ã` vanishes: the form
    /// lies in every base.
    pub fn split_upsilon(&self) -> UpsilonSplit {
        let tail = self.tail_rows();
        let upsilon_cols: Vec<usize> = (0..self.dim)
            .filter(|&k| tail.iter().all(|&t| self.rows[t][k] == 0))
            .collect();
        let removed_rows: Vec<usize> = upsilon_cols.iter().map(|&k| self.base_rows[k]).collect();
        let keep_cols: Vec<usize> = (0..self.dim)
            .filter(|k| !upsilon_cols.contains(k))
            .collect();
        let core_rows: Vec<usize> = (0..self.len())
            .filter(|r| !removed_rows.contains(r))
            .collect();
        let core = if keep_cols.is_empty() {
            UnimodularSystem::empty()
        } else {
            let m = self.oriented_matrix().select(&core_rows, &keep_cols);
            let base_rows = keep_cols
                .iter()
                .map(|&k| {
                    let r = self.base_rows[k];
                    core_rows
                        .iter()
                        .position(|&x| x == r)
                        .expect("base row kept")
                })
                .collect();
            let labels = core_rows.iter().map(|&r| self.labels[r].clone()).collect();
            Self::normalized(m, base_rows, labels)
        };
        UpsilonSplit {
            core,
            count: upsilon_cols.len(),
            removed_rows,
            core_rows,
        }
    }

    /// The Gale dual system on the orthogonal complement.
    pub fn gale_dual(&self) -> UnimodularSystem {
        self.gale_dual_indexed().0
    }

    /// The Gale dual together with, for each of its rows, the row of `self`
    /// it corresponds to.
    ///
    /// With `self` in standard form `[E; Ã]`, the dual has rows `Ãᵀ` for the
    /// base forms and `-E` for the rest; zero rows, which come exactly from
    /// `Υ` summands, are dropped.
    pub fn gale_dual_indexed(&self) -> (UnimodularSystem, Vec<usize>) {
        let tail = self.tail_rows();
        let codim = tail.len();
        if codim == 0 {
            return (UnimodularSystem::empty(), Vec::new());
        }
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut source = Vec::new();
        for i in 0..self.len() {
            let row: Vec<i64> = match self.base_rows.iter().position(|&b| b == i) {
                Some(k) => tail.iter().map(|&t| self.rows[t][k]).collect(),
                None => {
                    let p = tail.iter().position(|&t| t == i).expect("tail row");
                    (0..codim).map(|q| if q == p { -1 } else { 0 }).collect()
                }
            };
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
                source.push(i);
            }
        }
        let labels = source.iter().map(|&i| self.labels[i].clone()).collect();
        let dual = Self::from_matrix_labeled(&IntMatrix::from_rows(&rows), labels)
            .expect("Gale dual of a unimodular system is unimodular");
        (dual, source)
    }
}
