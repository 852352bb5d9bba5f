//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Small square
//! determinants take an `i128` fast path that falls back to `BigInt` the
//! moment an intermediate value would overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, MinorWitness, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers.
    ///
    /// Panics if the rows are ragged; use [`IntMatrix::try_from_rows`] for
    /// untrusted input.
    pub fn from_rows<R, T>(rows: &[R]) -> Self
    where
        R: AsRef<[T]>,
        T: Copy + Into<BigInt>,
    {
        Self::try_from_rows(rows).expect("rows must have equal length")
    }

    pub fn try_from_rows<R, T>(rows: &[R]) -> Result<Self>
    where
        R: AsRef<[T]>,
        T: Copy + Into<BigInt>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    r.len(),
                    cols
                )));
            }
            entries.extend(r.iter().map(|&x| x.into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of `BigInt`s; an empty list gives `0 x cols`.
    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    r.len(),
                    cols
                )));
            }
            entries.extend(r.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Entries as `i64`, or `None` if any entry does not fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(|x| x.to_i64()).collect()
    }

    /// Rows as `Vec<i64>`; panics if an entry does not fit.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| x.to_i64().expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · self`.
    pub fn gram(&self) -> IntMatrix {
        self.transpose().mul(self).expect("shapes agree")
    }

    /// Submatrix on the given rows and columns, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != below.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {} columns on {} columns",
                self.cols, below.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for r in 0..self.rows {
            let cells: Vec<String> = self
                .row(r)
                .iter()
                .map(|x| format!("{:>width$}", x.to_string(), width = width))
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if let Some(small) = m.to_i64() {
        let mut work: Vec<i128> = small.into_iter().map(i128::from).collect();
        if let Some(d) = det_i128(&mut work, m.rows) {
            return Ok(BigInt::from(d));
        }
    }
    Ok(bareiss_det(m.entries.clone(), m.rows))
}

fn bareiss_det(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = pick_pivot(k..n, |i| &a[i * n + k]) else {
            return BigInt::zero();
        };
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Bareiss determinant on a small working buffer; `None` on overflow.
pub(crate) fn det_i128(a: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n {
        let mut pivot = None;
        for i in k..n {
            let v = a[i * n + k];
            if v != 0 && pivot.is_none_or(|(_, best): (usize, i128)| v.abs() < best) {
                pivot = Some((i, v.abs()));
            }
        }
        let Some((p, _)) = pivot else {
            return Some(0);
        };
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let akk = a[k * n + k];
        for i in k + 1..n {
            let aik = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(akk)?
                    .checked_sub(aik.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
        }
        prev = akk;
    }
    let d = a[n * n - 1];
    Some(if negate { -d } else { d })
}

/// Determinant of a small `i64` matrix, exact at any size.
pub(crate) fn det_small(entries: &[i64], n: usize) -> BigInt {
    let mut work: Vec<i128> = entries.iter().map(|&x| i128::from(x)).collect();
    match det_i128(&mut work, n) {
        Some(d) => BigInt::from(d),
        None => bareiss_det(entries.iter().map(|&x| BigInt::from(x)).collect(), n),
    }
}

fn pick_pivot<'a, I, F>(range: I, at: F) -> Option<usize>
where
    I: Iterator<Item = usize>,
    F: Fn(usize) -> &'a BigInt,
{
    let mut best: Option<(usize, BigInt)> = None;
    for i in range {
        let v = at(i);
        if v.is_zero() {
            continue;
        }
        let mag = v.abs();
        if best.as_ref().is_none_or(|(_, b)| mag < *b) {
            best = Some((i, mag));
        }
    }
    best.map(|(i, _)| i)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pick_pivot(r..rows, |i| &a[i * cols + c]) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[i * cols + j] * &a[r * cols + c] - &a[i * cols + c] * &a[r * cols + j];
                a[i * cols + j] = v / &prev;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = a[r * cols + c].clone();
        r += 1;
    }
    r
}

/// Indices of the first maximal linearly independent set of rows, scanning
/// in row order.
pub fn first_row_basis(m: &IntMatrix) -> Vec<usize> {
    let cols = m.cols;
    // Echelon rows kept reduced as rational rows scaled to integers.
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut chosen = Vec::new();
    for r in 0..m.rows {
        let mut v = m.row(r).to_vec();
        for (pc, e) in &echelon {
            if v[*pc].is_zero() {
                continue;
            }
            let (a, b) = (e[*pc].clone(), v[*pc].clone());
            for j in 0..cols {
                v[j] = &v[j] * &a - &e[j] * &b;
            }
            let g = content(&v);
            if !g.is_zero() && !g.is_one() {
                for x in v.iter_mut() {
                    *x /= &g;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((pc, v));
            chosen.push(r);
            if chosen.len() == cols {
                break;
            }
        }
    }
    chosen
}

/// Greatest common divisor of the entries (non-negative).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`.
///
/// Returns the nonzero rows: each has a positive leading entry, leading
/// positions strictly increase, and entries above a leading entry lie in
/// `[0, leading)`.
pub fn hermite_rows(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = vectors.to_vec();
    let cols = a.first().map_or(0, |v| v.len());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        while let Some(p) = pick_pivot(r..a.len(), |i| &a[i][c]) {
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    a.truncate(r);
    for (k, &c) in pivots.iter().enumerate() {
        let pivot_row = a[k].clone();
        for row in a.iter_mut().take(k) {
            let q = row[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
    }
    a
}

/// Saturated integer basis of the left kernel `{ z in Z^rows : zᵀ m = 0 }`,
/// in Hermite normal form.
///
/// Unimodular row operations on `[m | I]` bring `m` to echelon form; the
/// identity-part of every row whose `m`-part vanished is a kernel vector, and
/// together they generate the whole kernel lattice, not a finite-index
/// sublattice of it.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (rows, cols) = (m.rows, m.cols);
    let width = cols + rows;
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let mut v = m.row(i).to_vec();
            v.extend((0..rows).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            v
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        while let Some(p) = pick_pivot(r..rows, |i| &a[i][c]) {
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for j in 0..width {
                    let t = &q * &pivot_row[j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !a[r][c].is_zero() {
            r += 1;
        }
    }
    let kernel: Vec<Vec<BigInt>> = a[r..].iter().map(|v| v[cols..].to_vec()).collect();
    hermite_rows(&kernel)
}

/// Adjugate `adj(m)`, so that `m · adj(m) = det(m) · I`.
pub fn adjugate(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("adjugate of a non-square matrix".into()));
    }
    let n = m.rows;
    if n == 1 {
        return Ok(IntMatrix::identity(1));
    }
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = determinant(&m.select(&rows, &cols))?;
            let value = if (i + j) % 2 == 0 { minor } else { -minor };
            adj.set(i, j, value);
        }
    }
    Ok(adj)
}

/// Solves `b · x = v` for a square `b` with `|det b| = 1`; the solution is
/// integral.
pub fn solve_unimodular(b: &IntMatrix, v: &[BigInt]) -> Result<Vec<BigInt>> {
    let det = determinant(b)?;
    if !det.abs().is_one() {
        return Err(Error::Precondition(format!(
            "solve_unimodular needs |det| = 1, got {}",
            det
        )));
    }
    let (num, den) = solve_scaled(b, v)?;
    Ok(num.into_iter().map(|x| x / &den).collect())
}

/// Solves `b · x = v` exactly for nonsingular square `b` by Cramer's rule.
///
/// Returns numerators and the common denominator `det b`, so that
/// `x_i = num_i / det`. Fails when `b` is singular.
pub fn solve_scaled(b: &IntMatrix, v: &[BigInt]) -> Result<(Vec<BigInt>, BigInt)> {
    if !b.is_square() || v.len() != b.rows {
        return Err(Error::Dimension(format!(
            "cannot solve a {}x{} system with a vector of length {}",
            b.rows,
            b.cols,
            v.len()
        )));
    }
    let det = determinant(b)?;
    if det.is_zero() {
        return Err(Error::Precondition("singular system".into()));
    }
    let n = b.rows;
    let mut num = Vec::with_capacity(n);
    for i in 0..n {
        let mut replaced = b.clone();
        for (r, x) in v.iter().enumerate() {
            replaced.set(r, i, x.clone());
        }
        num.push(determinant(&replaced)?);
    }
    Ok((num, det))
}

/// Expresses `v` as an integer combination `xᵀ b` of the rows of the square
/// nonsingular `b`; `Ok(None)` when `v` is outside the group those rows
/// generate.
pub fn solve_in_row_lattice(b: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let (num, den) = solve_scaled(&b.transpose(), v)?;
    if num.iter().all(|x| x.is_multiple_of(&den)) {
        Ok(Some(num.into_iter().map(|x| x / &den).collect()))
    } else {
        Ok(None)
    }
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Number of `k`-subsets of an `n`-set, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Streams every `k x k` minor of `m`, row sets outer and column sets inner,
/// both in lexicographic order.
pub fn square_minors(m: &IntMatrix, k: usize) -> Result<SquareMinors<'_>> {
    if k == 0 || k > m.rows.min(m.cols) {
        return Err(Error::Dimension(format!(
            "minor size {} out of range for a {}x{} matrix",
            k, m.rows, m.cols
        )));
    }
    Ok(SquareMinors {
        m,
        small: m.to_i64(),
        rows: (0..k).collect(),
        cols: (0..k).collect(),
        done: false,
        buf: Vec::with_capacity(k * k),
    })
}

pub struct SquareMinors<'a> {
    m: &'a IntMatrix,
    small: Option<Vec<i64>>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    done: bool,
    buf: Vec<i64>,
}

impl SquareMinors<'_> {
    /// Row and column sets of the minor the next call to `next` yields.
    pub fn position(&self) -> Option<(&[usize], &[usize])> {
        (!self.done).then_some((&self.rows[..], &self.cols[..]))
    }
}

impl Iterator for SquareMinors<'_> {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.done {
            return None;
        }
        let k = self.rows.len();
        let value = match &self.small {
            Some(small) => {
                self.buf.clear();
                for &r in &self.rows {
                    for &c in &self.cols {
                        self.buf.push(small[r * self.m.cols + c]);
                    }
                }
                det_small(&self.buf, k)
            }
            None => bareiss_det(self.m.select(&self.rows, &self.cols).entries, k),
        };
        if !next_combination(&mut self.cols, self.m.cols) {
            self.cols = (0..k).collect();
            if !next_combination(&mut self.rows, self.m.rows) {
                self.done = true;
            }
        }
        Some(value)
    }
}

/// First square minor (by size, then row set, then column set) outside
/// `{-1, 0, 1}`, or `None` when the matrix is totally unimodular.
pub fn find_non_tu_minor(m: &IntMatrix) -> Option<MinorWitness> {
    for k in 1..=m.rows.min(m.cols) {
        let mut minors = square_minors(m, k).expect("k in range");
        while let Some((rows, cols)) = minors.position().map(|(r, c)| (r.to_vec(), c.to_vec())) {
            let value = minors.next().expect("position implies a value");
            if value.abs() > BigInt::one() {
                return Some(MinorWitness {
                    rows,
                    cols,
                    value,
                    base_minor: None,
                });
            }
        }
    }
    None
}

pub fn is_totally_unimodular(m: &IntMatrix) -> bool {
    find_non_tu_minor(m).is_none()
}
