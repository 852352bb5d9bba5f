//! The lattice of a system: the image of the evaluation map
//! `u -> (ξ_1(u), ..., ξ_N(u))` intersected with `Z^N`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, hermite_rows, kernel_basis, IntMatrix};
use crate::system::UnimodularSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeModel {
    /// `N`; the lattice sits in `Z^N`.
    pub ambient_dim: usize,
    /// `N x n`; its columns are a basis of the lattice.
    pub basis_columns: IntMatrix,
    /// `AᵀA`.
    pub gram: IntMatrix,
    /// Saturated basis of the integer vectors orthogonal to the lattice.
    pub complement_basis: Vec<Vec<BigInt>>,
}

impl LatticeModel {
    pub fn of(sys: &UnimodularSystem) -> Self {
        let a = sys.matrix().clone();
        LatticeModel {
            ambient_dim: sys.len(),
            gram: a.gram(),
            complement_basis: kernel_basis(&a),
            basis_columns: a,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis_columns.cols()
    }

    /// Determinant of the Gram matrix.
    pub fn discriminant(&self) -> BigInt {
        if self.rank() == 0 {
            return BigInt::from(1);
        }
        determinant(&self.gram).expect("gram matrix is square")
    }

    /// Whether the integer vector `v` lies in the lattice.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.ambient_dim
            && self.complement_basis.iter().all(|z| {
                z.iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
                    .is_zero()
            })
    }

    /// Index of the sublattice generated by `vectors`, or `None` if they do
    /// not span a full-rank sublattice.
    pub fn sublattice_index(&self, vectors: &[Vec<BigInt>]) -> Result<Option<BigInt>> {
        for (index, v) in vectors.iter().enumerate() {
            if !self.contains(v) {
                return Err(Error::Membership { index });
            }
        }
        let h = hermite_rows(vectors);
        if h.len() != self.rank() {
            return Ok(None);
        }
        if h.is_empty() {
            return Ok(Some(BigInt::from(1)));
        }
        let m = IntMatrix::from_big_rows(&h, self.ambient_dim)?;
        let sub_disc = determinant(&m.transpose().gram())?;
        let disc = self.discriminant();
        let ratio = &sub_disc / &disc;
        debug_assert!((&sub_disc % &disc).is_zero());
        let index = ratio.sqrt();
        debug_assert_eq!(&index * &index, ratio);
        Ok(Some(index.abs()))
    }

    /// Whether `vectors` generate the whole lattice.
    pub fn generated_by(&self, vectors: &[Vec<BigInt>]) -> Result<bool> {
        Ok(self.sublattice_index(vectors)? == Some(BigInt::from(1)))
    }
}
