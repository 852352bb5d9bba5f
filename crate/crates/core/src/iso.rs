//! Isomorphisms between unimodular systems.
//!
//! A correspondence from `a` to `b` is a base change `M` together with a
//! bijection of forms and signs such that
//! `b.rows()[permutation[i]] == signs[i] * (a.rows()[i] · M)` for every `i`.
//!
//! Because `a` is stored in standard form, `M` is determined by where the
//! base forms of `a` go: row `k` of `M` is the (signed) image of the `k`-th
//! base form. The search assigns those images one at a time, drawing from
//! the distinct forms of `b`, and prunes as soon as some form of `a` whose
//! coordinates are all assigned maps outside the forms of `b`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::linalg::IntMatrix;
use crate::system::UnimodularSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCorrespondence {
    pub permutation: Vec<usize>,
    pub signs: Vec<i8>,
    pub base_change: IntMatrix,
}

impl SignedCorrespondence {
    /// Checks the defining identity row by row.
    pub fn verify(&self, a: &UnimodularSystem, b: &UnimodularSystem) -> bool {
        if a.len() != b.len() || a.dim() != b.dim() || self.permutation.len() != a.len() {
            return false;
        }
        let mut hit = vec![false; b.len()];
        for &p in &self.permutation {
            if p >= b.len() || hit[p] {
                return false;
            }
            hit[p] = true;
        }
        let image = match a.matrix().mul(&self.base_change) {
            Ok(m) => m,
            Err(_) => return false,
        };
        (0..a.len()).all(|i| {
            let sign = BigInt::from(self.signs[i]);
            image
                .row(i)
                .iter()
                .zip(b.matrix().row(self.permutation[i]))
                .all(|(x, y)| &(x * &sign) == y)
        })
    }
}

/// Invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoInvariants {
    pub len: usize,
    pub dim: usize,
    pub complexity: BigInt,
    pub class_sizes: Vec<usize>,
    pub row_weights: Vec<BigInt>,
}

impl IsoInvariants {
    pub fn of(sys: &UnimodularSystem) -> Self {
        let mut class_sizes: Vec<usize> = sys.multiplicity_classes().iter().map(Vec::len).collect();
        class_sizes.sort_unstable();
        let mut row_weights = sys.row_weights();
        row_weights.sort();
        IsoInvariants {
            len: sys.len(),
            dim: sys.dim(),
            complexity: sys.complexity(),
            class_sizes,
            row_weights,
        }
    }
}

/// First correspondence from `a` to `b` in search order, if any.
pub fn are_isomorphic(
    a: &UnimodularSystem,
    b: &UnimodularSystem,
    cap: usize,
) -> Result<Option<SignedCorrespondence>> {
    a.check_cap("isomorphism search", cap)?;
    b.check_cap("isomorphism search", cap)?;
    if IsoInvariants::of(a) != IsoInvariants::of(b) {
        return Ok(None);
    }
    let search = Search::new(a, b);
    let mut found = None;
    search.run(&mut |images| {
        found = Some(search.correspondence(images));
        false
    });
    Ok(found)
}

/// Number of correspondences from `sys` to itself.
///
/// The global sign flip (`M = -E`, all signs negative) counts as its own
/// automorphism, and permutations inside a class of equal forms are
/// distinct automorphisms.
pub fn automorphism_count(sys: &UnimodularSystem, cap: usize) -> Result<BigInt> {
    sys.check_cap("automorphism count", cap)?;
    let search = Search::new(sys, sys);
    let mut base_changes = 0u64;
    search.run(&mut |_| {
        base_changes += 1;
        true
    });
    let mut total = BigInt::from(base_changes);
    for (_, members) in &search.classes {
        total *= factorial(members.len());
    }
    Ok(total)
}

/// Every base change `M` realizing an automorphism of `sys`, in search order.
pub fn automorphism_base_changes(sys: &UnimodularSystem, cap: usize) -> Result<Vec<IntMatrix>> {
    sys.check_cap("automorphism enumeration", cap)?;
    let search = Search::new(sys, sys);
    let mut out = Vec::new();
    search.run(&mut |images| {
        out.push(search.base_change(images));
        true
    });
    Ok(out)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

struct Search<'a> {
    a: &'a UnimodularSystem,
    /// Distinct forms of `b` with the rows carrying them.
    classes: Vec<(Vec<i64>, Vec<usize>)>,
    class_of: HashMap<Vec<i64>, usize>,
    /// Rows of `a` whose last nonzero coordinate is `k`, indexed by `k`.
    ready_at: Vec<Vec<usize>>,
}

/// Choice for one base form of `a`: a class of `b` and a sign.
type Image = (usize, i64);

impl<'a> Search<'a> {
    fn new(a: &'a UnimodularSystem, b: &UnimodularSystem) -> Self {
        let mut classes: Vec<(Vec<i64>, Vec<usize>)> = Vec::new();
        let mut class_of: HashMap<Vec<i64>, usize> = HashMap::new();
        for (i, row) in b.rows().iter().enumerate() {
            match class_of.get(row) {
                Some(&c) => classes[c].1.push(i),
                None => {
                    class_of.insert(row.clone(), classes.len());
                    classes.push((row.clone(), vec![i]));
                }
            }
        }
        let mut ready_at = vec![Vec::new(); a.dim()];
        for (i, row) in a.rows().iter().enumerate() {
            if let Some(last) = row.iter().rposition(|&x| x != 0) {
                ready_at[last].push(i);
            }
        }
        Search {
            a,
            classes,
            class_of,
            ready_at,
        }
    }

    /// Calls `visit` on every complete assignment whose image multiset
    /// equals the forms of `b`; stops when `visit` returns `false`.
    fn run(&self, visit: &mut dyn FnMut(&[Image]) -> bool) {
        if self.a.is_empty() {
            visit(&[]);
            return;
        }
        let mut images = Vec::with_capacity(self.a.dim());
        let mut used = vec![false; self.classes.len()];
        self.descend(&mut images, &mut used, visit);
    }

    fn descend(
        &self,
        images: &mut Vec<Image>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[Image]) -> bool,
    ) -> bool {
        let depth = images.len();
        if depth == self.a.dim() {
            if self.multiset_matches(images) {
                return visit(images);
            }
            return true;
        }
        for class in 0..self.classes.len() {
            if used[class] {
                continue;
            }
            for sign in [1i64, -1] {
                images.push((class, sign));
                if self.partial_ok(images) {
                    used[class] = true;
                    let go_on = self.descend(images, used, visit);
                    used[class] = false;
                    if !go_on {
                        images.pop();
                        return false;
                    }
                }
                images.pop();
            }
        }
        true
    }

    fn image_of(&self, row: &[i64], images: &[Image]) -> Vec<i64> {
        let dim = self.a.dim();
        let mut v = vec![0i64; dim];
        for (k, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (class, sign) = images[k];
            let m = &self.classes[class].0;
            for j in 0..dim {
                v[j] += x * sign * m[j];
            }
        }
        normalize(&mut v);
        v
    }

    fn partial_ok(&self, images: &[Image]) -> bool {
        let k = images.len() - 1;
        self.ready_at[k].iter().all(|&i| {
            let v = self.image_of(&self.a.rows()[i], images);
            self.class_of.contains_key(&v)
        })
    }

    fn multiset_matches(&self, images: &[Image]) -> bool {
        let mut counts = vec![0usize; self.classes.len()];
        for row in self.a.rows() {
            let v = self.image_of(row, images);
            match self.class_of.get(&v) {
                Some(&c) => counts[c] += 1,
                None => return false,
            }
        }
        counts
            .iter()
            .zip(&self.classes)
            .all(|(&n, (_, members))| n == members.len())
    }

    fn base_change(&self, images: &[Image]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = images
            .iter()
            .map(|&(class, sign)| self.classes[class].0.iter().map(|&x| x * sign).collect())
            .collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::from_rows(&rows)
        }
    }

    fn correspondence(&self, images: &[Image]) -> SignedCorrespondence {
        let base_change = self.base_change(images);
        let mut next_member = vec![0usize; self.classes.len()];
        let mut permutation = Vec::with_capacity(self.a.len());
        let mut signs = Vec::with_capacity(self.a.len());
        let dim = self.a.dim();
        for row in self.a.rows() {
            let mut v = vec![0i64; dim];
            for (k, &x) in row.iter().enumerate() {
                let (class, sign) = images[k];
                for (vj, &f) in v.iter_mut().zip(&self.classes[class].0) {
                    *vj += x * sign * f;
                }
            }
            let sign = leading_sign(&v);
            normalize(&mut v);
            let c = self.class_of[&v];
            permutation.push(self.classes[c].1[next_member[c]]);
            next_member[c] += 1;
            signs.push(sign as i8);
        }
        SignedCorrespondence {
            permutation,
            signs,
            base_change,
        }
    }
}

fn leading_sign(v: &[i64]) -> i64 {
    v.iter().find(|&&x| x != 0).map_or(1, |x| x.signum())
}

fn normalize(v: &mut [i64]) {
    if leading_sign(v) < 0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Applies a signed relabeling and a base change to `sys`; handy for
/// producing isomorphic copies.
pub fn transform(
    sys: &UnimodularSystem,
    permutation: &[usize],
    signs: &[i8],
    base_change: &IntMatrix,
) -> Result<UnimodularSystem> {
    let image = sys.matrix().mul(base_change)?;
    let mut rows = vec![Vec::new(); sys.len()];
    for i in 0..sys.len() {
        let sign = BigInt::from(signs[i]);
        rows[permutation[i]] = image.row(i).iter().map(|x| x * &sign).collect();
    }
    UnimodularSystem::from_matrix(&IntMatrix::from_big_rows(&rows, sys.dim())?)
}
