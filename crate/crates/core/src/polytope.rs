//! The polytope `Δ = { w in W : |ξ_i(w)| <= 1 }` of a system.
//!
//! The forms are the coordinates of `Z^N`, so the lattice points of `Δ` are
//! exactly the vectors of `{-1, 0, 1}^N` lying in `W`. They are found by a
//! depth-first scan of the cube that keeps running dot products with the
//! complement basis and abandons a prefix as soon as some dot product can
//! no longer return to zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeModel;
use crate::linalg::{adjugate, determinant, rank, IntMatrix};
use crate::system::UnimodularSystem;

/// Largest `N` for the `3^N` lattice-point scan.
pub const DEFAULT_SCAN_CAP: usize = 18;
/// Largest `N` for the `2^N` zonotope check.
pub const DEFAULT_SIGN_SCAN_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub coords: Vec<i8>,
    /// Squared length, i.e. number of nonzero coordinates.
    pub square: usize,
    /// Coordinates in the column basis of the lattice.
    pub coefficients: Vec<i64>,
    pub is_vertex: bool,
}

impl LatticePoint {
    pub fn to_big(&self) -> Vec<BigInt> {
        self.coords.iter().map(|&x| BigInt::from(x)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    /// `+1` for `ξ = 1`, `-1` for `ξ = -1`.
    pub side: i8,
    /// Indices into the point list.
    pub points: Vec<usize>,
    /// Indices into the point list.
    pub vertices: Vec<usize>,
}

/// The two parallel facets cut out by one distinct form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetPair {
    /// Rows carrying this form (a multiplicity class).
    pub rows: Vec<usize>,
    pub form: Vec<i64>,
    pub upper: Facet,
    pub lower: Facet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum MinimumSquare {
    Exact(usize),
    /// No vector of square at most 4 exists; only the bound is known.
    AtLeast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortVectorCensus {
    /// Vectors of square 1, counted with sign.
    pub units: usize,
    /// Vectors of square 2, counted with sign.
    pub roots: usize,
    /// Vectors of square 3, counted with sign.
    pub square3: usize,
    /// `None` for the zero lattice.
    pub minimum: Option<MinimumSquare>,
}

impl ShortVectorCensus {
    pub fn units_up_to_sign(&self) -> usize {
        self.units / 2
    }

    pub fn roots_up_to_sign(&self) -> usize {
        self.roots / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeReport {
    /// Sorted lexicographically; includes the origin.
    pub points: Vec<LatticePoint>,
    /// Number of nonzero points per square.
    pub census: BTreeMap<usize, usize>,
    pub vertex_count: usize,
    pub facets: Vec<FacetPair>,
    pub zonotope_verified: bool,
    pub reflexive_verified: bool,
}

impl PolytopeReport {
    pub fn vertices(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter().filter(|p| p.is_vertex)
    }

    pub fn facet_count(&self) -> usize {
        2 * self.facets.len()
    }
}

/// Limits for the exponential scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanCaps {
    pub points: usize,
    pub signs: usize,
}

impl Default for ScanCaps {
    fn default() -> Self {
        ScanCaps {
            points: DEFAULT_SCAN_CAP,
            signs: DEFAULT_SIGN_SCAN_CAP,
        }
    }
}

/// All lattice points of `Δ`, sorted lexicographically, with vertices
/// flagged.
pub fn polytope_points(sys: &UnimodularSystem, cap: usize) -> Result<Vec<LatticePoint>> {
    sys.check_cap("lattice-point scan", cap)?;
    let lat = LatticeModel::of(sys);
    let complement: Vec<Vec<i64>> = lat
        .complement_basis
        .iter()
        .map(|z| z.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Dimension("complement basis entries exceed i64".into()))?;
    let coords = scan_cube(&complement, sys.len());

    let base = sys.base_rows();
    let mut points: Vec<LatticePoint> = coords
        .into_par_iter()
        .map(|z| {
            let coefficients: Vec<i64> = base.iter().map(|&r| i64::from(z[r])).collect();
            let is_vertex = is_vertex(sys, &z);
            LatticePoint {
                square: z.iter().filter(|&&x| x != 0).count(),
                coords: z,
                coefficients,
                is_vertex,
            }
        })
        .collect();
    points.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(points)
}

/// Vectors of `{-1,0,1}^len` orthogonal to every row of `complement`.
fn scan_cube(complement: &[Vec<i64>], len: usize) -> Vec<Vec<i8>> {
    // Largest change still possible from position `pos` onwards.
    let reach: Vec<Vec<i64>> = complement
        .iter()
        .map(|z| {
            let mut r = vec![0i64; len + 1];
            for pos in (0..len).rev() {
                r[pos] = r[pos + 1] + z[pos].abs();
            }
            r
        })
        .collect();

    let split = len.min(6);
    let prefixes: Vec<Vec<i8>> = (0..3usize.pow(split as u32))
        .map(|mut code| {
            (0..split)
                .map(|_| {
                    let digit = (code % 3) as i8 - 1;
                    code /= 3;
                    digit
                })
                .collect()
        })
        .collect();

    prefixes
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut sums = vec![0i64; complement.len()];
            for (pos, &x) in prefix.iter().enumerate() {
                for (s, z) in sums.iter_mut().zip(complement) {
                    *s += i64::from(x) * z[pos];
                }
            }
            let mut out = Vec::new();
            if sums
                .iter()
                .zip(&reach)
                .all(|(s, r)| s.abs() <= r[prefix.len()])
            {
                let mut z = prefix.clone();
                z.resize(len, 0);
                descend(
                    complement,
                    &reach,
                    prefix.len(),
                    &mut z,
                    &mut sums,
                    &mut out,
                );
            }
            out
        })
        .collect()
}

fn descend(
    complement: &[Vec<i64>],
    reach: &[Vec<i64>],
    pos: usize,
    z: &mut Vec<i8>,
    sums: &mut [i64],
    out: &mut Vec<Vec<i8>>,
) {
    if pos == z.len() {
        if sums.iter().all(|&s| s == 0) {
            out.push(z.clone());
        }
        return;
    }
    for x in [-1i8, 0, 1] {
        z[pos] = x;
        let mut feasible = true;
        for (j, zrow) in complement.iter().enumerate() {
            sums[j] += i64::from(x) * zrow[pos];
            if sums[j].abs() > reach[j][pos + 1] {
                feasible = false;
            }
        }
        if feasible {
            descend(complement, reach, pos + 1, z, sums, out);
        }
        for (j, zrow) in complement.iter().enumerate() {
            sums[j] -= i64::from(x) * zrow[pos];
        }
    }
    z[pos] = 0;
}

fn is_vertex(sys: &UnimodularSystem, z: &[i8]) -> bool {
    let active: Vec<usize> = (0..z.len()).filter(|&i| z[i] != 0).collect();
    if active.len() < sys.dim() {
        return false;
    }
    rank(&sys.matrix().select_rows(&active)) == sys.dim()
}

/// Whether the lattice point `p` of `Δ` is a vertex: the forms at which it
/// is extremal must have full rank.
pub fn vertex_test(sys: &UnimodularSystem, p: &[i64]) -> Result<bool> {
    let lat = LatticeModel::of(sys);
    let big: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
    if p.iter().any(|x| x.abs() > 1) || !lat.contains(&big) {
        return Err(Error::Membership { index: 0 });
    }
    let z: Vec<i8> = p.iter().map(|&x| x as i8).collect();
    Ok(is_vertex(sys, &z))
}

/// One facet pair per distinct form, in order of first occurrence.
pub fn facets(sys: &UnimodularSystem, points: &[LatticePoint]) -> Vec<FacetPair> {
    sys.multiplicity_classes()
        .into_iter()
        .map(|rows| {
            let r = rows[0];
            let side = |s: i8| {
                let on: Vec<usize> = (0..points.len())
                    .filter(|&p| points[p].coords[r] == s)
                    .collect();
                let vertices = on
                    .iter()
                    .copied()
                    .filter(|&p| points[p].is_vertex)
                    .collect();
                Facet {
                    side: s,
                    points: on,
                    vertices,
                }
            };
            FacetPair {
                form: sys.rows()[r].clone(),
                upper: side(1),
                lower: side(-1),
                rows,
            }
        })
        .collect()
}

/// Checks that `Δ` is a reflexive lattice polytope: every vertex is a
/// lattice point of `Δ`, and every inequality `±ξ <= 1` supports a face of
/// dimension `n - 1` spanned by vertices, so each is a facet at level one.
pub fn reflexivity_check(
    sys: &UnimodularSystem,
    points: &[LatticePoint],
    facets: &[FacetPair],
) -> bool {
    let lat = LatticeModel::of(sys);
    let n = sys.dim();
    let vertices_ok = points
        .iter()
        .filter(|p| p.is_vertex)
        .all(|p| lat.contains(&p.to_big()) && p.coords.iter().all(|x| x.abs() <= 1));
    let facets_ok = facets.iter().all(|pair| {
        [&pair.upper, &pair.lower].into_iter().all(|facet| {
            if facet.vertices.is_empty() {
                return false;
            }
            // Affine rank n - 1 <=> rows (c, 1) have rank n.
            let rows: Vec<Vec<i64>> = facet
                .vertices
                .iter()
                .map(|&v| {
                    let mut row = points[v].coefficients.clone();
                    row.push(1);
                    row
                })
                .collect();
            rank(&IntMatrix::from_rows(&rows)) == n
        })
    });
    vertices_ok && facets_ok
}

/// `(A · adj(AᵀA) · Aᵀ, det(AᵀA))`: the orthogonal projection onto `W` is
/// the first divided by the second.
pub fn projection_numerator(sys: &UnimodularSystem) -> (IntMatrix, BigInt) {
    let a = sys.matrix();
    let gram = a.gram();
    let det = determinant(&gram).expect("square");
    let adj = adjugate(&gram).expect("square");
    let p = a
        .mul(&adj)
        .and_then(|m| m.mul(&a.transpose()))
        .expect("shapes agree");
    (p, det)
}

/// Orthogonal projection of `s` onto `W`, as numerators over a common
/// denominator.
pub fn project(sys: &UnimodularSystem, s: &[i64]) -> Result<(Vec<BigInt>, BigInt)> {
    if s.len() != sys.len() {
        return Err(Error::Dimension(format!(
            "vector of length {} for a system of {} forms",
            s.len(),
            sys.len()
        )));
    }
    let (p, det) = projection_numerator(sys);
    let num = (0..sys.len())
        .map(|i| (0..sys.len()).map(|j| p.get(i, j) * s[j]).sum())
        .collect();
    Ok((num, det))
}

/// A cube vertex whose orthogonal projection leaves `Δ`:
/// `ξ_row(π(signs)) = numerator / denominator` with `|numerator| > denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionWitness {
    pub signs: Vec<i8>,
    pub row: usize,
    pub numerator: BigInt,
    pub denominator: BigInt,
}

/// Verifies that the projection of every vertex of the cube `[-1,1]^N`
/// onto `W` lies in `Δ`.
pub fn zonotope_check(sys: &UnimodularSystem, cap: usize) -> Result<bool> {
    Ok(zonotope_violation(sys, cap)?.is_none())
}

/// The first sign vector, in Gray-code order from all `-1`, whose
/// projection leaves `Δ`.
pub fn zonotope_violation(sys: &UnimodularSystem, cap: usize) -> Result<Option<ProjectionWitness>> {
    sys.check_cap("zonotope check", cap)?;
    let len = sys.len();
    if len == 0 {
        return Ok(None);
    }
    let (p, det) = projection_numerator(sys);
    let bound = det
        .to_i128()
        .ok_or_else(|| Error::Dimension("discriminant exceeds i128".into()))?;
    let p: Vec<i128> = p
        .entries()
        .iter()
        .map(|x| x.to_i128())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Dimension("projection entries exceed i128".into()))?;

    let witness = |signs: &[i128], image: &[i128]| {
        image
            .iter()
            .position(|v| v.abs() > bound)
            .map(|row| ProjectionWitness {
                signs: signs.iter().map(|&x| x as i8).collect(),
                row,
                numerator: BigInt::from(image[row]),
                denominator: det.clone(),
            })
    };
    let mut signs = vec![-1i128; len];
    let mut image: Vec<i128> = (0..len)
        .map(|i| -(0..len).map(|j| p[i * len + j]).sum::<i128>())
        .collect();
    if let Some(w) = witness(&signs, &image) {
        return Ok(Some(w));
    }
    for step in 1u64..(1u64 << len) {
        let j = step.trailing_zeros() as usize;
        signs[j] = -signs[j];
        for (i, v) in image.iter_mut().enumerate() {
            *v += 2 * signs[j] * p[i * len + j];
        }
        if let Some(w) = witness(&signs, &image) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn short_vector_census(points: &[LatticePoint]) -> ShortVectorCensus {
    let count = |sq: usize| points.iter().filter(|p| p.square == sq).count();
    let smallest = points.iter().map(|p| p.square).filter(|&s| s > 0).min();
    let minimum = match smallest {
        Some(s) if s <= 4 => Some(MinimumSquare::Exact(s)),
        Some(_) => Some(MinimumSquare::AtLeast(4)),
        None => None,
    };
    ShortVectorCensus {
        units: count(1),
        roots: count(2),
        square3: count(3),
        minimum,
    }
}

/// Number of nonzero points per square.
pub fn census(points: &[LatticePoint]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for p in points.iter().filter(|p| p.square > 0) {
        *out.entry(p.square).or_insert(0) += 1;
    }
    out
}

pub fn polytope_report(sys: &UnimodularSystem, caps: ScanCaps) -> Result<PolytopeReport> {
    let points = polytope_points(sys, caps.points)?;
    let facets = facets(sys, &points);
    let zonotope_verified = zonotope_check(sys, caps.signs)?;
    let reflexive_verified = reflexivity_check(sys, &points, &facets);
    Ok(PolytopeReport {
        census: census(&points),
        vertex_count: points.iter().filter(|p| p.is_vertex).count(),
        points,
        facets,
        zonotope_verified,
        reflexive_verified,
    })
}

/// The lattice-point set is closed under negation.
pub fn is_centrally_symmetric(points: &[LatticePoint]) -> bool {
    let set: std::collections::HashSet<&[i8]> = points.iter().map(|p| &p.coords[..]).collect();
    points.iter().all(|p| {
        let neg: Vec<i8> = p.coords.iter().map(|x| -x).collect();
        set.contains(&neg[..])
    })
}

/// Checks `A · coefficients = coords` for every point.
pub fn coefficients_consistent(sys: &UnimodularSystem, points: &[LatticePoint]) -> bool {
    points.iter().all(|p| {
        sys.rows().iter().zip(&p.coords).all(|(row, &x)| {
            let v: i64 = row.iter().zip(&p.coefficients).map(|(a, c)| a * c).sum();
            v == i64::from(x)
        })
    })
}

/// Whether a point is the origin.
pub fn is_origin(p: &LatticePoint) -> bool {
    p.coords.iter().all(|x| *x == 0)
}
