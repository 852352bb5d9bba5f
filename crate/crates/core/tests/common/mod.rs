#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use unimod::linalg::IntMatrix;
use unimod::{Multigraph, UnimodularSystem};

/// Connected multigraphs: a random tree on `2..=max_vertices` vertices plus
/// up to `max_extra` further edges, loops and parallels allowed.
pub fn connected_multigraph(
    max_vertices: usize,
    max_extra: usize,
) -> impl Strategy<Value = Multigraph> {
    (2..=max_vertices)
        .prop_flat_map(move |v| {
            let parents: Vec<BoxedStrategy<usize>> = (1..v).map(|i| (0..i).boxed()).collect();
            let extra = prop::collection::vec((0..v, 0..v), 0..=max_extra);
            (Just(v), parents, extra)
        })
        .prop_map(|(v, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p + 1, i + 2))
                .collect();
            edges.extend(extra.into_iter().map(|(a, b)| (a + 1, b + 1)));
            Multigraph::new(v, edges).expect("endpoints in range")
        })
}

/// Graphic or cographic systems of small connected multigraphs, sometimes
/// with a `Σ_k` or `Υ` summand added.
pub fn small_system() -> impl Strategy<Value = UnimodularSystem> {
    (connected_multigraph(5, 4), any::<bool>(), 0usize..4).prop_filter_map(
        "degenerate graph",
        |(g, graphic, extra)| {
            let s = if graphic {
                g.graphic_system().ok()?
            } else {
                g.cographic_system().ok()?
            };
            let s = match extra {
                1 => s.direct_sum(&sigma(2)),
                2 => s.direct_sum(&upsilon(1)),
                _ => s,
            };
            (s.len() <= 10).then_some(s)
        },
    )
}

pub fn sigma(n: usize) -> UnimodularSystem {
    let rows: Vec<[i64; 1]> = vec![[1]; n];
    UnimodularSystem::from_matrix(&IntMatrix::from_rows(&rows)).unwrap()
}

pub fn upsilon(m: usize) -> UnimodularSystem {
    UnimodularSystem::from_matrix(&IntMatrix::identity(m)).unwrap()
}

/// A unimodular `n x n` matrix built from `ops`: each `(i, j, s)` adds
/// `s` times column `j` to column `i` (skipped when `i == j`).
pub fn unimodular_matrix(n: usize, ops: &[(usize, usize, bool)]) -> IntMatrix {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j, plus) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let s = if plus { 1 } else { -1 };
        for row in m.iter_mut() {
            row[i] += s * row[j];
        }
    }
    IntMatrix::from_rows(&m)
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Leibniz expansion; the oracle for small determinants.
pub fn leibniz(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for a in 0..n {
            for b in a + 1..n {
                if p[a] > p[b] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        total += sign * (0..n).map(|i| m[i][p[i]]).product::<i64>();
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Every `k`-subset of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
