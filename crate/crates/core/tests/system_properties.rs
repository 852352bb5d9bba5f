mod common;

use std::collections::BTreeSet;

use common::{small_system, unimodular_matrix};
use num_bigint::BigInt;
use proptest::prelude::*;
use unimod::iso::transform;
use unimod::linalg::IntMatrix;
use unimod::{are_isomorphic, automorphism_count, LatticeModel, UnimodularSystem};

const CAP: usize = 16;

fn isomorphic(a: &UnimodularSystem, b: &UnimodularSystem) -> bool {
    match are_isomorphic(a, b, CAP).unwrap() {
        Some(c) => c.verify(a, b),
        None => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complexity_counts_bases(s in small_system()) {
        let bases = s.enumerate_bases(CAP).unwrap();
        prop_assert_eq!(BigInt::from(bases.len()), s.complexity());
        let weight_total: BigInt = s.row_weights().iter().sum();
        prop_assert_eq!(weight_total, s.complexity() * s.dim());
    }

    #[test]
    fn standard_form_is_stable(s in small_system()) {
        let again = UnimodularSystem::from_matrix(s.matrix()).unwrap();
        prop_assert_eq!(again.matrix(), s.matrix());
        prop_assert_eq!(&s.matrix().select_rows(s.base_rows()), &IntMatrix::identity(s.dim()));
    }

    #[test]
    fn direct_sum_multiplies_complexity(a in small_system(), b in small_system()) {
        let sum = a.direct_sum(&b);
        prop_assert_eq!(sum.len(), a.len() + b.len());
        prop_assert_eq!(sum.dim(), a.dim() + b.dim());
        prop_assert_eq!(sum.complexity(), a.complexity() * b.complexity());
    }

    #[test]
    fn dual_preserves_complexity(s in small_system()) {
        let dual = s.gale_dual();
        prop_assert_eq!(dual.complexity(), s.complexity());
        prop_assert_eq!(dual.split_upsilon().count, 0);
        let split = s.split_upsilon();
        prop_assert_eq!(dual.len(), s.len() - split.count);
        prop_assert_eq!(dual.dim(), s.len() - s.dim());
    }

    #[test]
    fn double_dual_is_the_core(s in small_system()) {
        let core = s.split_upsilon().core;
        prop_assert!(isomorphic(&s.gale_dual().gale_dual(), &core));
    }

    #[test]
    fn dual_bases_are_complements(s in small_system()) {
        let (dual, source) = s.gale_dual_indexed();
        let all: BTreeSet<usize> = (0..s.len()).collect();
        let expected: BTreeSet<Vec<usize>> = s
            .enumerate_bases(CAP)
            .unwrap()
            .into_iter()
            .map(|b| {
                let base: BTreeSet<usize> = b.into_iter().collect();
                all.difference(&base).copied().collect()
            })
            .collect();
        let found: BTreeSet<Vec<usize>> = if dual.is_empty() {
            std::iter::once(Vec::new()).collect()
        } else {
            dual.enumerate_bases(CAP)
                .unwrap()
                .into_iter()
                .map(|b| {
                    let mut rows: Vec<usize> = b.into_iter().map(|i| source[i]).collect();
                    rows.sort_unstable();
                    rows
                })
                .collect()
        };
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn upsilon_split_recombines(s in small_system()) {
        let split = s.split_upsilon();
        let mut rebuilt = split.core.clone();
        for _ in 0..split.count {
            rebuilt = rebuilt.direct_sum(&common::upsilon(1));
        }
        prop_assert!(isomorphic(&rebuilt, &s));
        prop_assert_eq!(split.core.split_upsilon().count, 0);
    }

    #[test]
    fn signed_copies_are_isomorphic(
        s in small_system(),
        ops in prop::collection::vec((0usize..8, 0usize..8, any::<bool>()), 0..8),
        shuffle in any::<prop::sample::Index>(),
        flips in prop::collection::vec(any::<bool>(), 12),
    ) {
        let n = s.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let k = shuffle.index(n.max(1));
        perm.rotate_left(k % n.max(1));
        if n > 1 {
            perm.swap(0, n - 1);
        }
        let signs: Vec<i8> = (0..n).map(|i| if flips[i] { -1 } else { 1 }).collect();
        let m = unimodular_matrix(s.dim(), &ops);
        let copy = transform(&s, &perm, &signs, &m).unwrap();
        prop_assert_eq!(copy.complexity(), s.complexity());
        prop_assert!(isomorphic(&s, &copy));
        prop_assert!(isomorphic(&copy, &s));
        prop_assert_eq!(automorphism_count(&copy, CAP).unwrap(), automorphism_count(&s, CAP).unwrap());
    }

    #[test]
    fn discriminant_is_complexity(s in small_system()) {
        prop_assert_eq!(LatticeModel::of(&s).discriminant(), s.complexity());
    }
}

#[test]
fn automorphisms_of_small_systems() {
    let cases: [(UnimodularSystem, i64); 4] = [
        (common::upsilon(1), 2),
        (common::sigma(3), 12),
        (common::upsilon(2), 8),
        (
            UnimodularSystem::from_matrix(&IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]))
                .unwrap(),
            12,
        ),
    ];
    for (s, expected) in cases {
        assert_eq!(automorphism_count(&s, CAP).unwrap(), BigInt::from(expected));
    }
}

#[test]
fn non_isomorphic_systems_are_told_apart() {
    let sigma = common::sigma(3);
    let triangle =
        UnimodularSystem::from_matrix(&IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]])).unwrap();
    assert!(are_isomorphic(&sigma, &triangle, CAP).unwrap().is_none());
    let pair = common::upsilon(2);
    let sigma2 = common::sigma(2);
    assert!(are_isomorphic(&pair, &sigma2, CAP).unwrap().is_none());
}
