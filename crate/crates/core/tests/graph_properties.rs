mod common;

use common::connected_multigraph;
use num_bigint::BigInt;
use proptest::prelude::*;
use unimod::graph::{parse_edge_list, write_edge_list};
use unimod::linalg::determinant;
use unimod::{are_isomorphic, Error, Multigraph, UnimodularSystem};

const CAP: usize = 16;

fn isomorphic(a: &UnimodularSystem, b: &UnimodularSystem) -> bool {
    match are_isomorphic(a, b, CAP).unwrap() {
        Some(c) => c.verify(a, b),
        None => false,
    }
}

fn reduced_laplacian_det(g: &Multigraph) -> BigInt {
    let keep: Vec<usize> = (1..g.vertex_count()).collect();
    determinant(&g.laplacian().select(&keep, &keep)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complexity_counts_spanning_trees(g in connected_multigraph(5, 5)) {
        let trees = BigInt::from(g.spanning_trees(CAP).unwrap().len());
        prop_assert_eq!(&reduced_laplacian_det(&g), &trees);
        prop_assert_eq!(g.cographic_system().unwrap().complexity(), trees.clone());
        if let Ok(s) = g.graphic_system() {
            prop_assert_eq!(s.complexity(), trees);
        }
    }

    #[test]
    fn dimensions_and_summands(g in connected_multigraph(5, 5)) {
        let (v, e) = (g.vertex_count(), g.edge_count());
        let loops = g.loops().len();
        let bridges = g.bridges().unwrap().len();
        let cographic = g.cographic_system().unwrap();
        prop_assert_eq!((cographic.len(), cographic.dim()), (e - loops, v - 1));
        prop_assert_eq!(cographic.split_upsilon().count, bridges);
        match g.graphic_system() {
            Ok(graphic) => {
                prop_assert_eq!((graphic.len(), graphic.dim()), (e - bridges, e + 1 - v));
                prop_assert_eq!(graphic.split_upsilon().count, loops);
            }
            Err(err) => {
                prop_assert!(matches!(err, Error::DegenerateSystem(_)));
                prop_assert_eq!(e, v - 1);
            }
        }
    }

    #[test]
    fn graphic_and_cographic_are_dual(g in connected_multigraph(5, 5)) {
        if let Ok(graphic) = g.graphic_system() {
            let cographic = g.cographic_system().unwrap();
            prop_assert!(isomorphic(&graphic.gale_dual(), &cographic.split_upsilon().core));
            prop_assert!(isomorphic(&cographic.gale_dual(), &graphic.split_upsilon().core));
        }
    }

    #[test]
    fn stabilized_graphs_have_no_summands(g in connected_multigraph(5, 5)) {
        let s = g.stabilize().unwrap();
        prop_assert!(s.loops().is_empty());
        prop_assert!(s.bridges().unwrap().is_empty());
        prop_assert_eq!(s.stabilize().unwrap(), s.clone());
        if s.edge_count() > 0 {
            let graphic = g.graphic_system().unwrap();
            prop_assert!(isomorphic(&s.graphic_system().unwrap(), &graphic.split_upsilon().core));
        }
    }

    #[test]
    fn edge_lists_round_trip(g in connected_multigraph(6, 6)) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn fundamental_cycles_and_cuts_are_orthogonal(g in connected_multigraph(5, 5)) {
        let cycles = g.fundamental_cycles().unwrap();
        let cuts = g.fundamental_cuts().unwrap();
        prop_assert_eq!(cycles.len() + cuts.len(), g.edge_count());
        for (_, c) in &cycles {
            for (_, k) in &cuts {
                prop_assert_eq!(c.iter().zip(k).map(|(a, b)| a * b).sum::<i64>(), 0);
            }
        }
        // Each defining edge appears with coefficient +1 in its own vector only.
        for (f, c) in &cycles {
            prop_assert_eq!(c[*f], 1);
            for (h, _) in cycles.iter().filter(|(h, _)| h != f) {
                prop_assert_eq!(c[*h], 0);
            }
        }
        for (f, k) in &cuts {
            prop_assert_eq!(k[*f], 1);
            for (h, _) in cuts.iter().filter(|(h, _)| h != f) {
                prop_assert_eq!(k[*h], 0);
            }
        }
    }
}

#[test]
fn named_tree_counts() {
    for (g, trees) in [
        (Multigraph::cycle(3), 3),
        (Multigraph::theta(4), 4),
        (Multigraph::complete(4), 16),
        (Multigraph::complete(5), 125),
    ] {
        assert_eq!(reduced_laplacian_det(&g), BigInt::from(trees));
        assert_eq!(g.spanning_trees(CAP).unwrap().len(), trees as usize);
    }
}

#[test]
fn trees_have_no_cycle_space() {
    assert!(matches!(
        Multigraph::path(4).graphic_system(),
        Err(Error::DegenerateSystem(_))
    ));
    let g = Multigraph::new(3, vec![(1, 2)]).unwrap();
    assert!(matches!(g.cographic_system(), Err(Error::Connectivity)));
}

#[test]
fn stabilize_examples() {
    // A triangle with a pendant edge and a loop collapses to the triangle.
    let g = Multigraph::new(4, vec![(1, 2), (2, 3), (3, 1), (3, 4), (4, 4)]).unwrap();
    let s = g.stabilize().unwrap();
    assert_eq!((s.vertex_count(), s.edge_count()), (3, 3));
    // A path collapses to a single vertex.
    let p = Multigraph::path(4).stabilize().unwrap();
    assert_eq!((p.vertex_count(), p.edge_count()), (1, 0));
}
