mod common;

use common::{brute_force, matches_brute_force, weight};
use proptest::prelude::*;
use spectral_reduce::families::{self, delta, halved_cube, hamming, johnson, pi_swap, Parity};
use spectral_reduce::graph::{
    cartesian_product, check_isomorphism, is_automorphism, LabeledGraph, VertexLabel, VertexMap,
};

#[test]
fn hamming_matches_brute_force() {
    for n in 1..=4 {
        for q in 2..=4u8 {
            let g = hamming(n, q).unwrap();
            assert!(
                matches_brute_force(&g, &brute_force(n, q, |_| true, 1)),
                "H({n},{q})"
            );
            assert_eq!(g.order(), (q as usize).pow(n as u32));
            assert_eq!(g.regular_degree(), Some(n * (q as usize - 1)));
        }
    }
}

#[test]
fn johnson_matches_brute_force() {
    for n in 1..=7 {
        for k in 0..=n {
            let g = johnson(n, k).unwrap();
            assert!(
                matches_brute_force(&g, &brute_force(n, 2, |w| weight(w) == k, 2)),
                "J({n},{k})"
            );
            assert_eq!(g.regular_degree(), Some(k * (n - k)));
        }
    }
}

#[test]
fn johnson_adjacency_is_support_intersection() {
    for n in 2..=6 {
        for k in 1..n {
            let g = johnson(n, k).unwrap();
            for a in 0..g.order() {
                for b in a + 1..g.order() {
                    let common = g
                        .label(a)
                        .coords()
                        .iter()
                        .zip(g.label(b).coords())
                        .filter(|(x, y)| **x == 1 && **y == 1)
                        .count();
                    assert_eq!(
                        g.has_edge(a, b),
                        common == k - 1,
                        "J({n},{k}) pair ({a},{b})"
                    );
                }
            }
        }
    }
}

#[test]
fn halved_cube_matches_brute_force() {
    for n in 1..=8 {
        for (parity, rem) in [(Parity::Even, 0), (Parity::Odd, 1)] {
            let g = halved_cube(n, parity).unwrap();
            assert!(matches_brute_force(
                &g,
                &brute_force(n, 2, |w| weight(w) % 2 == rem, 2)
            ));
            assert_eq!(g.order(), 1 << (n - 1));
            assert_eq!(g.regular_degree(), Some(n * (n - 1) / 2));
        }
    }
}

#[test]
fn halved_cube_examples_by_brute_force() {
    // ½H(3): four even words, all pairwise at distance 2.
    let g = halved_cube(3, Parity::Even).unwrap();
    assert_eq!((g.order(), g.size()), (4, 6));
    // ½H(4): 8 vertices, 6-regular, each vertex misses only its complement.
    let g = halved_cube(4, Parity::Even).unwrap();
    assert_eq!((g.order(), g.size(), g.regular_degree()), (8, 24, Some(6)));
    for v in 0..8 {
        let missing: Vec<usize> = (0..8).filter(|&u| u != v && !g.has_edge(u, v)).collect();
        assert_eq!(missing.len(), 1);
        assert_eq!(g.label(v).hamming_distance(g.label(missing[0])), 4);
    }
}

#[test]
fn parities_are_isomorphic_by_complementing_a_coordinate() {
    for n in 2..=7 {
        let even = halved_cube(n, Parity::Even).unwrap();
        let odd = halved_cube(n, Parity::Odd).unwrap();
        for p in 0..n {
            let m = VertexMap::from_fn(even.order(), odd.order(), |v| {
                let mut c = even.label(v).coords().to_vec();
                c[p] ^= 1;
                odd.index_of(&VertexLabel::new(c, 2).unwrap()).unwrap()
            })
            .unwrap();
            assert_eq!(check_isomorphism(&even, &odd, &m).unwrap(), None);
        }
    }
}

#[test]
fn induced_copy_of_h12_via_delta() {
    // V₁ = {x ∈ H(2,2): x₁ = 0} with Δ₁ onto H(1,2).
    let g = hamming(2, 2).unwrap();
    let h = hamming(1, 2).unwrap();
    let v1: Vec<usize> = (0..g.order())
        .filter(|&v| g.label(v).coord(1) == 0)
        .collect();
    let (sub, emb) = g.induced_subgraph(&v1).unwrap();
    let m = VertexMap::from_fn(sub.order(), h.order(), |v| {
        h.index_of(&delta(g.label(emb.apply(v)), &[1]).unwrap())
            .unwrap()
    })
    .unwrap();
    assert_eq!(check_isomorphism(&sub, &h, &m).unwrap(), None);
}

fn small_graph() -> impl Strategy<Value = LabeledGraph> {
    prop_oneof![
        (1usize..=3, 2u8..=3).prop_map(|(n, q)| hamming(n, q).unwrap()),
        (2usize..=6)
            .prop_flat_map(|n| (Just(n), 0..=n))
            .prop_map(|(n, k)| johnson(n, k).unwrap()),
        (2usize..=5, any::<bool>()).prop_map(|(n, e)| halved_cube(
            n,
            if e { Parity::Even } else { Parity::Odd }
        )
        .unwrap()),
    ]
}

/// A coordinate permutation of `Z_q^n`, as an automorphism of `H(n, q)`.
fn coordinate_permutation(g: &LabeledGraph, perm: &[usize]) -> VertexMap {
    VertexMap::from_fn(g.order(), g.order(), |v| {
        let c = g.label(v).coords();
        let permuted = perm.iter().map(|&p| c[p]).collect();
        g.index_of(&VertexLabel::new(permuted, g.q()).unwrap())
            .unwrap()
    })
    .unwrap()
}

proptest! {
    #[test]
    fn graph_invariants(g in small_graph()) {
        for v in 0..g.order() {
            let nb = g.neighbors(v).unwrap();
            prop_assert!(!nb.contains(&v));
            prop_assert_eq!(nb.len(), g.degree(v).unwrap());
            for &u in nb {
                prop_assert!(g.has_edge(u, v));
            }
        }
        let degree_sum: usize = (0..g.order()).map(|v| g.degree(v).unwrap()).sum();
        prop_assert_eq!(degree_sum, 2 * g.size());
    }

    #[test]
    fn induced_subgraph_is_self_isomorphic(g in small_graph(), mask in any::<u64>()) {
        let subset: Vec<usize> = (0..g.order()).filter(|&v| mask >> (v % 64) & 1 == 1).collect();
        prop_assume!(!subset.is_empty());
        let (sub, emb) = g.induced_subgraph(&subset).unwrap();
        prop_assert!(is_automorphism(&sub, &VertexMap::identity(sub.order())).unwrap());
        for a in 0..sub.order() {
            for b in 0..sub.order() {
                prop_assert_eq!(sub.has_edge(a, b), g.has_edge(emb.apply(a), emb.apply(b)));
            }
        }
    }

    #[test]
    fn product_counts(g in small_graph(), h in small_graph()) {
        let p = cartesian_product(&g, &h);
        prop_assert_eq!(p.order(), g.order() * h.order());
        prop_assert_eq!(p.size(), g.size() * h.order() + h.size() * g.order());
    }

    #[test]
    fn automorphisms_closed_under_square_and_inverse(
        n in 2usize..=4,
        q in 2u8..=3,
        seed in any::<u64>(),
    ) {
        let g = hamming(n, q).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let m = coordinate_permutation(&g, &perm);
        prop_assert!(is_automorphism(&g, &m).unwrap());
        prop_assert!(is_automorphism(&g, &m.then(&m).unwrap()).unwrap());
        prop_assert!(is_automorphism(&g, &m.inverse().unwrap()).unwrap());
    }

    #[test]
    fn pi_swap_is_involutive(coords in prop::collection::vec(0u8..4, 2..8), a in 0usize..8, b in 0usize..8) {
        let n = coords.len();
        let (i, j) = (a % n + 1, b % n + 1);
        prop_assume!(i < j);
        let x = VertexLabel::new(coords, 4).unwrap();
        prop_assert_eq!(pi_swap(&pi_swap(&x, i, j).unwrap(), i, j).unwrap(), x);
    }

    #[test]
    fn delta_weight_accounting(coords in prop::collection::vec(0u8..3, 2..8), mask in any::<u8>()) {
        let n = coords.len();
        let positions: Vec<usize> = (1..=n).filter(|p| mask >> (p - 1) & 1 == 1).collect();
        prop_assume!(!positions.is_empty() && positions.len() < n);
        let x = VertexLabel::new(coords, 3).unwrap();
        let removed = positions.iter().filter(|&&p| x.coord(p) != 0).count();
        prop_assert_eq!(families::weight(&delta(&x, &positions).unwrap()), families::weight(&x) - removed);
    }
}
