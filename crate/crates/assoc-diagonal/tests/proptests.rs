//! Randomized invariants checked against brute-force oracles.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use assoc_diagonal::assoc_core::{
    enumerate_all_faces, is_admissible, is_face_of, normal_forms_along_random_orders,
    random_admissible, tamari_leq, Face, Target,
};
use assoc_diagonal::chain_complex::{boundary, boundary_face, tensor_boundary};
use assoc_diagonal::diagonal::{enumerate_solutions, DiagonalSolution, DiagonalTable};
use assoc_diagonal::transfers::{
    common_facet, common_facets, facets_by_second_transfer, facets_by_transfer, lemma2_check,
    right_transfer_first, selection_domain,
};
use assoc_diagonal::verify::facets_by_containment;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All faces of `K_{n+2}` for `n ≤ 7`, built once.
fn faces(n: usize) -> &'static [Face] {
    static CACHE: OnceLock<Vec<Vec<Face>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=7).map(|n| enumerate_all_faces(n + 2)).collect())[n]
}

/// All solutions of the inequality system for `1 ≤ n ≤ 7`, built once.
fn solutions(n: usize) -> &'static [DiagonalSolution] {
    static CACHE: OnceLock<Vec<Vec<DiagonalSolution>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=7).map(enumerate_solutions).collect())[n]
}

fn face_of(n: usize, index: usize) -> &'static Face {
    let fs = faces(n);
    &fs[index % fs.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rewriting_reaches_the_tree_normal_form(seed in any::<u64>(), ambient in 2usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_admissible(&mut rng, ambient);
        prop_assert!(is_admissible(&c));
        let face = Face::of_composition(&c).unwrap();
        for (target, oracle) in [
            (Target::First, face.first_form()),
            (Target::Second, face.second_form()),
        ] {
            let reached = normal_forms_along_random_orders(&c, target, 4, &mut rng).unwrap();
            prop_assert_eq!(reached, BTreeSet::from([oracle.ops]), "{}", c.render_explicit());
        }
    }

    #[test]
    fn selection_lemma_holds(n in 1usize..=7, index in any::<usize>()) {
        let all = solutions(n);
        let s = &all[index % all.len()];
        for (k, m) in selection_domain(s) {
            let r = lemma2_check(s, k, m).unwrap();
            prop_assert!(r.passed(), "{:?} k={} m={}: {:?}", s, k, m, r);
        }
    }

    #[test]
    fn transfers_find_exactly_the_containing_facets(n in 0usize..=7, index in any::<usize>()) {
        let f = face_of(n, index);
        let first = f.first_form();
        for k in 1..=first.len() {
            let r = right_transfer_first(&first, k).unwrap();
            prop_assert_eq!(&Face::of_composition(&r.rewritten).unwrap(), f);
        }
        let expected = facets_by_containment(f).unwrap();
        for found in [facets_by_transfer(f).unwrap(), facets_by_second_transfer(f).unwrap()] {
            prop_assert_eq!(found.len(), f.key.len());
            prop_assert_eq!(found.into_iter().collect::<BTreeSet<_>>(), expected.clone());
        }
    }

    #[test]
    fn common_facets_match_containment(n in 2usize..=5, i in any::<usize>(), j in any::<usize>()) {
        let (a, b) = (face_of(n, i), face_of(n, j));
        let expected: BTreeSet<_> = facets_by_containment(a)
            .unwrap()
            .intersection(&facets_by_containment(b).unwrap())
            .copied()
            .collect();
        prop_assert_eq!(common_facets(a, b).unwrap(), expected.clone());
        match common_facet(a, b).unwrap() {
            Some(x) => prop_assert!(expected.contains(&x)),
            None => prop_assert!(expected.is_empty()),
        }
    }

    #[test]
    fn boundary_squares_to_zero(n in 0usize..=7, index in any::<usize>()) {
        let f = face_of(n, index);
        prop_assert!(boundary(&boundary_face(f)).unwrap().is_zero());
    }

    #[test]
    fn diagonal_commutes_with_the_boundary(n in 0usize..=6, index in any::<usize>()) {
        let f = face_of(n, index);
        let mut table = DiagonalTable::new();
        let lhs = tensor_boundary(&table.diagonal_face(f)).unwrap();
        let rhs = table.diagonal(&boundary_face(f)).unwrap();
        prop_assert_eq!(lhs, rhs, "face {}", f);
    }

    #[test]
    fn facets_are_codimension_one_faces(n in 1usize..=6, index in any::<usize>()) {
        let f = face_of(n, index);
        for (g, _) in assoc_diagonal::chain_complex::signed_facets(f) {
            prop_assert!(is_face_of(&g, f).unwrap());
            prop_assert_eq!(g.dim() + 1, f.dim());
        }
    }

    #[test]
    fn tamari_order_is_antisymmetric(n in 1usize..=5, i in any::<usize>(), j in any::<usize>()) {
        let vertices: Vec<&Face> = faces(n).iter().filter(|f| f.is_vertex()).collect();
        let a = vertices[i % vertices.len()].tree();
        let b = vertices[j % vertices.len()].tree();
        if tamari_leq(&a, &b).unwrap() && tamari_leq(&b, &a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }
}
