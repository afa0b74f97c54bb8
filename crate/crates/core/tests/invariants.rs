//! Randomized invariants over the small-group catalog.

use ppeq::character::lift_character;
use ppeq::decompose::{decompose, is_isomorphic};
use ppeq::field::Fq;
use ppeq::group::{Elem, Group, Subgroup};
use ppeq::module::MatModule;
use ppeq::product::Product;
use proptest::prelude::*;

const NAMES: [&str; 7] = ["C2", "C4", "V4", "S3", "D8", "Q8", "A4"];

fn subgroup(g: &Subgroup, picks: &[usize]) -> Subgroup {
    let xs: Vec<Elem> = picks.iter().map(|&i| g.elements()[i % g.order()]).collect();
    Subgroup::generated(g.ambient(), &xs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_axioms(k in 0..NAMES.len(), a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let g = Group::catalog(NAMES[k]).unwrap();
        let n = g.order();
        let (a, b, c) = ((a % n) as Elem, (b % n) as Elem, (c % n) as Elem);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.pow(a, g.elem_order(a) as i64), g.identity());
        let sizes: usize = g.whole().conjugacy_classes().iter().map(|c| c.size()).sum();
        prop_assert_eq!(sizes, n);
    }

    #[test]
    fn lagrange_and_transversals(k in 0..NAMES.len(), picks in prop::collection::vec(0usize..64, 1..3)) {
        let g = Group::catalog(NAMES[k]).unwrap().whole();
        let q = subgroup(&g, &picks);
        prop_assert_eq!(g.order() % q.order(), 0);
        prop_assert_eq!(g.left_transversal(&q).unwrap().len() * q.order(), g.order());
        prop_assert!(q.normalizer_of_subgroup(&q).unwrap().is_subgroup_of(&g));
    }

    #[test]
    fn product_pairs_round_trip(k in 0..NAMES.len(), a in 0usize..64, b in 0usize..64) {
        let g = Group::catalog(NAMES[k]).unwrap();
        let prod = Product::new(&g, &g).unwrap();
        let (a, b) = ((a % g.order()) as Elem, (b % g.order()) as Elem);
        prop_assert_eq!(prod.whole.split(prod.whole.pair(a, b)), (a, b));
    }

    #[test]
    fn summands_reassemble(k in 0..NAMES.len(), picks in prop::collection::vec(0usize..64, 0..2), seed in 0u64..1000) {
        let g = Group::catalog(NAMES[k]).unwrap();
        let w = g.whole();
        let f = Fq::splitting(2, g.exponent()).unwrap();
        let m = MatModule::coset_module(&w, &subgroup(&w, &picks), &f).unwrap();
        let parts: Vec<MatModule> = decompose(&m, seed).unwrap().into_iter().map(|p| p.module).collect();
        let dims: usize = parts.iter().map(|p| p.dim()).sum();
        prop_assert_eq!(dims, m.dim());
        let sum = MatModule::direct_sum(&parts).unwrap();
        prop_assert!(is_isomorphic(&sum, &m, seed).unwrap());
        let mut total = lift_character(&parts[0]).unwrap();
        for p in &parts[1..] {
            total = total.add(&lift_character(p).unwrap()).unwrap();
        }
        prop_assert_eq!(total, lift_character(&m).unwrap());
    }
}
