mod common;

use proptest::prelude::*;
use uqsl2_core::integrals::ProductTable;
use uqsl2_core::projective::all_idempotents;
use uqsl2_core::slf::{
    center_dimension, check_symmetry, expected_product, q_basis, slf_functionals, slf_space_dimension, slf_space_dimension_all_pairs,
    Commutators,
};
use uqsl2_core::{AlgElem, Uq};

#[test]
fn generator_and_all_pair_commutators_give_the_same_nullity() {
    for p in 2..=3 {
        let uq = Uq::new(p).unwrap();
        let comms = Commutators::new(&uq, &ProductTable::new(&uq));
        assert_eq!(slf_space_dimension(&uq), slf_space_dimension_all_pairs(&uq, &comms));
    }
}

#[test]
fn dimensions_match_at_p4() {
    let uq = Uq::new(4).unwrap();
    assert_eq!(slf_space_dimension(&uq), 11);
    assert_eq!(center_dimension(&uq), 11);
}

#[test]
fn every_slf_basis_functional_is_symmetric_p3() {
    let uq = Uq::new(3).unwrap();
    let comms = Commutators::new(&uq, &ProductTable::new(&uq));
    for (name, f) in slf_functionals(&uq).unwrap().named() {
        assert!(check_symmetry(&comms, f), "{name}");
    }
}

#[test]
fn table_rule_matches_products_in_block_one_p4() {
    let uq = Uq::new(4).unwrap();
    let basis = q_basis(&uq, 1).unwrap();
    let zero = uq.zero();
    for x in basis.iter().step_by(3) {
        for y in &basis {
            let want = expected_product(4, &x.key, &y.key).map(|k| &basis.iter().find(|b| b.key == k).unwrap().element).unwrap_or(&zero);
            assert_eq!(&(&x.element * &y.element), want, "{} · {}", x.key, y.key);
        }
    }
}

fn element(uq: &Uq, picks: &[(usize, i64)]) -> AlgElem {
    picks.iter().fold(uq.zero(), |acc, (i, c)| &acc + &uq.mono(uq.mono_at(i % uq.dim())).scale_int(*c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn slf_functionals_are_traces(a in prop::collection::vec((0usize..54, -2i64..3), 1..5), b in prop::collection::vec((0usize..54, -2i64..3), 1..5)) {
        let uq = Uq::new(3).unwrap();
        let (x, y) = (element(&uq, &a), element(&uq, &b));
        let (xy, yx) = (&x * &y, &y * &x);
        for (name, f) in slf_functionals(&uq).unwrap().named() {
            prop_assert_eq!(f.eval(&xy), f.eval(&yx), "{}", name);
        }
    }

    #[test]
    fn idempotents_absorb_their_left_ideal(i in 0usize..12, a in prop::collection::vec((0usize..54, -2i64..3), 1..4)) {
        let uq = Uq::new(3).unwrap();
        let (_, e) = &all_idempotents(&uq).unwrap()[i];
        let x = &element(&uq, &a) * e;
        prop_assert_eq!(&x * e, x);
    }
}
