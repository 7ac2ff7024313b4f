mod common;

use common::rng;
use proptest::prelude::*;
use rand::Rng;
use uqsl2_core::hopf::{antipode, check_coproduct_multiplicative, coproduct, counit};
use uqsl2_core::{AlgElem, Mono, Uq};

#[test]
fn coproduct_multiplicative_on_sampled_pairs_p4() {
    let uq = Uq::new(4).unwrap();
    let basis: Vec<Mono> = uq.basis().collect();
    let mut r = rng(4);
    let pairs: Vec<(Mono, Mono)> = (0..220).map(|_| (basis[r.gen_range(0..basis.len())], basis[r.gen_range(0..basis.len())])).collect();
    let c = check_coproduct_multiplicative(&uq, pairs);
    assert!(c.passed(), "{c:?}");
}

fn random_element(uq: &Uq, picks: &[(usize, i64)]) -> AlgElem {
    picks.iter().fold(uq.zero(), |acc, (i, c)| &acc + &uq.mono(uq.mono_at(i % uq.dim())).scale_int(*c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn antipode_is_antimultiplicative(p in 2u32..=3, a in prop::collection::vec((0usize..1000, -3i64..4), 1..4), b in prop::collection::vec((0usize..1000, -3i64..4), 1..4)) {
        let uq = Uq::new(p).unwrap();
        let (x, y) = (random_element(&uq, &a), random_element(&uq, &b));
        prop_assert_eq!(antipode(&(&x * &y)), &antipode(&y) * &antipode(&x));
    }

    #[test]
    fn counit_and_coproduct_are_multiplicative(p in 2u32..=3, a in prop::collection::vec((0usize..1000, -3i64..4), 1..4), b in prop::collection::vec((0usize..1000, -3i64..4), 1..4)) {
        let uq = Uq::new(p).unwrap();
        let (x, y) = (random_element(&uq, &a), random_element(&uq, &b));
        prop_assert_eq!(counit(&(&x * &y)), &counit(&x) * &counit(&y));
        prop_assert_eq!(coproduct(&(&x * &y)), &coproduct(&x) * &coproduct(&y));
    }
}
