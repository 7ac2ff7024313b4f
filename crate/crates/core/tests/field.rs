use proptest::prelude::*;
use uqsl2_core::qnum::{check_arithmetic, q_int};
use uqsl2_core::{CycField, CycNum, Rational};

fn element(p: u32, raw: &[(i64, i64)]) -> CycNum {
    let field = CycField::new(p).unwrap();
    let coeffs: Vec<Rational> = raw.iter().map(|(n, d)| Rational::new(*n, *d)).collect();
    CycNum::from_poly(&field, &coeffs)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..30, 1i64..12), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in 2u32..=7, a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (element(p, &a), element(p, &b), element(p, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverses(p in 2u32..=7, a in coeffs()) {
        let a = element(p, &a);
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(p in 2u32..=7, a in coeffs()) {
        let a = element(p, &a);
        prop_assert!(a.coeffs().len() <= a.field().degree());
        prop_assert_eq!(CycNum::from_poly(a.field(), a.coeffs()), a.clone());
    }

    #[test]
    fn complex_embedding_is_a_ring_map(p in 2u32..=7, a in coeffs(), b in coeffs()) {
        let (a, b) = (element(p, &a), element(p, &b));
        let (za, zb) = (a.to_complex(), b.to_complex());
        let scale = 1.0 + za.norm() * zb.norm() + za.norm() + zb.norm();
        prop_assert!(((&a * &b).to_complex() - za * zb).norm() <= 1e-9 * scale);
        prop_assert!(((&a + &b).to_complex() - (za + zb)).norm() <= 1e-9 * scale);
    }
}

#[test]
fn quantum_integers_are_mirror_symmetric() {
    for p in 2..=7 {
        let f = CycField::new(p).unwrap();
        for n in 0..=p as i64 {
            assert_eq!(q_int(&f, p as i64 - n), q_int(&f, n), "p={p} n={n}");
        }
    }
}

#[test]
fn arithmetic_report_passes() {
    for p in 2..=9 {
        let r = check_arithmetic(&CycField::new(p).unwrap());
        assert!(r.passed(), "{r}");
    }
}
