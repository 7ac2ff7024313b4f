mod common;

use common::{normal_order, rng, word_of, Letter};
use rand::Rng;
use uqsl2_core::{Mono, Uq};

#[test]
fn commutator_powers_match_single_swap_rewriting() {
    for p in 2..=4 {
        let uq = Uq::new(p).unwrap();
        for r in 0..p {
            for s in 0..p {
                let mut word = vec![Letter::E; r as usize];
                word.extend(vec![Letter::F; s as usize]);
                let ef = normal_order(&uq, &word);
                let mut word = vec![Letter::F; s as usize];
                word.extend(vec![Letter::E; r as usize]);
                let fe = normal_order(&uq, &word);
                let oracle = &ef - &fe;

                let mut ours = uq.zero();
                for (i, f) in uq.commutator_powers(r, s).unwrap() {
                    let head = uq.monomial(r - i, s - i, 0);
                    ours = &ours + &(&head * &uq.from_kpoly(&f));
                }
                assert_eq!(ours, oracle, "p={p} r={r} s={s}");
            }
        }
    }
}

#[test]
fn commutator_with_single_e_matches_closed_form() {
    // [E, F^m] = [m] F^{m-1} (q^{-(m-1)}K - q^{m-1}K^{-1}) / (q - q^{-1})
    for p in 2..=5 {
        let uq = Uq::new(p).unwrap();
        let d = uq.q_minus_q_inv().inv().unwrap();
        for m in 1..p {
            let mi = m as i64;
            let kpart = &uq.term(0, 0, 1, uq.q(-(mi - 1))) - &uq.term(0, 0, -1, uq.q(mi - 1));
            let expected = (&uq.monomial(0, m - 1, 0) * &kpart).scale(&(&uq.qint(mi) * &d));
            let comm = &(&uq.gen_e() * &uq.monomial(0, m, 0)) - &(&uq.monomial(0, m, 0) * &uq.gen_e());
            assert_eq!(comm, expected, "p={p} m={m}");
        }
    }
}

#[test]
fn monomial_products_match_single_swap_rewriting() {
    for p in 2..=4 {
        let uq = Uq::new(p).unwrap();
        let basis: Vec<Mono> = uq.basis().collect();
        let mut rng = rng(p as u64 * 7919);
        let pairs: Vec<(Mono, Mono)> = if p == 2 {
            basis.iter().flat_map(|a| basis.iter().map(move |b| (*a, *b))).collect()
        } else {
            (0..300).map(|_| (basis[rng.gen_range(0..basis.len())], basis[rng.gen_range(0..basis.len())])).collect()
        };
        for (a, b) in pairs {
            let mut w = word_of(a);
            w.extend(word_of(b));
            assert_eq!(&uq.mono(a) * &uq.mono(b), normal_order(&uq, &w), "p={p} {a}·{b}");
        }
    }
}

#[test]
fn associativity_on_basis_triples() {
    let uq = Uq::new(2).unwrap();
    let basis: Vec<_> = uq.basis().map(|m| uq.mono(m)).collect();
    for a in &basis {
        for b in &basis {
            let ab = a * b;
            for c in &basis {
                assert_eq!(&ab * c, a * &(b * c));
            }
        }
    }
    for p in [3, 4] {
        let uq = Uq::new(p).unwrap();
        let basis: Vec<_> = uq.basis().collect();
        let mut rng = rng(31 + p as u64);
        for _ in 0..400 {
            let [a, b, c] = [0; 3].map(|_| uq.mono(basis[rng.gen_range(0..basis.len())]));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c), "p={p}");
        }
    }
}

#[test]
fn basis_products_stay_in_range() {
    for p in 2..=5 {
        let uq = Uq::new(p).unwrap();
        let basis: Vec<Mono> = uq.basis().collect();
        assert_eq!(basis.len(), 2 * (p as usize).pow(3));
        for a in &basis {
            for b in &basis {
                assert!(uq.mul_mono(*a, *b).iter().all(|(m, _)| uq.in_range(*m)));
            }
        }
    }
}

#[test]
fn casimir_minimal_polynomial() {
    for p in 2..=4 {
        let uq = Uq::new(p).unwrap();
        let c = uq.casimir();
        let poly = uq.casimir_min_poly();
        assert_eq!(poly.degree(), 2 * p as usize);
        assert!(uq.eval_poly_at(&c, &poly).is_zero(), "p={p}");
        for s in 0..=p as i64 {
            let reduced = poly.divide_linear(&uq.beta(s).unwrap()).unwrap();
            assert!(!uq.eval_poly_at(&c, &reduced).is_zero(), "p={p} s={s}");
        }
    }
}
