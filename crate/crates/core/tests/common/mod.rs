//! Independent reference implementations used only by tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use uqsl2_core::{AlgElem, CycNum, Mono, Uq};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    E,
    F,
    K(u32),
}

/// Normal ordering by single adjacent swaps, straight from the defining
/// relations `KE = q²EK`, `KF = q⁻²FK`, `FE = EF - (K - K⁻¹)/(q - q⁻¹)`.
pub fn normal_order(uq: &Uq, word: &[Letter]) -> AlgElem {
    let p = uq.p();
    let two_p = 2 * p;
    let d = uq.q_minus_q_inv().inv().unwrap();
    let mut stack: Vec<(CycNum, Vec<Letter>)> = vec![(uq.scalar(1), word.to_vec())];
    let mut out: BTreeMap<Mono, CycNum> = BTreeMap::new();
    while let Some((c, w)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        let pos = w.windows(2).position(|pair| {
            matches!(
                (pair[0], pair[1]),
                (Letter::K(_), Letter::E) | (Letter::K(_), Letter::F) | (Letter::K(_), Letter::K(_)) | (Letter::F, Letter::E)
            )
        });
        let Some(i) = pos else {
            let e = w.iter().filter(|l| **l == Letter::E).count() as u32;
            let f = w.iter().filter(|l| **l == Letter::F).count() as u32;
            let k = w.iter().map(|l| if let Letter::K(j) = l { *j } else { 0 }).sum::<u32>() % two_p;
            if e < p && f < p {
                let slot = out.entry(Mono::new(e, f, k)).or_insert_with(|| uq.scalar(0));
                *slot += &c;
            }
            continue;
        };
        let mut next = w.clone();
        match (w[i], w[i + 1]) {
            (Letter::K(j), Letter::E) => {
                next[i] = Letter::E;
                next[i + 1] = Letter::K(j);
                stack.push((&c * &uq.q(2 * j as i64), next));
            }
            (Letter::K(j), Letter::F) => {
                next[i] = Letter::F;
                next[i + 1] = Letter::K(j);
                stack.push((&c * &uq.q(-2 * j as i64), next));
            }
            (Letter::K(a), Letter::K(b)) => {
                next.splice(i..i + 2, [Letter::K((a + b) % two_p)]);
                stack.push((c, next));
            }
            (Letter::F, Letter::E) => {
                next[i] = Letter::E;
                next[i + 1] = Letter::F;
                stack.push((c.clone(), next));
                let mut plus = w.clone();
                plus.splice(i..i + 2, [Letter::K(1)]);
                stack.push((&c * &-&d, plus));
                let mut minus = w.clone();
                minus.splice(i..i + 2, [Letter::K(two_p - 1)]);
                stack.push((&c * &d, minus));
            }
            _ => unreachable!(),
        }
    }
    AlgElem::from_terms(uq, out).unwrap()
}

pub fn word_of(m: Mono) -> Vec<Letter> {
    let mut w = vec![Letter::E; m.e as usize];
    w.extend(std::iter::repeat_n(Letter::F, m.f as usize));
    if m.k > 0 {
        w.push(Letter::K(m.k));
    }
    w
}

/// Seeded generator so oracle comparisons are reproducible.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}
