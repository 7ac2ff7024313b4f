//! Integrals, dual integrals, the balancing element and the symmetric
//! twisted integral.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{AlgElem, Mono, Uq};
use crate::cyclotomic::CycNum;
use crate::functional::Functional;
use crate::hopf::{antipode_mono, coproduct, coproduct_mono, counit, counit_mono, TensorElem};
use crate::linalg::{Echelon, SparseVec};
use crate::report::{Check, VerificationReport};

/// `Λ = E^{p-1} F^{p-1} Σ_l K^l`.
pub fn integral_element(uq: &Uq) -> AlgElem {
    let p = uq.p();
    let mut out = uq.zero();
    for l in 0..2 * p {
        out.add_term(Mono::new(p - 1, p - 1, l), &CycNum::one(uq.field()));
    }
    out
}

/// `aΛ = ε(a)Λ` and `Λa = ε(a)Λ` for every basis monomial `a`.
pub fn check_two_sided_integral(uq: &Uq, big_lambda: &AlgElem) -> VerificationReport {
    let mut report = VerificationReport::new("integrals", uq.p());
    let mut left_fail = None;
    let mut right_fail = None;
    for m in uq.basis() {
        let a = uq.mono(m);
        let expected = big_lambda.scale(&counit_mono(uq, m));
        if left_fail.is_none() {
            let got = &a * big_lambda;
            if got != expected {
                left_fail = Some(format!("a = {m}: aΛ = {got}; ε(a)Λ = {expected}"));
            }
        }
        if right_fail.is_none() {
            let got = big_lambda * &a;
            if got != expected {
                right_fail = Some(format!("a = {m}: Λa = {got}; ε(a)Λ = {expected}"));
            }
        }
    }
    report.push(Check::from_failure("left integral", left_fail));
    report.push(Check::from_failure("right integral", right_fail));
    report
}

/// Delta functional at `E^{p-1} F^{p-1} K^{p-1}`.
pub fn lambda_functional(uq: &Uq) -> Functional {
    let p = uq.p();
    Functional::delta(uq, Mono::new(p - 1, p - 1, p - 1))
}

/// Delta functional at `E^{p-1} F^{p-1} K^{p+1}`.
pub fn mu_functional(uq: &Uq) -> Functional {
    let p = uq.p();
    Functional::delta(uq, Mono::new(p - 1, p - 1, (p + 1) % (2 * p)))
}

/// `(id⊗φ)Δ(x)` (`side == Side::Left`) or `(φ⊗id)Δ(x)`.
fn partial_eval(uq: &Uq, delta: &TensorElem, phi: &Functional, side: Side) -> AlgElem {
    let mut out = uq.zero();
    for ([a, b], c) in delta.terms() {
        let (kept, evaluated) = match side {
            Side::Left => (*a, *b),
            Side::Right => (*b, *a),
        };
        let v = phi.value(evaluated);
        if !v.is_zero() {
            out.add_term(kept, &(c * v));
        }
    }
    out
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(id⊗φ)Δ(x) = φ(x)1`.
    Left,
    /// `(φ⊗id)Δ(x) = φ(x)1`.
    Right,
}

/// Whether `φ` is a left or right integral of the dual on every basis monomial.
pub fn dual_integral_failure(uq: &Uq, phi: &Functional, side: Side) -> Option<String> {
    uq.basis().find_map(|m| {
        let d = coproduct_mono(uq, m);
        let got = partial_eval(uq, &d, phi, side);
        let expected = uq.scalar_elem(phi.value(m).clone());
        (got != expected).then(|| format!("x = {m}: got {got}; expected {expected}"))
    })
}

/// Dimension of the space of left (or right) integrals of the dual, as the
/// nullity of the linear system the defining identity imposes on the `2p^3`
/// values of an unknown functional.
pub fn dual_integral_space_dimension(uq: &Uq, side: Side) -> usize {
    let dim = uq.dim();
    let mut ech = Echelon::new(dim);
    for x in uq.basis() {
        let d = coproduct_mono(uq, x);
        // one equation per monomial kept in the untouched slot
        let mut rows: alloc::collections::BTreeMap<Mono, SparseVec> = alloc::collections::BTreeMap::new();
        for ([a, b], c) in d.terms() {
            let (kept, evaluated) = match side {
                Side::Left => (*a, *b),
                Side::Right => (*b, *a),
            };
            add_entry(rows.entry(kept).or_default(), uq.mono_index(evaluated), c);
        }
        let one = Mono::new(0, 0, 0);
        add_entry(rows.entry(one).or_default(), uq.mono_index(x), &-&CycNum::one(uq.field()));
        for (_, row) in rows {
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    ech.nullity()
}

fn add_entry(row: &mut SparseVec, col: usize, c: &CycNum) {
    let v = row.entry(col).or_insert_with(|| CycNum::zero(c.field()));
    *v += c;
    if v.is_zero() {
        row.remove(&col);
    }
}

/// `λ` is a left and `μ` a right integral of the dual, and each space of
/// such integrals is one-dimensional.
pub fn check_dual_integrals(uq: &Uq) -> VerificationReport {
    let mut report = VerificationReport::new("integrals", uq.p());
    let lambda = lambda_functional(uq);
    let mu = mu_functional(uq);
    report.push(Check::from_failure("λ is a left dual integral", dual_integral_failure(uq, &lambda, Side::Left)));
    report.push(Check::from_failure("μ is a right dual integral", dual_integral_failure(uq, &mu, Side::Right)));
    let dl = dual_integral_space_dimension(uq, Side::Left);
    report.push(Check::expect("left dual integrals are one-dimensional", dl == 1, format!("nullity {dl}")));
    let dr = dual_integral_space_dimension(uq, Side::Right);
    report.push(Check::expect("right dual integrals are one-dimensional", dr == 1, format!("nullity {dr}")));
    report
}

/// `g = K^{p+1}`.
pub fn balancing_element(uq: &Uq) -> AlgElem {
    uq.k_pow(uq.p() as i64 + 1)
}

fn balancing_inverse(uq: &Uq) -> AlgElem {
    uq.k_pow(-(uq.p() as i64 + 1))
}

/// `S^2` of a basis monomial.
pub fn antipode_squared_mono(uq: &Uq, m: Mono) -> AlgElem {
    antipode_mono(uq, m).map_linear(|n| antipode_mono(uq, n))
}

/// `S^2(x) = g x g^{-1}` on every basis monomial, and `g` is grouplike.
pub fn check_s2_inner(uq: &Uq) -> VerificationReport {
    let mut report = VerificationReport::new("integrals", uq.p());
    let g = balancing_element(uq);
    let gi = balancing_inverse(uq);
    let fail = uq.basis().find_map(|m| {
        let x = uq.mono(m);
        let s2 = antipode_squared_mono(uq, m);
        let conj = &(&g * &x) * &gi;
        (s2 != conj).then(|| format!("x = {m}: S²(x) = {s2}; gxg⁻¹ = {conj}"))
    });
    report.push(Check::from_failure("S² is conjugation by g", fail));
    let grouplike = coproduct(&g) == TensorElem::pure([&g, &g]) && counit(&g).is_one() && &g * &gi == uq.one();
    report.push(Check::expect("g is grouplike", grouplike, format!("g = {g}")));
    report
}

/// `g⁻¹ ⇀ λ`, the functional `x ↦ λ(x g⁻¹)`.
pub fn twisted_lambda(uq: &Uq) -> Functional {
    lambda_functional(uq).left_action(&balancing_inverse(uq))
}

/// The three descriptions of the twisted integral agree: `g⁻¹ ⇀ λ`, `μ ↼ g`
/// and the delta functional at `E^{p-1} F^{p-1}`.
pub fn check_twisted_lambda(uq: &Uq) -> Check {
    let p = uq.p();
    let left = twisted_lambda(uq);
    let right = mu_functional(uq).right_action(&balancing_element(uq));
    let delta = Functional::delta(uq, Mono::new(p - 1, p - 1, 0));
    let ok = left == right && left == delta;
    Check::expect("g⁻¹⇀λ = μ↼g = δ at E^{p-1}F^{p-1}", ok, format!("g⁻¹⇀λ = {left:?}; μ↼g = {right:?}"))
}

/// All products of pairs of basis monomials, indexed by PBW position.
pub struct ProductTable {
    uq: Uq,
    products: Vec<Vec<(Mono, CycNum)>>,
}

impl ProductTable {
    pub fn new(uq: &Uq) -> Self {
        let basis: Vec<Mono> = uq.basis().collect();
        let products = basis.iter().flat_map(|a| basis.iter().map(move |b| uq.mul_mono(*a, *b))).collect();
        ProductTable { uq: uq.clone(), products }
    }

    pub fn from_products(uq: &Uq, products: Vec<Vec<(Mono, CycNum)>>) -> Self {
        assert_eq!(products.len(), uq.dim() * uq.dim());
        ProductTable { uq: uq.clone(), products }
    }

    pub fn get(&self, a: usize, b: usize) -> &[(Mono, CycNum)] {
        &self.products[a * self.uq.dim() + b]
    }
}

/// `λ(ab) = λ(b S²(a))`, `μ(ab) = μ(S²(b) a)` and `(g⁻¹⇀λ)(ab) = (g⁻¹⇀λ)(ba)`
/// on every pair of basis monomials.
pub fn check_radford_symmetry(uq: &Uq, table: &ProductTable) -> VerificationReport {
    let mut report = VerificationReport::new("integrals", uq.p());
    let lambda = lambda_functional(uq);
    let mu = mu_functional(uq);
    let tw = twisted_lambda(uq);
    let dim = uq.dim();
    // S² of a monomial is a scalar multiple of it
    let s2: Vec<CycNum> = uq.basis().map(|m| antipode_squared_mono(uq, m).coeff(m)).collect();
    let (mut lf, mut mf, mut tf) = (None, None, None);
    for i in 0..dim {
        for j in 0..dim {
            let ab = table.get(i, j);
            let ba = table.get(j, i);
            let (a, b) = (uq.mono_at(i), uq.mono_at(j));
            if lf.is_none() {
                let l = lambda.eval_terms(ab);
                let r = &s2[i] * &lambda.eval_terms(ba);
                if l != r {
                    lf = Some(format!("a = {a}, b = {b}: λ(ab) = {l}; λ(bS²(a)) = {r}"));
                }
            }
            if mf.is_none() {
                let l = mu.eval_terms(ab);
                let r = &s2[j] * &mu.eval_terms(ba);
                if l != r {
                    mf = Some(format!("a = {a}, b = {b}: μ(ab) = {l}; μ(S²(b)a) = {r}"));
                }
            }
            if tf.is_none() {
                let l = tw.eval_terms(ab);
                let r = tw.eval_terms(ba);
                if l != r {
                    tf = Some(format!("a = {a}, b = {b}: (g⁻¹⇀λ)(ab) = {l}; (g⁻¹⇀λ)(ba) = {r}"));
                }
            }
        }
    }
    report.push(Check::from_failure("λ(ab) = λ(bS²(a))", lf));
    report.push(Check::from_failure("μ(ab) = μ(S²(b)a)", mf));
    report.push(Check::from_failure("g⁻¹⇀λ is symmetric", tf));
    report
}

/// Every integral and balancing check for one `p`.
pub fn check_integrals(uq: &Uq) -> VerificationReport {
    let mut report = check_two_sided_integral(uq, &integral_element(uq));
    report.checks.extend(check_dual_integrals(uq).checks);
    report.checks.extend(check_s2_inner(uq).checks);
    report.push(check_twisted_lambda(uq));
    report.checks.extend(check_radford_symmetry(uq, &ProductTable::new(uq)).checks);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_support_and_generators() {
        let uq = Uq::new(3).unwrap();
        let big = integral_element(&uq);
        assert_eq!(big.len(), 6);
        assert!(big.terms().all(|(m, c)| m.e == 2 && m.f == 2 && c.is_one()));
        assert!((&uq.gen_e() * &big).is_zero());
        assert!((&uq.gen_f() * &big).is_zero());
        assert_eq!(&uq.gen_k() * &big, big);
    }

    #[test]
    fn functionals_are_deltas() {
        let uq = Uq::new(4).unwrap();
        assert!(lambda_functional(&uq).value(Mono::new(3, 3, 3)).is_one());
        assert!(mu_functional(&uq).value(Mono::new(3, 3, 5)).is_one());
        assert!(lambda_functional(&uq).eval(&uq.one()).is_zero());
        let tw = twisted_lambda(&uq);
        assert!(tw.eval(&integral_element(&uq)).is_one());
        assert!(tw.eval(&uq.one()).is_zero());
    }

    #[test]
    fn s2_on_e() {
        let uq = Uq::new(3).unwrap();
        let s2 = antipode_squared_mono(&uq, Mono::new(1, 0, 0));
        assert_eq!(s2, uq.gen_e().scale(&uq.q(2)));
    }

    #[test]
    fn lambda_is_not_symmetric() {
        let uq = Uq::new(2).unwrap();
        let lambda = lambda_functional(&uq);
        let (a, b) = (Mono::new(1, 0, 0), Mono::new(0, 1, 1));
        let ab = lambda.eval_terms(&uq.mul_mono(a, b));
        let ba = lambda.eval_terms(&uq.mul_mono(b, a));
        assert_ne!(ab, ba);
    }

    #[test]
    fn all_checks_pass_small_p() {
        for p in 2..=3 {
            let uq = Uq::new(p).unwrap();
            let r = check_integrals(&uq);
            assert!(r.passed(), "{r}");
        }
    }
}
