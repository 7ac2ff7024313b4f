//! Coproduct, counit and antipode.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::algebra::{AlgElem, Mono, Uq};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::qnum::q_binom;
use crate::report::{Check, VerificationReport};

/// An element of the `N`-fold tensor power, keyed by monomial tuples.
#[derive(Clone)]
pub struct Tensor<const N: usize> {
    uq: Uq,
    terms: BTreeMap<[Mono; N], CycNum>,
}

/// `Ū ⊗ Ū`.
pub type TensorElem = Tensor<2>;

impl<const N: usize> PartialEq for Tensor<N> {
    fn eq(&self, other: &Self) -> bool {
        self.uq == other.uq && self.terms == other.terms
    }
}

impl<const N: usize> Eq for Tensor<N> {}

impl<const N: usize> Tensor<N> {
    pub fn zero(uq: &Uq) -> Self {
        Tensor { uq: uq.clone(), terms: BTreeMap::new() }
    }

    pub fn uq(&self) -> &Uq {
        &self.uq
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Mono; N], &CycNum)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: [Mono; N], c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// Builds from raw terms, validating monomial ranges.
    pub fn from_terms(uq: &Uq, terms: impl IntoIterator<Item = ([Mono; N], CycNum)>) -> Result<Self> {
        let mut out = Self::zero(uq);
        for (key, c) in terms {
            if let Some(m) = key.iter().find(|m| !uq.in_range(**m)) {
                return Err(Error::OutOfRange(format!("monomial {m} for p = {}", uq.p())));
            }
            out.add_term(key, &c);
        }
        Ok(out)
    }

    /// `a_1 ⊗ … ⊗ a_N`.
    pub fn pure(factors: [&AlgElem; N]) -> Self {
        let uq = factors[0].uq().clone();
        let mut acc: BTreeMap<[Mono; N], CycNum> = BTreeMap::new();
        acc.insert([Mono::new(0, 0, 0); N], CycNum::one(uq.field()));
        for (slot, factor) in factors.iter().enumerate() {
            let mut next = BTreeMap::new();
            for (key, c) in &acc {
                for (m, d) in factor.terms() {
                    let mut k = *key;
                    k[slot] = *m;
                    next.insert(k, c * d);
                }
            }
            acc = next;
        }
        Tensor { uq, terms: acc }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = Self::zero(&self.uq);
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    /// Applies a linear map `Ū → Ū^{⊗M}` to one slot, giving `N - 1 + M` slots.
    /// `R` must equal `N - 1 + M`.
    pub fn expand_slot<const M: usize, const R: usize>(&self, slot: usize, f: impl Fn(Mono) -> Tensor<M>) -> Tensor<R> {
        assert_eq!(R, N - 1 + M);
        let mut out = Tensor::<R>::zero(&self.uq);
        let mut cache: BTreeMap<Mono, Tensor<M>> = BTreeMap::new();
        for (key, c) in &self.terms {
            let image = cache.entry(key[slot]).or_insert_with(|| f(key[slot]));
            for (sub, d) in &image.terms {
                let mut k = [Mono::new(0, 0, 0); R];
                k[..slot].copy_from_slice(&key[..slot]);
                k[slot..slot + M].copy_from_slice(sub);
                k[slot + M..].copy_from_slice(&key[slot + 1..]);
                out.add_term(k, &(c * d));
            }
        }
        out
    }
}

impl TensorElem {
    /// `m(f ⊗ g)`: multiplies the images of the two slots.
    pub fn contract(&self, f: impl Fn(Mono) -> AlgElem, g: impl Fn(Mono) -> AlgElem) -> AlgElem {
        let mut out = self.uq.zero();
        for ([a, b], c) in &self.terms {
            out = &out + &(&f(*a) * &g(*b)).scale(c);
        }
        out
    }

    /// Swaps the two tensor factors.
    pub fn flip(&self) -> TensorElem {
        let mut out = TensorElem::zero(&self.uq);
        for ([a, b], c) in &self.terms {
            out.add_term([*b, *a], c);
        }
        out
    }
}

impl<const N: usize> Add for &Tensor<N> {
    type Output = Tensor<N>;
    fn add(self, rhs: &Tensor<N>) -> Tensor<N> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl<const N: usize> Sub for &Tensor<N> {
    type Output = Tensor<N>;
    fn sub(self, rhs: &Tensor<N>) -> Tensor<N> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

/// Slotwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
impl<const N: usize> Mul for &Tensor<N> {
    type Output = Tensor<N>;
    fn mul(self, rhs: &Tensor<N>) -> Tensor<N> {
        let uq = &self.uq;
        let mut out = Tensor::zero(uq);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                // expand slot by slot
                let mut partial: Vec<([Mono; N], CycNum)> = alloc::vec![([Mono::new(0, 0, 0); N], ca * cb)];
                for slot in 0..N {
                    let prod = uq.mul_mono(ka[slot], kb[slot]);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (key, c) in &partial {
                        for (m, d) in &prod {
                            let mut k = *key;
                            k[slot] = *m;
                            next.push((k, c * d));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, &c);
                }
            }
        }
        out
    }
}

impl<const N: usize> fmt::Display for Tensor<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*")?;
            for (j, m) in key.iter().enumerate() {
                if j > 0 {
                    f.write_str("⊗")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Debug for Tensor<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor<{N}>[p={}]({self})", self.uq.p())
    }
}

/// Coproduct of a basis monomial, `Δ(E)^m Δ(F)^n Δ(K)^l`, from the generator
/// values `Δ(E) = 1⊗E + E⊗K`, `Δ(F) = K⁻¹⊗F + F⊗1`, `Δ(K) = K⊗K`.
pub fn coproduct_mono(uq: &Uq, m: Mono) -> TensorElem {
    let one = uq.one();
    let de = &TensorElem::pure([&one, &uq.gen_e()]) + &TensorElem::pure([&uq.gen_e(), &uq.gen_k()]);
    let df = &TensorElem::pure([&uq.gen_k_inv(), &uq.gen_f()]) + &TensorElem::pure([&uq.gen_f(), &one]);
    let kl = uq.k_pow(m.k as i64);
    let mut acc = TensorElem::pure([&kl, &kl]);
    for _ in 0..m.f {
        acc = &df * &acc;
    }
    for _ in 0..m.e {
        acc = &de * &acc;
    }
    acc
}

/// `Δ(x)` by linearity over the basis.
pub fn coproduct(x: &AlgElem) -> TensorElem {
    let mut out = TensorElem::zero(x.uq());
    for (m, c) in x.terms() {
        out = &out + &coproduct_mono(x.uq(), *m).scale(c);
    }
    out
}

/// The double-sum closed form
/// `Σ_{r,s} q^{r(m-r)+s(n-s)-2rs} [m r][n s] E^r F^{n-s} K^{l-s} ⊗ E^{m-r} F^s K^{l+r}`.
pub fn coproduct_closed_form(uq: &Uq, mono: Mono) -> Result<TensorElem> {
    if !uq.in_range(mono) {
        return Err(Error::OutOfRange(format!("monomial {mono} for p = {}", uq.p())));
    }
    let (m, n, l) = (mono.e as i64, mono.f as i64, mono.k as i64);
    let two_p = 2 * uq.p() as i64;
    let mut out = TensorElem::zero(uq);
    for r in 0..=m {
        let br = q_binom(uq.field(), m as u32, r as u32)?;
        for s in 0..=n {
            let bs = q_binom(uq.field(), n as u32, s as u32)?;
            let c = &(&uq.q(r * (m - r) + s * (n - s) - 2 * r * s) * &br) * &bs;
            let left = Mono::new(r as u32, (n - s) as u32, (l - s).rem_euclid(two_p) as u32);
            let right = Mono::new((m - r) as u32, s as u32, (l + r).rem_euclid(two_p) as u32);
            out.add_term([left, right], &c);
        }
    }
    Ok(out)
}

/// `ε`: the sum of the coefficients of the pure `K`-powers.
pub fn counit(x: &AlgElem) -> CycNum {
    let mut acc = CycNum::zero(x.uq().field());
    for (m, c) in x.terms() {
        if m.e == 0 && m.f == 0 {
            acc += c;
        }
    }
    acc
}

pub fn counit_mono(uq: &Uq, m: Mono) -> CycNum {
    if m.e == 0 && m.f == 0 {
        CycNum::one(uq.field())
    } else {
        CycNum::zero(uq.field())
    }
}

/// `S(E^m F^n K^l) = S(K)^l S(F)^n S(E)^m` with `S(E) = -EK⁻¹`,
/// `S(F) = -KF`, `S(K) = K⁻¹`.
pub fn antipode_mono(uq: &Uq, m: Mono) -> AlgElem {
    let se = -&(&uq.gen_e() * &uq.gen_k_inv());
    let sf = -&(&uq.gen_k() * &uq.gen_f());
    let mut acc = uq.k_pow(-(m.k as i64));
    for _ in 0..m.f {
        acc = &acc * &sf;
    }
    for _ in 0..m.e {
        acc = &acc * &se;
    }
    acc
}

pub fn antipode(x: &AlgElem) -> AlgElem {
    x.map_linear(|m| antipode_mono(x.uq(), m))
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(&T) -> Option<String>) -> Option<String> {
    items.into_iter().find_map(|x| f(&x))
}

pub fn check_coassociativity(uq: &Uq) -> Check {
    let name = "coassociativity";
    let fail = first_failure(uq.basis(), |m| {
        let d = coproduct_mono(uq, *m);
        let left: Tensor<3> = d.expand_slot::<2, 3>(0, |a| coproduct_mono(uq, a));
        let right: Tensor<3> = d.expand_slot::<2, 3>(1, |b| coproduct_mono(uq, b));
        (left != right).then(|| format!("x = {m}: (Δ⊗id)Δ(x) = {left}; (id⊗Δ)Δ(x) = {right}"))
    });
    Check::from_failure(name, fail)
}

pub fn check_counit_axiom(uq: &Uq) -> Check {
    let fail = first_failure(uq.basis(), |m| {
        let d = coproduct_mono(uq, *m);
        let x = uq.mono(*m);
        let left = d.contract(|a| uq.scalar_elem(counit_mono(uq, a)), |b| uq.mono(b));
        let right = d.contract(|a| uq.mono(a), |b| uq.scalar_elem(counit_mono(uq, b)));
        (left != x || right != x).then(|| format!("x = {m}: (ε⊗id)Δ(x) = {left}; (id⊗ε)Δ(x) = {right}"))
    });
    Check::from_failure("counit axiom", fail)
}

pub fn check_antipode_axiom(uq: &Uq) -> Check {
    let fail = first_failure(uq.basis(), |m| {
        let d = coproduct_mono(uq, *m);
        let target = uq.scalar_elem(counit_mono(uq, *m));
        let left = d.contract(|a| antipode_mono(uq, a), |b| uq.mono(b));
        let right = d.contract(|a| uq.mono(a), |b| antipode_mono(uq, b));
        (left != target || right != target).then(|| format!("x = {m}: m(S⊗id)Δ(x) = {left}; m(id⊗S)Δ(x) = {right}; ε(x)1 = {target}"))
    });
    Check::from_failure("antipode axiom", fail)
}

/// `Δ(ab) = Δ(a)Δ(b)` on the given pairs of basis monomials.
pub fn check_coproduct_multiplicative(uq: &Uq, pairs: impl IntoIterator<Item = (Mono, Mono)>) -> Check {
    let fail = first_failure(pairs, |(a, b)| {
        let left = coproduct(&(&uq.mono(*a) * &uq.mono(*b)));
        let right = &coproduct_mono(uq, *a) * &coproduct_mono(uq, *b);
        (left != right).then(|| format!("a = {a}, b = {b}: Δ(ab) = {left}; Δ(a)Δ(b) = {right}"))
    });
    Check::from_failure("coproduct is multiplicative", fail)
}

pub fn check_closed_form_coproduct(uq: &Uq) -> Check {
    let fail = first_failure(uq.basis(), |m| {
        let closed = coproduct_closed_form(uq, *m).expect("basis monomial in range");
        let generated = coproduct_mono(uq, *m);
        (closed != generated).then(|| format!("x = {m}: closed form = {closed}; generator route = {generated}"))
    });
    Check::from_failure("closed-form coproduct", fail)
}

pub fn all_basis_pairs(uq: &Uq) -> Vec<(Mono, Mono)> {
    let basis: Vec<Mono> = uq.basis().collect();
    basis.iter().flat_map(|a| basis.iter().map(move |b| (*a, *b))).collect()
}

/// Every Hopf-algebra axiom on every basis monomial, and multiplicativity of
/// `Δ` on all basis pairs.
pub fn check_hopf_axioms(uq: &Uq) -> VerificationReport {
    let mut report = VerificationReport::new("hopf", uq.p());
    report.push(check_coassociativity(uq));
    report.push(check_counit_axiom(uq));
    report.push(check_antipode_axiom(uq));
    report.push(check_coproduct_multiplicative(uq, all_basis_pairs(uq)));
    report.push(check_closed_form_coproduct(uq));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_coproducts() {
        let uq = Uq::new(3).unwrap();
        let one = uq.one();
        assert_eq!(coproduct(&one), TensorElem::pure([&one, &one]));
        let de = &TensorElem::pure([&one, &uq.gen_e()]) + &TensorElem::pure([&uq.gen_e(), &uq.gen_k()]);
        assert_eq!(coproduct(&uq.gen_e()), de);
        let k3 = uq.k_pow(3);
        assert_eq!(coproduct(&k3), TensorElem::pure([&k3, &k3]));
    }

    #[test]
    fn closed_form_on_k_powers_and_e() {
        let uq = Uq::new(2).unwrap();
        for l in 0..4 {
            let k = uq.k_pow(l);
            assert_eq!(coproduct_closed_form(&uq, Mono::new(0, 0, l as u32)).unwrap(), TensorElem::pure([&k, &k]));
        }
        assert_eq!(coproduct_closed_form(&uq, Mono::new(1, 0, 0)).unwrap(), coproduct(&uq.gen_e()));
        assert_eq!(coproduct_closed_form(&uq, Mono::new(1, 1, 0)).unwrap(), coproduct_mono(&uq, Mono::new(1, 1, 0)));
        assert!(coproduct_closed_form(&uq, Mono::new(2, 0, 0)).is_err());
    }

    #[test]
    fn counit_values() {
        let uq = Uq::new(3).unwrap();
        assert!(counit(&uq.one()).is_one());
        assert!(counit(&uq.k_pow(3)).is_one());
        for m in uq.basis().filter(|m| m.e + m.f > 0) {
            assert!(counit(&uq.mono(m)).is_zero());
        }
    }

    #[test]
    fn antipode_on_generators() {
        let uq = Uq::new(3).unwrap();
        assert_eq!(antipode(&uq.one()), uq.one());
        assert_eq!(antipode(&uq.gen_e()), -&(&uq.gen_e() * &uq.gen_k_inv()));
        assert_eq!(antipode(&antipode(&uq.gen_e())), uq.gen_e().scale(&uq.q(2)));
        // S(K)K = 1 = ε(K)1
        assert_eq!(&antipode(&uq.gen_k()) * &uq.gen_k(), uq.one());
    }

    #[test]
    fn hopf_axioms_small_p() {
        for p in [2, 3] {
            let uq = Uq::new(p).unwrap();
            let report = check_hopf_axioms(&uq);
            assert!(report.passed(), "{report}");
        }
    }
}
