//! The restricted quantum group as an associative algebra over `Q(q)`.
//!
//! Elements are sparse combinations of the PBW monomials `E^m F^n K^l`
//! (`0 <= m, n < p`, `0 <= l < 2p`). Products are normal ordered with a
//! precomputed table of the normal forms of `F^b E^d`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::cyclotomic::{CycField, CycNum};
use crate::error::{Error, Result};
use crate::qnum::q_int;

/// The PBW monomial `E^e F^f K^k`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono {
    pub e: u32,
    pub f: u32,
    pub k: u32,
}

impl Mono {
    pub const fn new(e: u32, f: u32, k: u32) -> Self {
        Mono { e, f, k }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E^{}F^{}K^{}", self.e, self.f, self.k)
    }
}

/// A Laurent polynomial in `K`, reduced modulo `K^{2p} = 1`: sorted
/// `(exponent, coefficient)` pairs with nonzero coefficients.
pub type KPoly = Vec<(u32, CycNum)>;

struct Inner {
    p: u32,
    field: Arc<CycField>,
    /// `q^j` for `0 <= j < 2p`.
    q_pows: Vec<CycNum>,
    /// `fe[b][d]`: normal form of `F^b E^d` as `Σ_i E^{d-i} F^{b-i} g_i(K)`.
    fe: Vec<Vec<Vec<(u32, KPoly)>>>,
}

/// Handle to `Ū_q(sl₂)` for one `p`. Cheap to clone; immutable after
/// construction, so it can be shared across threads.
#[derive(Clone)]
pub struct Uq(Arc<Inner>);

impl fmt::Debug for Uq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Uq(p={})", self.0.p)
    }
}

impl PartialEq for Uq {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p
    }
}

impl Eq for Uq {}

impl Uq {
    pub fn new(p: u32) -> Result<Self> {
        let field = CycField::new(p)?;
        let two_p = 2 * p;
        let q_pows = (0..two_p as i64).map(|j| CycNum::q_pow(&field, j)).collect();
        let mut inner = Inner { p, field, q_pows, fe: Vec::new() };
        inner.fe = build_fe_table(&inner);
        Ok(Uq(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.0.field
    }

    /// `2p^3`.
    pub fn dim(&self) -> usize {
        let p = self.0.p as usize;
        2 * p * p * p
    }

    /// `q^k` for any integer `k`.
    pub fn q(&self, k: i64) -> CycNum {
        self.0.q_pows[k.rem_euclid(2 * self.0.p as i64) as usize].clone()
    }

    pub fn qint(&self, n: i64) -> CycNum {
        q_int(&self.0.field, n)
    }

    pub fn scalar(&self, n: i64) -> CycNum {
        CycNum::from_int(&self.0.field, n)
    }

    pub fn mono_index(&self, m: Mono) -> usize {
        let p = self.0.p as usize;
        ((m.e as usize * p) + m.f as usize) * 2 * p + m.k as usize
    }

    pub fn mono_at(&self, idx: usize) -> Mono {
        let p = self.0.p as usize;
        let k = idx % (2 * p);
        let rest = idx / (2 * p);
        Mono::new((rest / p) as u32, (rest % p) as u32, k as u32)
    }

    /// All basis monomials in canonical (lexicographic) order.
    pub fn basis(&self) -> impl Iterator<Item = Mono> + '_ {
        (0..self.dim()).map(move |i| self.mono_at(i))
    }

    pub fn in_range(&self, m: Mono) -> bool {
        m.e < self.0.p && m.f < self.0.p && m.k < 2 * self.0.p
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem { uq: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> AlgElem {
        self.monomial(0, 0, 0)
    }

    /// `c · E^e F^f K^k`, with `K` exponent taken mod `2p` and zero when the
    /// `E` or `F` exponent reaches `p`.
    pub fn term(&self, e: u32, f: u32, k: i64, c: CycNum) -> AlgElem {
        let mut out = self.zero();
        if e < self.0.p && f < self.0.p && !c.is_zero() {
            let k = k.rem_euclid(2 * self.0.p as i64) as u32;
            out.terms.insert(Mono::new(e, f, k), c);
        }
        out
    }

    pub fn monomial(&self, e: u32, f: u32, k: i64) -> AlgElem {
        self.term(e, f, k, CycNum::one(&self.0.field))
    }

    pub fn mono(&self, m: Mono) -> AlgElem {
        self.monomial(m.e, m.f, m.k as i64)
    }

    pub fn gen_e(&self) -> AlgElem {
        self.monomial(1, 0, 0)
    }

    pub fn gen_f(&self) -> AlgElem {
        self.monomial(0, 1, 0)
    }

    pub fn gen_k(&self) -> AlgElem {
        self.monomial(0, 0, 1)
    }

    /// `K^{-1} = K^{2p-1}`.
    pub fn gen_k_inv(&self) -> AlgElem {
        self.monomial(0, 0, -1)
    }

    pub fn k_pow(&self, l: i64) -> AlgElem {
        self.monomial(0, 0, l)
    }

    pub fn scalar_elem(&self, c: CycNum) -> AlgElem {
        self.term(0, 0, 0, c)
    }

    /// Builds an element from a `K`-polynomial.
    pub fn from_kpoly(&self, g: &KPoly) -> AlgElem {
        let mut out = self.zero();
        for (j, c) in g {
            out.add_term(Mono::new(0, 0, *j), c);
        }
        out
    }

    /// `[E^r, F^s] = Σ_{i>=1} E^{r-i} F^{s-i} f_i(K)`: returns the pairs
    /// `(i, f_i)` with nonzero `f_i`.
    pub fn commutator_powers(&self, r: u32, s: u32) -> Result<Vec<(u32, KPoly)>> {
        let p = self.0.p;
        if r >= p || s >= p {
            return Err(Error::OutOfRange(format!("commutator_powers({r}, {s}) needs r, s < {p}")));
        }
        Ok(self.0.fe[s as usize][r as usize]
            .iter()
            .filter(|(i, _)| *i > 0)
            .map(|(i, g)| (*i, g.iter().map(|(j, c)| (*j, -c)).collect()))
            .collect())
    }

    /// Normal form of the product of two basis monomials.
    pub fn mul_mono(&self, a: Mono, b: Mono) -> Vec<(Mono, CycNum)> {
        let mut out = Vec::new();
        self.mul_mono_with(a, b, |m, c| out.push((m, c)));
        out
    }

    fn mul_mono_with(&self, a: Mono, b: Mono, mut emit: impl FnMut(Mono, CycNum)) {
        let inner = &*self.0;
        let p = inner.p;
        let two_p = 2 * p as i64;
        // E^a F^b K^c · E^d F^e K^f = q^{2c(d-e)} E^a (F^b E^d) F^e K^{c+f}
        let base = 2 * a.k as i64 * (b.e as i64 - b.f as i64);
        for (i, g) in &inner.fe[a.f as usize][b.e as usize] {
            let ne = a.e + b.e - i;
            let nf = a.f - i + b.f;
            if ne >= p || nf >= p {
                continue;
            }
            for (j, gj) in g {
                // K^j F^e = q^{-2je} F^e K^j
                let qexp = (base - 2 * *j as i64 * b.f as i64).rem_euclid(two_p);
                let k = ((*j + a.k + b.k) as i64 % two_p) as u32;
                let c = if qexp == 0 { gj.clone() } else { gj * &inner.q_pows[qexp as usize] };
                emit(Mono::new(ne, nf, k), c);
            }
        }
    }

    /// Casimir element `C = EF + (q^{-1}K + qK^{-1}) / (q - q^{-1})^2`.
    pub fn casimir(&self) -> AlgElem {
        let d2 = self.q_minus_q_inv().pow(2).inv().expect("q - q^-1 is nonzero");
        let mut c = self.monomial(1, 1, 0);
        c = &c + &self.term(0, 0, 1, &self.q(-1) * &d2);
        c = &c + &self.term(0, 0, -1, &self.q(1) * &d2);
        c
    }

    pub fn q_minus_q_inv(&self) -> CycNum {
        &self.q(1) - &self.q(-1)
    }

    /// Casimir eigenvalue `β_s = (q^s + q^{-s}) / (q - q^{-1})^2`, `0 <= s <= p`.
    pub fn beta(&self, s: i64) -> Result<CycNum> {
        if s < 0 || s > self.0.p as i64 {
            return Err(Error::OutOfRange(format!("beta({s}) needs 0 <= s <= {}", self.0.p)));
        }
        Ok(self.beta_unchecked(s))
    }

    fn beta_unchecked(&self, s: i64) -> CycNum {
        let d2 = self.q_minus_q_inv().pow(2).inv().expect("nonzero");
        &(&self.q(s) + &self.q(-s)) * &d2
    }

    /// Minimal polynomial of the Casimir element,
    /// `(x - β_0)(x - β_p) ∏_{s=1}^{p-1} (x - β_s)^2`.
    pub fn casimir_min_poly(&self) -> CentralPoly {
        let p = self.0.p as i64;
        let mut roots = vec![self.beta_unchecked(0), self.beta_unchecked(p)];
        for s in 1..p {
            roots.push(self.beta_unchecked(s));
            roots.push(self.beta_unchecked(s));
        }
        CentralPoly::from_roots(self.field(), &roots)
    }

    /// `P(x)` by Horner's rule.
    pub fn eval_poly_at(&self, x: &AlgElem, poly: &CentralPoly) -> AlgElem {
        let mut acc = self.zero();
        for c in poly.coeffs.iter().rev() {
            acc = &(&acc * x) + &self.scalar_elem(c.clone());
        }
        acc
    }

    /// True iff `x` commutes with `E`, `F` and `K`.
    pub fn is_central(&self, x: &AlgElem) -> bool {
        [self.gen_e(), self.gen_f(), self.gen_k()].iter().all(|g| (g * x) == (x * g))
    }
}

/// `g(q^a K)`: scales the coefficient of `K^j` by `q^{aj}`.
fn kpoly_subst(inner: &Inner, g: &KPoly, a: i64) -> KPoly {
    let two_p = 2 * inner.p as i64;
    g.iter()
        .map(|(j, c)| {
            let e = (a * *j as i64).rem_euclid(two_p) as usize;
            (*j, c * &inner.q_pows[e])
        })
        .collect()
}

fn kpoly_mul(inner: &Inner, a: &KPoly, b: &KPoly) -> KPoly {
    let two_p = 2 * inner.p;
    let mut acc: Vec<Option<CycNum>> = vec![None; two_p as usize];
    for (i, x) in a {
        for (j, y) in b {
            let k = ((i + j) % two_p) as usize;
            let t = x * y;
            match &mut acc[k] {
                Some(v) => *v += &t,
                slot => *slot = Some(t),
            }
        }
    }
    collect_kpoly(acc)
}

fn kpoly_add(inner: &Inner, a: &KPoly, b: &KPoly, negate_b: bool) -> KPoly {
    let mut acc: Vec<Option<CycNum>> = vec![None; 2 * inner.p as usize];
    for (j, c) in a {
        acc[*j as usize] = Some(c.clone());
    }
    for (j, c) in b {
        let c = if negate_b { -c } else { c.clone() };
        match &mut acc[*j as usize] {
            Some(v) => *v += &c,
            slot => *slot = Some(c),
        }
    }
    collect_kpoly(acc)
}

fn collect_kpoly(acc: Vec<Option<CycNum>>) -> KPoly {
    acc.into_iter().enumerate().filter_map(|(j, c)| c.filter(|c| !c.is_zero()).map(|c| (j as u32, c))).collect()
}

/// `c_m(K)` with `[E, F^m] = F^{m-1} c_m(K)`: derived from `[E, F] = h(K)`,
/// `h(K) = (K - K^{-1})/(q - q^{-1})`, as `c_m(K) = Σ_{j<m} h(q^{-2j} K)`.
fn e_past_f_power(inner: &Inner, m: u32) -> KPoly {
    let two_p = 2 * inner.p;
    let d = (&inner.q_pows[1] - &inner.q_pows[(two_p - 1) as usize]).inv().expect("nonzero");
    let h: KPoly = vec![(1, d.clone()), (two_p - 1, -&d)];
    let mut acc: KPoly = Vec::new();
    for j in 0..m as i64 {
        acc = kpoly_add(inner, &acc, &kpoly_subst(inner, &h, -2 * j), false);
    }
    acc
}

fn build_fe_table(inner: &Inner) -> Vec<Vec<Vec<(u32, KPoly)>>> {
    let p = inner.p;
    let one = CycNum::one(&inner.field);
    let c: Vec<KPoly> = (0..p).map(|m| e_past_f_power(inner, m)).collect();
    let mut table = Vec::with_capacity(p as usize);
    for b in 0..p {
        let mut row: Vec<Vec<(u32, KPoly)>> = Vec::with_capacity(p as usize);
        let mut cur: Vec<(u32, KPoly)> = vec![(0, vec![(0, one.clone())])];
        row.push(cur.clone());
        for _d in 1..p {
            // (Σ_i E^{d-1-i} F^{b-i} g_i(K)) · E
            //   = Σ_i E^{d-i} F^{b-i} g_i(q²K) - E^{d-1-i} F^{b-i-1} c_{b-i}(K) g_i(q²K)
            let mut next: BTreeMap<u32, KPoly> = BTreeMap::new();
            for (i, g) in &cur {
                let shifted = kpoly_subst(inner, g, 2);
                let slot = next.entry(*i).or_default();
                *slot = kpoly_add(inner, slot, &shifted, false);
                if b > *i {
                    let prod = kpoly_mul(inner, &c[(b - i) as usize], &shifted);
                    let slot = next.entry(i + 1).or_default();
                    *slot = kpoly_add(inner, slot, &prod, true);
                }
            }
            cur = next.into_iter().filter(|(_, g)| !g.is_empty()).collect();
            row.push(cur.clone());
        }
        table.push(row);
    }
    table
}

/// A univariate polynomial over `Q(q)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralPoly {
    coeffs: Vec<CycNum>,
}

impl CentralPoly {
    pub fn from_roots(field: &Arc<CycField>, roots: &[CycNum]) -> Self {
        let mut coeffs = vec![CycNum::one(field)];
        for r in roots {
            // multiply by (x - r)
            let mut next = vec![CycNum::zero(field); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &(c * r);
            }
            coeffs = next;
        }
        CentralPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact division by `(x - r)`; `None` when `r` is not a root.
    pub fn divide_linear(&self, r: &CycNum) -> Option<Self> {
        let n = self.degree();
        let mut quot = vec![CycNum::zero(r.field()); n];
        let mut carry = CycNum::zero(r.field());
        for i in (0..=n).rev() {
            let v = &self.coeffs[i] + &carry;
            if i == 0 {
                return v.is_zero().then_some(CentralPoly { coeffs: quot });
            }
            carry = &v * r;
            quot[i - 1] = v;
        }
        unreachable!()
    }
}

/// An element of `Ū_q(sl₂)`: a sparse map from PBW monomials to `Q(q)`,
/// with no stored zeros.
#[derive(Clone)]
pub struct AlgElem {
    uq: Uq,
    terms: BTreeMap<Mono, CycNum>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.uq == other.uq && self.terms == other.terms
    }
}

impl Eq for AlgElem {}

impl AlgElem {
    pub fn uq(&self) -> &Uq {
        &self.uq
    }

    pub fn p(&self) -> u32 {
        self.uq.p()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order on `(e, f, k)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Mono) -> CycNum {
        self.terms.get(&m).cloned().unwrap_or_else(|| CycNum::zero(self.uq.field()))
    }

    /// Builds an element from raw terms; fails on out-of-range monomials or
    /// coefficients from a different field.
    pub fn from_terms(uq: &Uq, terms: impl IntoIterator<Item = (Mono, CycNum)>) -> Result<Self> {
        let mut out = uq.zero();
        for (m, c) in terms {
            if !uq.in_range(m) {
                return Err(Error::OutOfRange(format!("monomial {m} for p = {}", uq.p())));
            }
            if c.p() != uq.p() {
                return Err(Error::MismatchedP(uq.p(), c.p()));
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }

    pub fn add_term(&mut self, m: Mono, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &CycNum) -> AlgElem {
        if c.is_zero() {
            return self.uq.zero();
        }
        AlgElem { uq: self.uq.clone(), terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> AlgElem {
        self.scale(&self.uq.scalar(n))
    }

    fn check_same(&self, other: &Self) {
        assert!(self.uq.p() == other.uq.p(), "mixing elements for p = {} and p = {}", self.p(), other.p());
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.p() != other.p() {
            return Err(Error::MismatchedP(self.p(), other.p()));
        }
        Ok(self * other)
    }

    pub fn pow(&self, n: u32) -> AlgElem {
        (0..n).fold(self.uq.one(), |acc, _| &acc * self)
    }

    /// Dense coefficient vector in canonical monomial order.
    pub fn to_dense(&self) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(self.uq.field()); self.uq.dim()];
        for (m, c) in &self.terms {
            v[self.uq.mono_index(*m)] = c.clone();
        }
        v
    }

    /// Coefficients keyed by PBW position.
    pub fn to_sparse(&self) -> crate::linalg::SparseVec {
        self.terms.iter().map(|(m, c)| (self.uq.mono_index(*m), c.clone())).collect()
    }

    pub fn from_dense(uq: &Uq, v: &[CycNum]) -> AlgElem {
        let mut out = uq.zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(uq.mono_at(i), c.clone());
            }
        }
        out
    }

    /// Applies a linear map defined on basis monomials.
    pub fn map_linear(&self, f: impl Fn(Mono) -> AlgElem) -> AlgElem {
        let mut out = self.uq.zero();
        for (m, c) in &self.terms {
            out = &out + &f(*m).scale(c);
        }
        out
    }
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem { uq: self.uq.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Mul for &AlgElem {
    type Output = AlgElem;
    fn mul(self, rhs: &AlgElem) -> AlgElem {
        self.check_same(rhs);
        let uq = &self.uq;
        if self.is_zero() || rhs.is_zero() {
            return uq.zero();
        }
        let mut acc: Vec<Option<CycNum>> = vec![None; uq.dim()];
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let cc = ca * cb;
                uq.mul_mono_with(*a, *b, |m, c| {
                    let t = &c * &cc;
                    match &mut acc[uq.mono_index(m)] {
                        Some(v) => *v += &t,
                        slot => *slot = Some(t),
                    }
                });
            }
        }
        let terms = acc.into_iter().enumerate().filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (uq.mono_at(i), c))).collect();
        AlgElem { uq: uq.clone(), terms }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for AlgElem {
            type Output = AlgElem;
            fn $m(self, rhs: AlgElem) -> AlgElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&AlgElem> for AlgElem {
            type Output = AlgElem;
            fn $m(self, rhs: &AlgElem) -> AlgElem {
                (&self).$m(rhs)
            }
        }
        impl $tr<AlgElem> for &AlgElem {
            type Output = AlgElem;
            fn $m(self, rhs: AlgElem) -> AlgElem {
                self.$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        -&self
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem[p={}]({self})", self.p())
    }
}

/// Basis size, closure of basis products, the defining relations and
/// associativity `(g a) b = g (a b)` for generators `g` and basis monomials
/// `a`, `b`, which gives associativity on all of the algebra.
pub fn check_algebra(uq: &Uq) -> crate::report::VerificationReport {
    use crate::report::Check;
    let p = uq.p();
    let mut report = crate::report::VerificationReport::new("algebra", p);
    let basis: Vec<Mono> = uq.basis().collect();
    let distinct = basis.iter().collect::<alloc::collections::BTreeSet<_>>().len();
    let want = 2 * (p as usize).pow(3);
    report.push(Check::expect("PBW basis size", basis.len() == want && distinct == want, format!("{distinct} monomials (2p³ = {want})")));

    let closure = basis.iter().find_map(|a| {
        basis.iter().find_map(|b| uq.mul_mono(*a, *b).iter().find(|(m, _)| !uq.in_range(*m)).map(|(m, _)| format!("{a}·{b} produces {m}")))
    });
    report.push(Check::from_failure("basis products stay in the span", closure));

    let (e, f, k, ki) = (uq.gen_e(), uq.gen_f(), uq.gen_k(), uq.gen_k_inv());
    let h = (&k - &ki).scale(&uq.q_minus_q_inv().inv().expect("nonzero"));
    let relations = [
        ("E^p = 0", e.pow(p), uq.zero()),
        ("F^p = 0", f.pow(p), uq.zero()),
        ("K^2p = 1", k.pow(2 * p), uq.one()),
        ("K K^-1 = 1", &k * &ki, uq.one()),
        ("K E K^-1 = q² E", &(&k * &e) * &ki, e.scale(&uq.q(2))),
        ("K F K^-1 = q^-2 F", &(&k * &f) * &ki, f.scale(&uq.q(-2))),
        ("[E, F] = (K - K^-1)/(q - q^-1)", &(&e * &f) - &(&f * &e), h),
    ];
    let rel_fail = relations.iter().find_map(|(name, l, r)| (l != r).then(|| format!("{name}: lhs = {l}, rhs = {r}")));
    report.push(Check::from_failure("defining relations", rel_fail));

    let gens = [e, f, k];
    let monos: Vec<AlgElem> = basis.iter().map(|m| uq.mono(*m)).collect();
    let mut assoc = None;
    'outer: for g in &gens {
        for a in &monos {
            let ga = g * a;
            for b in &monos {
                let (l, r) = (&ga * b, g * &(a * b));
                if l != r {
                    assoc = Some(format!("({g})({a})·({b}) = {l}; ({g})·(({a})({b})) = {r}"));
                    break 'outer;
                }
            }
        }
    }
    report.push(Check::from_failure("associativity on generator × basis × basis", assoc));
    report
}

/// Centrality of the Casimir element, `Φ_p(C) = 0`, and minimality: dropping
/// any single linear factor leaves a polynomial that is nonzero at `C`.
pub fn check_casimir(uq: &Uq) -> crate::report::VerificationReport {
    use crate::report::Check;
    let p = uq.p();
    let mut report = crate::report::VerificationReport::new("casimir", p);
    let c = uq.casimir();
    report.push(Check::expect("Casimir is central", uq.is_central(&c), format!("C = {c}")));
    let poly = uq.casimir_min_poly();
    let at_c = uq.eval_poly_at(&c, &poly);
    report.push(Check::expect("Φ_p(C) = 0", at_c.is_zero(), format!("degree {}, value {at_c}", poly.degree())));
    let minimal = (0..=p as i64).find_map(|s| {
        let beta = uq.beta(s).expect("in range");
        let reduced = poly.divide_linear(&beta)?;
        uq.eval_poly_at(&c, &reduced).is_zero().then(|| format!("Φ_p/(x - β_{s}) vanishes at C"))
    });
    report.push(Check::from_failure("Φ_p is minimal", minimal));
    report
}
