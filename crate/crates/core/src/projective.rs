//! Weight vectors inside the algebra spanning the irreducible and the
//! indecomposable projective left modules, and the primitive idempotents
//! they carry.
//!
//! For a label `(α, s, t)` with `1 <= t <= s <= p` the seed is the weight
//! projector `v = Σ_l (α q^{-(s-2t+1)})^l K^l`. From it
//!
//! * `a_0 = E^{p-1} F^{p-t} v`, `a_n = F^n a_0`;
//! * for `s < p`, with `w = Σ_{n=1}^{p-s} μ_n E^{p-n} F^{p-t-n} v`:
//!   `x_0 = E^{p-s-1} w / ∏_{i=1}^{p-s-1}(-α[i][p-s-i])`, `x_k = F^k x_0`,
//!   `b_0 = Σ_{n=1}^{p-s} μ_n E^{p-n-1} F^{p-t-n} v`, `b_n = F^n b_0` and
//!   `y_k = F^{s+k} b_0`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgElem, Uq};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Insert, Matrix};
use crate::report::{Check, VerificationReport};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `(α, s, t)` with `1 <= t <= s <= p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLabel {
    pub alpha: Sign,
    pub s: u32,
    pub t: u32,
}

impl ProjLabel {
    pub fn new(p: u32, alpha: Sign, s: u32, t: u32) -> Result<Self> {
        if s == 0 || s > p || t == 0 || t > s {
            return Err(Error::OutOfRange(format!("label ({alpha}, {s}, {t}) needs 1 <= t <= s <= {p}")));
        }
        Ok(ProjLabel { alpha, s, t })
    }

    /// All `p(p+1)` labels: `α = +` before `α = -`, then by `s`, then `t`.
    pub fn all(p: u32) -> Vec<ProjLabel> {
        let mut out = Vec::new();
        for alpha in [Sign::Plus, Sign::Minus] {
            for s in 1..=p {
                for t in 1..=s {
                    out.push(ProjLabel { alpha, s, t });
                }
            }
        }
        out
    }

    /// The Casimir block containing the module: `s` for `α = +`, `p - s`
    /// for `α = -`.
    pub fn block(&self, p: u32) -> u32 {
        match self.alpha {
            Sign::Plus => self.s,
            Sign::Minus => p - self.s,
        }
    }
}

impl fmt::Display for ProjLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.s, self.t)
    }
}

fn sign_scalar(uq: &Uq, alpha: Sign) -> CycNum {
    uq.scalar(alpha.value())
}

/// `α[i][s-i]`.
fn chi(uq: &Uq, alpha: Sign, s: u32, i: u32) -> CycNum {
    &sign_scalar(uq, alpha) * &(&uq.qint(i as i64) * &uq.qint(s as i64 - i as i64))
}

fn product(uq: &Uq, factors: impl IntoIterator<Item = CycNum>) -> CycNum {
    factors.into_iter().fold(CycNum::one(uq.field()), |acc, x| &acc * &x)
}

fn check_range(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange(what()))
    }
}

/// `v^α(s, t) = Σ_{l=0}^{2p-1} (α q^{-(s-2t+1)})^l K^l`, an eigenvector of
/// left multiplication by `K` with eigenvalue `α q^{s-2t+1}`.
pub fn weight_projector(uq: &Uq, alpha: Sign, s: u32, t: u32) -> Result<AlgElem> {
    let p = uq.p();
    check_range(s >= 1 && s <= p && t >= 1 && t <= p, || format!("weight_projector({alpha}, {s}, {t}) for p = {p}"))?;
    let c = &sign_scalar(uq, alpha) * &uq.q(-(s as i64 - 2 * t as i64 + 1));
    let mut out = uq.zero();
    let mut pow = CycNum::one(uq.field());
    for l in 0..2 * p {
        out.add_term(crate::algebra::Mono::new(0, 0, l), &pow);
        pow = &pow * &c;
    }
    Ok(out)
}

/// `μ_1, …, μ_{p-s}` with `μ_n = ∏_{k=p-s-(n-1)}^{p-s-1} (-α[k][p-s-k])`.
pub fn mu_coeffs(uq: &Uq, alpha: Sign, s: u32) -> Result<Vec<CycNum>> {
    let p = uq.p();
    check_range(s >= 1 && s < p, || format!("mu_coeffs needs 1 <= s <= {}, got {s}", p - 1))?;
    let r = p - s;
    Ok((1..=r).map(|n| product(uq, (r + 1 - n..r).map(|k| -chi(uq, alpha, r, k)))).collect())
}

/// `λ_{0,n}, …, λ_{n,n}` from `λ_{0,0} = 1` and
/// `λ_{l,n} = λ_{l,n-1} + α[l][s+l-2n] λ_{l-1,n-1}` (terms out of range are 0).
pub fn lambda_coeffs(uq: &Uq, alpha: Sign, s: u32, n: u32) -> Result<Vec<CycNum>> {
    let p = uq.p();
    check_range(s >= 1 && s <= p && n < s, || format!("lambda_coeffs needs 0 <= n < s <= {p}, got s = {s}, n = {n}"))?;
    let zero = CycNum::zero(uq.field());
    let mut row = alloc::vec![CycNum::one(uq.field())];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for l in 0..=m {
            let keep = row.get(l as usize).cloned().unwrap_or_else(|| zero.clone());
            let shifted = if l == 0 {
                zero.clone()
            } else {
                let c = &sign_scalar(uq, alpha) * &(&uq.qint(l as i64) * &uq.qint(s as i64 + l as i64 - 2 * m as i64));
                &c * &row[l as usize - 1]
            };
            next.push(&keep + &shifted);
        }
        row = next;
    }
    Ok(row)
}

/// `γ^α(s) = 2p ∏_{m=1}^{p-s-1}(-α[m][p-s-m]) ∏_{i=1}^{s-1} α[i][s-i]`,
/// `1 <= s <= p`. At `s = p` this is the normalizer `2p ∏ α[i][p-i]`.
pub fn gamma(uq: &Uq, alpha: Sign, s: u32) -> Result<CycNum> {
    let p = uq.p();
    check_range(s >= 1 && s <= p, || format!("gamma needs 1 <= s <= {p}, got {s}"))?;
    let r = p - s;
    let minus = product(uq, (1..r).map(|m| -chi(uq, alpha, r, m)));
    let plus = product(uq, (1..s).map(|i| chi(uq, alpha, s, i)));
    Ok(&(&uq.scalar(2 * p as i64) * &minus) * &plus)
}

/// `δ^α(s)` for `1 <= s <= p - 1`: `γ^α(s)` with each product replaced by
/// the sum of its single-factor deletions, one product at a time.
pub fn delta(uq: &Uq, alpha: Sign, s: u32) -> Result<CycNum> {
    let p = uq.p();
    check_range(s >= 1 && s < p, || format!("delta needs 1 <= s <= {}, got {s}", p - 1))?;
    let r = p - s;
    let two_p = uq.scalar(2 * p as i64);
    let minus = product(uq, (1..r).map(|m| -chi(uq, alpha, r, m)));
    let plus = product(uq, (1..s).map(|i| chi(uq, alpha, s, i)));
    let plus_deleted =
        (1..s).fold(CycNum::zero(uq.field()), |acc, j| &acc + &product(uq, (1..s).filter(|k| *k != j).map(|k| chi(uq, alpha, s, k))));
    let minus_deleted =
        (1..r).fold(CycNum::zero(uq.field()), |acc, n| &acc + &product(uq, (1..r).filter(|k| *k != n).map(|k| -chi(uq, alpha, r, k))));
    Ok(&(&two_p * &(&minus * &plus_deleted)) + &(&two_p * &(&plus * &minus_deleted)))
}

/// All weight vectors of one label.
#[derive(Clone, Debug)]
pub struct ModuleVectors {
    pub label: ProjLabel,
    pub v: AlgElem,
    /// `a_0 … a_{s-1}`.
    pub a: Vec<AlgElem>,
    /// The sum `w` with `F w = a_0`; `None` when `s = p`.
    pub w: Option<AlgElem>,
    /// `x_0 … x_{p-s-1}`.
    pub x: Vec<AlgElem>,
    /// `b_0 … b_{s-1}`.
    pub b: Vec<AlgElem>,
    /// `y_0 … y_{p-s-1}`.
    pub y: Vec<AlgElem>,
}

impl ModuleVectors {
    pub fn new(uq: &Uq, label: ProjLabel) -> Result<Self> {
        let p = uq.p();
        let ProjLabel { alpha, s, t } = ProjLabel::new(p, label.alpha, label.s, label.t)?;
        let v = weight_projector(uq, alpha, s, t)?;
        let f = uq.gen_f();
        let iterate = |start: AlgElem, count: u32| {
            let mut out = Vec::with_capacity(count as usize);
            let mut cur = start;
            for i in 0..count {
                if i > 0 {
                    cur = &f * &cur;
                }
                out.push(cur.clone());
            }
            out
        };
        let a0 = &uq.monomial(p - 1, p - t, 0) * &v;
        let a = iterate(a0, s);
        if s == p {
            return Ok(ModuleVectors { label, v, a, w: None, x: Vec::new(), b: Vec::new(), y: Vec::new() });
        }
        let r = p - s;
        let mu = mu_coeffs(uq, alpha, s)?;
        let mut w = uq.zero();
        let mut b0 = uq.zero();
        for n in 1..=r {
            let c = &mu[n as usize - 1];
            w = &w + &(&uq.monomial(p - n, p - t - n, 0) * &v).scale(c);
            b0 = &b0 + &(&uq.monomial(p - n - 1, p - t - n, 0) * &v).scale(c);
        }
        let norm = product(uq, (1..r).map(|i| -chi(uq, alpha, r, i)));
        let x0 = (&uq.gen_e().pow(r - 1) * &w).scale(&norm.inv()?);
        let x = iterate(x0, r);
        let b = iterate(b0.clone(), s);
        let y = iterate(&f.pow(s) * &b0, r);
        Ok(ModuleVectors { label, v, a, w: Some(w), x, b, y })
    }

    /// The vectors spanning the module: `a`, then `x`, `b`, `y`.
    pub fn all(&self) -> impl Iterator<Item = &AlgElem> {
        self.a.iter().chain(&self.x).chain(&self.b).chain(&self.y)
    }
}

fn vector_at(uq: &Uq, label: ProjLabel, pick: impl Fn(&ModuleVectors) -> &Vec<AlgElem>, i: u32, what: &str) -> Result<AlgElem> {
    let mv = ModuleVectors::new(uq, label)?;
    pick(&mv)
        .get(i as usize)
        .cloned()
        .ok_or_else(|| Error::OutOfRange(format!("{what}_{i} does not exist for label {label} at p = {}", uq.p())))
}

pub fn vec_a(uq: &Uq, alpha: Sign, s: u32, t: u32, n: u32) -> Result<AlgElem> {
    vector_at(uq, ProjLabel::new(uq.p(), alpha, s, t)?, |m| &m.a, n, "a")
}

pub fn vec_x(uq: &Uq, alpha: Sign, s: u32, t: u32, k: u32) -> Result<AlgElem> {
    vector_at(uq, ProjLabel::new(uq.p(), alpha, s, t)?, |m| &m.x, k, "x")
}

pub fn vec_b(uq: &Uq, alpha: Sign, s: u32, t: u32, n: u32) -> Result<AlgElem> {
    vector_at(uq, ProjLabel::new(uq.p(), alpha, s, t)?, |m| &m.b, n, "b")
}

pub fn vec_y(uq: &Uq, alpha: Sign, s: u32, t: u32, k: u32) -> Result<AlgElem> {
    vector_at(uq, ProjLabel::new(uq.p(), alpha, s, t)?, |m| &m.y, k, "y")
}

/// Matrices of `E`, `F`, `K` on an irreducible module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrices {
    pub dim: usize,
    pub e: Matrix,
    pub f: Matrix,
    pub k: Matrix,
}

impl RepMatrices {
    /// First violated defining relation, if any.
    pub fn relation_failure(&self, uq: &Uq) -> Option<String> {
        let p = uq.p();
        let field = uq.field();
        let id = Matrix::identity(field, self.dim);
        let k_inv = self.k.pow(2 * p - 1);
        let q2 = uq.q(2);
        let ke = &self.k * &self.e;
        let ek = (&self.e * &self.k).scale(&q2);
        if ke != ek {
            return Some(format!("KE = {ke:?}; q²EK = {ek:?}"));
        }
        let kf = (&self.k * &self.f).scale(&q2);
        let fk = &self.f * &self.k;
        if kf != fk {
            return Some(format!("q²KF = {kf:?}; FK = {fk:?}"));
        }
        let comm = &(&self.e * &self.f) - &(&self.f * &self.e);
        let rhs = (&self.k - &k_inv).scale(&uq.q_minus_q_inv().inv().expect("nonzero"));
        if comm != rhs {
            return Some(format!("[E, F] = {comm:?}; (K - K⁻¹)/(q - q⁻¹) = {rhs:?}"));
        }
        if !self.e.pow(p).is_zero() || !self.f.pow(p).is_zero() {
            return Some("E^p or F^p is nonzero".into());
        }
        if self.k.pow(2 * p) != id {
            return Some("K^{2p} is not the identity".into());
        }
        None
    }

    pub fn casimir(&self, uq: &Uq) -> Matrix {
        let d2 = uq.q_minus_q_inv().pow(2).inv().expect("nonzero");
        let k_inv = self.k.pow(2 * uq.p() - 1);
        let kpart = &self.k.scale(&uq.q(-1)) + &k_inv.scale(&uq.q(1));
        &(&self.e * &self.f) + &kpart.scale(&d2)
    }
}

/// The irreducible module of dimension `s` and sign `α` in the basis
/// `a_0, …, a_{s-1}`: `K a_n = α q^{s-1-2n} a_n`, `E a_n = α[n][s-n] a_{n-1}`,
/// `F a_n = a_{n+1}`.
pub fn irreducible_rep(uq: &Uq, alpha: Sign, s: u32) -> Result<RepMatrices> {
    let p = uq.p();
    check_range(s >= 1 && s <= p, || format!("irreducible_rep needs 1 <= s <= {p}, got {s}"))?;
    let field = uq.field();
    let d = s as usize;
    let (mut e, mut f, mut k) = (Matrix::zero(field, d), Matrix::zero(field, d), Matrix::zero(field, d));
    for n in 0..d {
        k.set(n, n, &sign_scalar(uq, alpha) * &uq.q(s as i64 - 1 - 2 * n as i64));
        if n >= 1 {
            e.set(n - 1, n, chi(uq, alpha, s, n as u32));
        }
        if n + 1 < d {
            f.set(n + 1, n, CycNum::one(field));
        }
    }
    Ok(RepMatrices { dim: d, e, f, k })
}

fn idempotent_unchecked(uq: &Uq, mv: &ModuleVectors) -> Result<AlgElem> {
    let ProjLabel { alpha, s, t } = mv.label;
    let g_inv = gamma(uq, alpha, s)?.inv()?;
    let i = t as usize - 1;
    if s == uq.p() {
        return Ok(mv.a[i].scale(&g_inv));
    }
    let ratio = &delta(uq, alpha, s)? * &g_inv;
    Ok((&mv.b[i] - &mv.a[i].scale(&ratio)).scale(&g_inv))
}

/// `e^α(p, t) = a_{t-1} / γ^α(p)` and, for `s < p`,
/// `e^α(s, t) = (b_{t-1} - (δ^α(s)/γ^α(s)) a_{t-1}) / γ^α(s)`.
/// Fails if the result is not idempotent.
pub fn idempotent(uq: &Uq, label: ProjLabel) -> Result<AlgElem> {
    let mv = ModuleVectors::new(uq, label)?;
    let e = idempotent_unchecked(uq, &mv)?;
    if &e * &e != e {
        return Err(Error::Inconsistent(format!("e{label} is not idempotent")));
    }
    Ok(e)
}

/// Every primitive idempotent, in `ProjLabel::all` order.
pub fn all_idempotents(uq: &Uq) -> Result<Vec<(ProjLabel, AlgElem)>> {
    ProjLabel::all(uq.p())
        .into_iter()
        .map(|l| {
            let mv = ModuleVectors::new(uq, l)?;
            Ok((l, idempotent_unchecked(uq, &mv)?))
        })
        .collect()
}

/// Dimension of the left ideal `A·x`, by closing `{x}` under left
/// multiplication by `E`, `F`, `K`.
pub fn left_ideal_dimension(uq: &Uq, x: &AlgElem) -> usize {
    let gens = [uq.gen_e(), uq.gen_f(), uq.gen_k()];
    let mut ech = Echelon::new(uq.dim());
    let mut queue = VecDeque::new();
    if let Insert::Pivot(_) = ech.insert(x.to_sparse()) {
        queue.push_back(x.clone());
    }
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w = g * &v;
            if let Insert::Pivot(_) = ech.insert(w.to_sparse()) {
                queue.push_back(w);
            }
        }
    }
    ech.rank()
}

/// Rank of a family of elements.
pub fn span_rank<'a>(uq: &Uq, elems: impl IntoIterator<Item = &'a AlgElem>) -> usize {
    crate::linalg::rank(uq.dim(), elems.into_iter().map(AlgElem::to_sparse))
}

struct Relations<'a> {
    uq: &'a Uq,
    failure: Option<String>,
}

impl Relations<'_> {
    fn expect(&mut self, what: impl FnOnce() -> String, got: &AlgElem, want: &AlgElem) {
        if self.failure.is_none() && got != want {
            self.failure = Some(format!("{}: got {got}; expected {want}", what()));
        }
    }

    /// `K z = c z`.
    fn weight(&mut self, name: &str, i: usize, z: &AlgElem, c: &CycNum) {
        let got = &self.uq.gen_k() * z;
        self.expect(|| format!("K·{name}_{i}"), &got, &z.scale(c));
    }
}

/// Every action of `E`, `F`, `K` on the weight vectors of one label, the
/// agreement of independent constructions, and the module dimension.
pub fn check_module_actions(uq: &Uq, label: ProjLabel) -> Result<VerificationReport> {
    let p = uq.p();
    let mv = ModuleVectors::new(uq, label)?;
    let ProjLabel { alpha, s, t } = label;
    let (e, f) = (uq.gen_e(), uq.gen_f());
    let sa = sign_scalar(uq, alpha);
    let zero = uq.zero();
    let mut report = VerificationReport::new("idempotents", p);
    let tag = |what: &str| format!("{what} {label}");

    let nonzero = mv.all().all(|z| !z.is_zero());
    report.push(Check::expect(tag("weight vectors nonzero"), nonzero, format!("{} vectors", mv.all().count())));

    // the λ recursion reproduces the left-multiplication construction of a_n
    let mut fail = None;
    for n in 0..s {
        let coeffs = lambda_coeffs(uq, alpha, s, n)?;
        let mut sum = uq.zero();
        for (l, c) in coeffs.iter().enumerate() {
            let l = l as u32;
            let fexp = p - t + n - l;
            if fexp < p {
                sum = &sum + &(&uq.monomial(p - 1 - l, fexp, 0) * &mv.v).scale(c);
            }
        }
        if sum != mv.a[n as usize] && fail.is_none() {
            fail = Some(format!("n = {n}: expansion {sum}; F^n a_0 = {}", mv.a[n as usize]));
        }
    }
    report.push(Check::from_failure(tag("λ expansion of a_n"), fail));

    let mut rel = Relations { uq, failure: None };
    for (n, an) in mv.a.iter().enumerate() {
        rel.weight("a", n, an, &(&sa * &uq.q(s as i64 - 1 - 2 * n as i64)));
        let down = if n == 0 { zero.clone() } else { mv.a[n - 1].scale(&chi(uq, alpha, s, n as u32)) };
        rel.expect(|| format!("E·a_{n}"), &(&e * an), &down);
        let up = mv.a.get(n + 1).cloned().unwrap_or_else(|| zero.clone());
        rel.expect(|| format!("F·a_{n}"), &(&f * an), &up);
    }
    report.push(Check::from_failure(tag("actions on a"), rel.failure.take()));

    if s == p {
        let dim = span_rank(uq, mv.all());
        report.push(Check::expect(tag("irreducible module dimension"), dim == p as usize, format!("rank {dim}")));
        return Ok(report);
    }

    let r = p - s;
    let w = mv.w.as_ref().expect("projective case");
    rel.expect(|| "F·w = a_0".into(), &(&f * w), &mv.a[0]);
    for k in 0..r {
        let norm = product(uq, (k + 1..r).map(|i| -chi(uq, alpha, r, i)));
        let closed = (&e.pow(r - k - 1) * w).scale(&norm.inv()?);
        rel.expect(|| format!("closed form of x_{k}"), &closed, &mv.x[k as usize]);
    }
    let top = &uq.monomial(p - 1, s - t, 0) * &mv.v;
    rel.expect(|| "x_0 = E^{p-1}F^{s-t}v".into(), &mv.x[0], &top);
    report.push(Check::from_failure(tag("constructions of x agree"), rel.failure.take()));

    for (k, xk) in mv.x.iter().enumerate() {
        rel.weight("x", k, xk, &-&(&sa * &uq.q(r as i64 - 1 - 2 * k as i64)));
        let down = if k == 0 { zero.clone() } else { mv.x[k - 1].scale(&-chi(uq, alpha, r, k as u32)) };
        rel.expect(|| format!("E·x_{k}"), &(&e * xk), &down);
        let up = mv.x.get(k + 1).unwrap_or(&mv.a[0]);
        rel.expect(|| format!("F·x_{k}"), &(&f * xk), up);
    }
    report.push(Check::from_failure(tag("actions on x"), rel.failure.take()));

    for (n, bn) in mv.b.iter().enumerate() {
        rel.weight("b", n, bn, &(&sa * &uq.q(s as i64 - 1 - 2 * n as i64)));
        let down = if n == 0 { mv.x[r as usize - 1].clone() } else { &mv.b[n - 1].scale(&chi(uq, alpha, s, n as u32)) + &mv.a[n - 1] };
        rel.expect(|| format!("E·b_{n}"), &(&e * bn), &down);
        let up = mv.b.get(n + 1).unwrap_or(&mv.y[0]);
        rel.expect(|| format!("F·b_{n}"), &(&f * bn), up);
    }
    report.push(Check::from_failure(tag("actions on b"), rel.failure.take()));

    for (k, yk) in mv.y.iter().enumerate() {
        rel.weight("y", k, yk, &-&(&sa * &uq.q(r as i64 - 1 - 2 * k as i64)));
        let down = if k == 0 { mv.a[s as usize - 1].clone() } else { mv.y[k - 1].scale(&-chi(uq, alpha, r, k as u32)) };
        rel.expect(|| format!("E·y_{k}"), &(&e * yk), &down);
        let up = mv.y.get(k + 1).cloned().unwrap_or_else(|| zero.clone());
        rel.expect(|| format!("F·y_{k}"), &(&f * yk), &up);
    }
    report.push(Check::from_failure(tag("actions on y"), rel.failure.take()));

    let mut span: Vec<AlgElem> = mv.all().cloned().collect();
    let dim = span_rank(uq, &span);
    let gens = [uq.gen_e(), f.clone(), uq.gen_k()];
    span.extend(mv.all().flat_map(|z| gens.iter().map(move |g| g * z)));
    let closed = span_rank(uq, &span);
    report.push(Check::expect(
        tag("projective module dimension and closure"),
        dim == 2 * p as usize && closed == dim,
        format!("rank {dim}, rank after one step of E, F, K {closed}"),
    ));
    Ok(report)
}

/// Left multiplication by `v^+(s,t)` and `v^-(p-s,u)` projects the constructed
/// weight vectors of the block `s` onto a single weight.
pub fn check_weight_projection(uq: &Uq, s: u32) -> Result<Check> {
    let p = uq.p();
    check_range(s >= 1 && s < p, || format!("weight projection needs 1 <= s < {p}, got {s}"))?;
    let two_p = uq.scalar(2 * p as i64);
    // (element, sign of its weight, n or k with weight ±q^{…-1-2n})
    let mut weighted: Vec<(AlgElem, Sign, u32)> = Vec::new();
    for t in 1..=s {
        let mv = ModuleVectors::new(uq, ProjLabel::new(p, Sign::Plus, s, t)?)?;
        weighted.extend(mv.a.iter().chain(&mv.b).enumerate().map(|(i, z)| (z.clone(), Sign::Plus, i as u32 % s)));
        weighted.extend(mv.x.iter().chain(&mv.y).enumerate().map(|(i, z)| (z.clone(), Sign::Minus, i as u32 % (p - s))));
    }
    for u in 1..=p - s {
        let mv = ModuleVectors::new(uq, ProjLabel::new(p, Sign::Minus, p - s, u)?)?;
        weighted.extend(mv.a.iter().chain(&mv.b).enumerate().map(|(i, z)| (z.clone(), Sign::Minus, i as u32 % (p - s))));
        weighted.extend(mv.x.iter().chain(&mv.y).enumerate().map(|(i, z)| (z.clone(), Sign::Plus, i as u32 % s)));
    }
    let mut projectors = Vec::new();
    for t in 1..=s {
        projectors.push((weight_projector(uq, Sign::Plus, s, t)?, Sign::Plus, t));
    }
    for u in 1..=p - s {
        projectors.push((weight_projector(uq, Sign::Minus, p - s, u)?, Sign::Minus, u));
    }
    for (proj, psign, pt) in &projectors {
        for (z, zsign, idx) in &weighted {
            let got = proj * z;
            let hit = psign == zsign && *idx + 1 == *pt;
            let want = if hit { z.scale(&two_p) } else { uq.zero() };
            if got != want {
                return Ok(Check::fail(
                    format!("weight projection in block {s}"),
                    format!("v^{psign}(·, {pt}) · ({z}) = {got}; expected {want}"),
                ));
            }
        }
    }
    Ok(Check::pass_with(format!("weight projection in block {s}"), format!("{} vectors", weighted.len())))
}

/// `γ^+(s) = γ^-(p-s)` and `δ^+(s) = δ^-(p-s)`.
pub fn check_gamma_delta_mirror(uq: &Uq) -> Result<Check> {
    let p = uq.p();
    for s in 1..p {
        let (g1, g2) = (gamma(uq, Sign::Plus, s)?, gamma(uq, Sign::Minus, p - s)?);
        let (d1, d2) = (delta(uq, Sign::Plus, s)?, delta(uq, Sign::Minus, p - s)?);
        if g1 != g2 || d1 != d2 {
            return Ok(Check::fail("γ and δ mirror symmetry", format!("s = {s}: γ⁺ = {g1}, γ⁻ = {g2}, δ⁺ = {d1}, δ⁻ = {d2}")));
        }
    }
    Ok(Check::pass("γ and δ mirror symmetry"))
}

/// Idempotency, pairwise orthogonality, completeness and the dimensions of
/// the generated left ideals.
pub fn check_idempotent_system(uq: &Uq) -> Result<VerificationReport> {
    let p = uq.p();
    let ids = all_idempotents(uq)?;
    let mut report = VerificationReport::new("idempotents", p);
    let expected = (p * (p + 1)) as usize;
    report.push(Check::expect("idempotent count", ids.len() == expected, format!("{} of {expected}", ids.len())));
    report.extend(idempotency_and_orthogonality(uq, &ids));

    let total = ids.iter().fold(uq.zero(), |acc, (_, e)| &acc + e);
    report.push(Check::expect("idempotents sum to 1", total == uq.one(), format!("sum = {total}")));

    let mut dims = Vec::new();
    let mut fail = None;
    for (l, e) in &ids {
        let d = left_ideal_dimension(uq, e);
        let want = if l.s == p { p as usize } else { 2 * p as usize };
        if d != want && fail.is_none() {
            fail = Some(format!("A·e{l} has dimension {d}, expected {want}"));
        }
        dims.push(d);
    }
    report.push(Check::from_failure("left ideal dimensions", fail));
    let sum: usize = dims.iter().sum();
    report.push(Check::expect("left ideals fill the algebra", sum == uq.dim(), format!("Σ dim = {sum}, dim A = {}", uq.dim())));
    Ok(report)
}

/// `e² = e` for every idempotent and `e e' = 0` for every ordered pair of
/// distinct labels.
pub fn idempotency_and_orthogonality(uq: &Uq, ids: &[(ProjLabel, AlgElem)]) -> [Check; 2] {
    let mut idem = None;
    let mut orth = None;
    for (l1, e1) in ids {
        for (l2, e2) in ids {
            let prod = e1 * e2;
            if l1 == l2 {
                if prod != *e1 && idem.is_none() {
                    idem = Some(format!("e{l1}² - e{l1} = {}", &prod - e1));
                }
            } else if !prod.is_zero() && orth.is_none() {
                orth = Some(format!("e{l1}·e{l2} = {prod}"));
            }
        }
    }
    let _ = uq;
    [Check::from_failure("idempotency", idem), Check::from_failure("pairwise orthogonality", orth)]
}

/// `(C - β_s)² e = 0` on the projective blocks, `(C - β_p) e^+(p,t) = 0`,
/// `(C - β_0) e^-(p,t) = 0`, and `(C - β_s) e^+(s,t) != 0` for `s < p`.
pub fn check_casimir_blocks(uq: &Uq) -> Result<VerificationReport> {
    let p = uq.p();
    let c = uq.casimir();
    let mut report = VerificationReport::new("casimir", p);
    let mut sq_fail = None;
    let mut simple_fail = None;
    let mut jordan_fail = None;
    for (l, e) in all_idempotents(uq)? {
        let block = l.block(p);
        let shifted = &c - &uq.scalar_elem(uq.beta(block as i64)?);
        let once = &shifted * &e;
        if l.s == p {
            if !once.is_zero() && simple_fail.is_none() {
                simple_fail = Some(format!("(C - β_{block})·e{l} = {once}"));
            }
        } else {
            let twice = &shifted * &once;
            if !twice.is_zero() && sq_fail.is_none() {
                sq_fail = Some(format!("(C - β_{block})²·e{l} = {twice}"));
            }
            if l.alpha == Sign::Plus && once.is_zero() && jordan_fail.is_none() {
                jordan_fail = Some(format!("(C - β_{block})·e{l} = 0"));
            }
        }
    }
    report.push(Check::from_failure("C - β vanishes on the simple blocks", simple_fail));
    report.push(Check::from_failure("(C - β)² vanishes on the projective blocks", sq_fail));
    report.push(Check::from_failure("C - β alone does not vanish on e+(s,t)", jordan_fail));
    Ok(report)
}

/// Defining relations and scalar Casimir on every irreducible module.
pub fn check_irreducible_reps(uq: &Uq) -> Result<VerificationReport> {
    let p = uq.p();
    let mut report = VerificationReport::new("casimir", p);
    let mut rel_fail = None;
    let mut cas_fail = None;
    for alpha in [Sign::Plus, Sign::Minus] {
        for s in 1..=p {
            let rep = irreducible_rep(uq, alpha, s)?;
            if let Some(f) = rep.relation_failure(uq) {
                rel_fail.get_or_insert(format!("X({alpha}, {s}): {f}"));
            }
            let block = if alpha == Sign::Plus { s } else { p - s };
            let want = uq.beta(block as i64)?;
            let cas = rep.casimir(uq);
            if cas.as_scalar().as_ref() != Some(&want) {
                cas_fail.get_or_insert(format!("X({alpha}, {s}): C = {cas:?}; expected β_{block} = {want}"));
            }
        }
    }
    report.push(Check::from_failure("irreducible modules satisfy the relations", rel_fail));
    report.push(Check::from_failure("Casimir acts by β on irreducible modules", cas_fail));
    Ok(report)
}

/// Every module-level check for one `p`: actions for all labels, weight
/// projections, `γ`/`δ` symmetry and the idempotent system.
pub fn check_projectives(uq: &Uq) -> Result<VerificationReport> {
    let p = uq.p();
    let mut report = VerificationReport::new("idempotents", p);
    let mut failures = Vec::new();
    let mut count = 0;
    for l in ProjLabel::all(p) {
        let r = check_module_actions(uq, l)?;
        count += r.total();
        failures.extend(r.failures().cloned());
    }
    report.push(match failures.first() {
        None => Check::pass_with("module actions for every label", format!("{count} relations checked")),
        Some(c) => Check::fail("module actions for every label", format!("{}: {}", c.name, c.detail.clone().unwrap_or_default())),
    });
    for s in 1..p {
        report.push(check_weight_projection(uq, s)?);
    }
    report.push(check_gamma_delta_mirror(uq)?);
    report.extend(check_idempotent_system(uq)?.checks);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn label_counts() {
        assert_eq!(ProjLabel::all(2).len(), 6);
        assert_eq!(ProjLabel::all(3).len(), 12);
        assert!(ProjLabel::new(3, Sign::Plus, 2, 3).is_err());
        assert!(ProjLabel::new(3, Sign::Plus, 4, 1).is_err());
    }

    #[test]
    fn projector_weight_and_square() {
        let uq = Uq::new(3).unwrap();
        for (alpha, s, t) in [(Sign::Plus, 2, 1), (Sign::Minus, 3, 2)] {
            let v = weight_projector(&uq, alpha, s, t).unwrap();
            let w = &sign_scalar(&uq, alpha) * &uq.q(s as i64 - 2 * t as i64 + 1);
            assert_eq!(&uq.gen_k() * &v, v.scale(&w));
            assert_eq!(&v * &v, v.scale_int(6));
        }
    }

    #[test]
    fn gamma_delta_small_values() {
        let uq = Uq::new(3).unwrap();
        assert_eq!(gamma(&uq, Sign::Plus, 1).unwrap(), uq.scalar(-6));
        assert_eq!(gamma(&uq, Sign::Minus, 2).unwrap(), uq.scalar(-6));
        assert_eq!(delta(&uq, Sign::Plus, 1).unwrap(), uq.scalar(6));
        let uq2 = Uq::new(2).unwrap();
        assert!(delta(&uq2, Sign::Plus, 1).unwrap().is_zero());
        assert!(delta(&uq2, Sign::Minus, 1).unwrap().is_zero());
    }

    #[test]
    fn mu_and_lambda_edges() {
        let uq = Uq::new(4).unwrap();
        let mu = mu_coeffs(&uq, Sign::Plus, 1).unwrap();
        assert_eq!(mu.len(), 3);
        assert!(mu[0].is_one());
        // μ_2 = -[p-s-1][1]
        assert_eq!(mu[1], -&uq.qint(2));
        let lam = lambda_coeffs(&uq, Sign::Minus, 4, 3).unwrap();
        assert!(lam[0].is_one());
        let top = (1..=3).fold(CycNum::one(uq.field()), |acc, i| &acc * &chi(&uq, Sign::Minus, 4, i));
        assert_eq!(lam[3], top);
    }

    #[test]
    fn one_dimensional_rep() {
        let uq = Uq::new(3).unwrap();
        let rep = irreducible_rep(&uq, Sign::Minus, 1).unwrap();
        assert!(rep.e.is_zero() && rep.f.is_zero());
        assert_eq!(rep.k.as_scalar(), Some(uq.scalar(-1)));
    }

    #[test]
    fn idempotent_at_p2() {
        let uq = Uq::new(2).unwrap();
        let e = idempotent(&uq, ProjLabel::new(2, Sign::Plus, 2, 1).unwrap()).unwrap();
        // normalizer 2p[1][1] = 4
        let a0 = vec_a(&uq, Sign::Plus, 2, 1, 0).unwrap();
        assert_eq!(e, a0.scale(&CycNum::from_rational(uq.field(), Rational::new(1, 4))));
        assert!(vec_x(&uq, Sign::Plus, 2, 1, 0).is_err());
    }

    #[test]
    fn module_checks_small_p() {
        for p in 2..=3 {
            let uq = Uq::new(p).unwrap();
            let r = check_projectives(&uq).unwrap();
            assert!(r.passed(), "{r}");
            let r = check_casimir_blocks(&uq).unwrap();
            assert!(r.passed(), "{r}");
            let r = check_irreducible_reps(&uq).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
