//! Bases of the Casimir blocks `Q_s`, their multiplication tables, the
//! symmetric linear functions, the center, and the decomposition of the
//! twisted integral.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::algebra::{AlgElem, Mono, Uq};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::integrals::{twisted_lambda, ProductTable};
use crate::linalg::{Echelon, Insert, SparseVec};
use crate::projective::{delta, gamma, ModuleVectors, ProjLabel, Sign};
use crate::qnum::q_factorial;
use crate::report::{Check, VerificationReport};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    B,
    X,
    Y,
    A,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::B => "B",
            Kind::X => "X",
            Kind::Y => "Y",
            Kind::A => "A",
        })
    }
}

/// Position of a block basis element: `Z^sign_index(s, label)`, where `s` is
/// the module parameter (`p - block` for the `-` side of a projective
/// block) and `label` is `t` or `u`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QKey {
    pub kind: Kind,
    pub sign: Sign,
    pub s: u32,
    pub label: u32,
    pub index: u32,
}

impl fmt::Display for QKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}_{}({},{})", self.kind, self.sign, self.index, self.s, self.label)
    }
}

#[derive(Clone, Debug)]
pub struct QBasisElem {
    pub key: QKey,
    pub element: AlgElem,
}

fn check_block(p: u32, s: u32) -> Result<()> {
    if s > p {
        return Err(Error::OutOfRange(format!("block {s} needs 0 <= s <= {p}")));
    }
    Ok(())
}

/// Basis of `Q_s`: `p^2` matrix units `A^∓_n(p,t)` for `s ∈ {0, p}`, and
/// for `1 <= s <= p-1` the `2p^2` elements
/// `B^+_n, X^+_k, Y^+_k, A^+_n (s,t)` and `B^-_k, X^-_n, Y^-_n, A^-_k (p-s,u)`,
/// all normalized by `γ_s = γ^+(s)`.
pub fn q_basis(uq: &Uq, s: u32) -> Result<Vec<QBasisElem>> {
    let p = uq.p();
    check_block(p, s)?;
    let mut out = Vec::new();
    if s == 0 || s == p {
        let sign = if s == p { Sign::Plus } else { Sign::Minus };
        let norm = gamma(uq, sign, p)?.inv()?;
        for t in 1..=p {
            let mv = ModuleVectors::new(uq, ProjLabel::new(p, sign, p, t)?)?;
            for (n, a) in mv.a.iter().enumerate() {
                let key = QKey { kind: Kind::A, sign, s: p, label: t, index: n as u32 };
                out.push(QBasisElem { key, element: a.scale(&norm) });
            }
        }
        return Ok(out);
    }
    let g_inv = gamma(uq, Sign::Plus, s)?.inv()?;
    let ratio = &delta(uq, Sign::Plus, s)? * &g_inv;
    for (sign, ms) in [(Sign::Plus, s), (Sign::Minus, p - s)] {
        for label in 1..=ms {
            let mv = ModuleVectors::new(uq, ProjLabel::new(p, sign, ms, label)?)?;
            let key = |kind, index: usize| QKey { kind, sign, s: ms, label, index: index as u32 };
            for (i, (b, a)) in mv.b.iter().zip(&mv.a).enumerate() {
                out.push(QBasisElem { key: key(Kind::B, i), element: (b - &a.scale(&ratio)).scale(&g_inv) });
            }
            for (i, x) in mv.x.iter().enumerate() {
                out.push(QBasisElem { key: key(Kind::X, i), element: x.scale(&g_inv) });
            }
            for (i, y) in mv.y.iter().enumerate() {
                out.push(QBasisElem { key: key(Kind::Y, i), element: y.scale(&g_inv) });
            }
            for (i, a) in mv.a.iter().enumerate() {
                out.push(QBasisElem { key: key(Kind::A, i), element: a.scale(&g_inv) });
            }
        }
    }
    Ok(out)
}

/// The Casimir block a basis key belongs to.
pub fn block_of(p: u32, key: &QKey) -> u32 {
    match key.sign {
        Sign::Plus => key.s,
        Sign::Minus => p - key.s,
    }
}

/// `B` is a unit, `X Y = Y X = A`, everything else involving `X`, `Y`, `A`
/// on the left vanishes.
fn compose(x: Kind, y: Kind) -> Option<Kind> {
    use Kind::*;
    match (x, y) {
        (B, k) => Some(k),
        (k, B) => Some(k),
        (X, Y) | (Y, X) => Some(A),
        _ => None,
    }
}

/// The side (`+` for weights `q^{s-1-2n}`) on which a key's index lives.
fn row_side(key: &QKey) -> Sign {
    match key.kind {
        Kind::B | Kind::A => key.sign,
        Kind::X | Kind::Y => key.sign.flip(),
    }
}

/// The product of two block basis elements predicted by the multiplication
/// tables, `None` meaning zero.
pub fn expected_product(p: u32, x: &QKey, y: &QKey) -> Option<QKey> {
    let (bx, by) = (block_of(p, x), block_of(p, y));
    if bx != by {
        return None;
    }
    if bx == 0 || bx == p {
        // matrix units: A_m(t1) A_n(t2) = A_m(t2) iff n = t1 - 1
        return (x.label == y.index + 1).then_some(QKey { label: y.label, ..*x });
    }
    if x.sign != row_side(y) || x.label != y.index + 1 {
        return None;
    }
    let kind = compose(x.kind, y.kind)?;
    Some(QKey { kind, sign: y.sign, s: y.s, label: y.label, index: x.index })
}

fn index_basis(basis: &[QBasisElem]) -> BTreeMap<QKey, &AlgElem> {
    basis.iter().map(|b| (b.key, &b.element)).collect()
}

/// One cell of a multiplication table, with the product identified as a
/// basis element, `"0"`, or `"?"` when it is neither.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub row: QKey,
    pub col: QKey,
    pub result: String,
}

/// The multiplication table of `Q_s` computed from actual products.
pub fn block_table(uq: &Uq, s: u32) -> Result<Vec<TableCell>> {
    let basis = q_basis(uq, s)?;
    let index = index_basis(&basis);
    let mut cells = Vec::with_capacity(basis.len() * basis.len());
    for x in &basis {
        for y in &basis {
            let prod = &x.element * &y.element;
            let result = if prod.is_zero() {
                String::from("0")
            } else if let Some(k) = expected_product(uq.p(), &x.key, &y.key).filter(|k| *index[k] == prod) {
                format!("{k}")
            } else {
                basis.iter().find(|b| b.element == prod).map(|b| format!("{}", b.key)).unwrap_or_else(|| String::from("?"))
            };
            cells.push(TableCell { row: x.key, col: y.key, result });
        }
    }
    Ok(cells)
}

fn table_failure(uq: &Uq, basis: &[QBasisElem], index: &BTreeMap<QKey, &AlgElem>) -> Option<String> {
    let zero = uq.zero();
    for x in basis {
        for y in basis {
            let prod = &x.element * &y.element;
            let want = expected_product(uq.p(), &x.key, &y.key);
            let want_elem = want.map(|k| index[&k]).unwrap_or(&zero);
            if prod != *want_elem {
                let label = want.map(|k| format!("{k}")).unwrap_or_else(|| String::from("0"));
                return Some(format!("{} · {}: expected {label} = {want_elem}; got {prod}", x.key, y.key));
            }
        }
    }
    None
}

fn cross_block_failure(uq: &Uq, s: u32, basis: &[QBasisElem]) -> Result<Option<String>> {
    for other in 0..=uq.p() {
        if other == s {
            continue;
        }
        for y in q_basis(uq, other)? {
            for x in basis {
                let xy = &x.element * &y.element;
                if !xy.is_zero() {
                    return Ok(Some(format!("{} · {} = {xy}", x.key, y.key)));
                }
                let yx = &y.element * &x.element;
                if !yx.is_zero() {
                    return Ok(Some(format!("{} · {} = {yx}", y.key, x.key)));
                }
            }
        }
    }
    Ok(None)
}

/// `Q_0` and `Q_p` are `p×p` matrix algebras in the basis `A_n(p,t)`, with
/// unit `Σ_t A_{t-1}(p,t)`, and they annihilate every other block.
pub fn verify_matrix_units(uq: &Uq, s: u32) -> Result<VerificationReport> {
    let p = uq.p();
    if s != 0 && s != p {
        return Err(Error::OutOfRange(format!("matrix units live in blocks 0 and {p}, not {s}")));
    }
    let mut report = VerificationReport::new("tables", p);
    let basis = q_basis(uq, s)?;
    let index = index_basis(&basis);
    let count = basis.len();
    report.push(Check::expect(format!("Q_{s} basis size"), count == (p * p) as usize, format!("{count} elements")));
    report.push(Check::from_failure(format!("Q_{s} matrix-unit products"), table_failure(uq, &basis, &index)));
    let unit = basis.iter().filter(|b| b.key.index + 1 == b.key.label).fold(uq.zero(), |acc, b| &acc + &b.element);
    let fail = basis.iter().find_map(|b| {
        let (l, r) = (&unit * &b.element, &b.element * &unit);
        (l != b.element || r != b.element).then(|| format!("unit·{0} = {l}; {0}·unit = {r}", b.key))
    });
    report.push(Check::from_failure(format!("Q_{s} unit"), fail));
    report.push(Check::from_failure(format!("Q_{s} annihilates other blocks"), cross_block_failure(uq, s, &basis)?));
    Ok(report)
}

/// The displayed alternative forms of the projective block basis:
/// `X^+_k = E^{p-s-k} B^+_0 / ∏_{i=k+1}^{p-s-1}(-[i][p-s-i])`,
/// `Y^+_k = F^{s+k} B^+_0`, `A^+_n = F^{n+1} E B^+_0`, and their mirrors.
pub fn displayed_forms_failure(uq: &Uq, s: u32) -> Result<Option<String>> {
    let p = uq.p();
    let basis = q_basis(uq, s)?;
    let index = index_basis(&basis);
    let (e, f) = (uq.gen_e(), uq.gen_f());
    for b in basis.iter().filter(|b| b.key.kind != Kind::B) {
        let k = b.key;
        let b0 = index[&QKey { kind: Kind::B, index: 0, ..k }];
        let r = p - k.s;
        let alpha = uq.scalar(k.sign.value());
        let alt = match k.kind {
            Kind::X => {
                let norm = (k.index + 1..r)
                    .fold(CycNum::one(uq.field()), |acc, i| &acc * &-&(&alpha * &(&uq.qint(i as i64) * &uq.qint((r - i) as i64))));
                (&e.pow(r - k.index) * b0).scale(&norm.inv()?)
            }
            Kind::Y => &f.pow(k.s + k.index) * b0,
            Kind::A => &f.pow(k.index + 1) * &(&e * b0),
            Kind::B => unreachable!(),
        };
        if alt != b.element {
            return Ok(Some(format!("{k}: displayed form {alt}; constructed {}", b.element)));
        }
    }
    Ok(None)
}

/// Every product inside the projective block `Q_s` agrees with the
/// multiplication tables, and `Q_s` annihilates the other blocks.
pub fn verify_block_tables(uq: &Uq, s: u32) -> Result<VerificationReport> {
    let p = uq.p();
    if s == 0 || s >= p {
        return Err(Error::OutOfRange(format!("projective blocks are 1..={}, not {s}", p - 1)));
    }
    let mut report = VerificationReport::new("tables", p);
    let basis = q_basis(uq, s)?;
    let index = index_basis(&basis);
    let count = basis.len();
    report.push(Check::expect(format!("Q_{s} basis size"), count == (2 * p * p) as usize, format!("{count} elements")));
    report.push(Check::from_failure(format!("Q_{s} displayed basis forms"), displayed_forms_failure(uq, s)?));
    report.push(Check::from_failure(format!("Q_{s} multiplication table"), table_failure(uq, &basis, &index)));
    report.push(Check::from_failure(format!("Q_{s} annihilates other blocks"), cross_block_failure(uq, s, &basis)?));
    Ok(report)
}

/// The block bases together span the algebra.
pub fn check_blocks_span(uq: &Uq) -> Result<Check> {
    let mut ech = Echelon::new(uq.dim());
    let mut total = 0;
    for s in 0..=uq.p() {
        for b in q_basis(uq, s)? {
            total += 1;
            ech.insert(b.element.to_sparse());
        }
    }
    let rank = ech.rank();
    Ok(Check::expect(
        "block bases form a basis of the algebra",
        rank == uq.dim() && total == uq.dim(),
        format!("{total} elements, rank {rank}"),
    ))
}

/// `T_0`, `T_p`, and `T^+_s`, `T^-_s`, `G_s` for `1 <= s <= p-1`.
#[derive(Clone, Debug)]
pub struct SlfBasis {
    pub t0: Functional,
    pub tp: Functional,
    pub t_plus: Vec<Functional>,
    pub t_minus: Vec<Functional>,
    pub g: Vec<Functional>,
}

impl SlfBasis {
    /// `T_0, T_p, T^+_1, T^-_1, G_1, T^+_2, …` with their names.
    pub fn named(&self) -> Vec<(String, &Functional)> {
        let mut out = alloc::vec![(String::from("T_0"), &self.t0), (String::from("T_p"), &self.tp)];
        for (i, ((tp, tm), g)) in self.t_plus.iter().zip(&self.t_minus).zip(&self.g).enumerate() {
            let s = i + 1;
            out.push((format!("T+_{s}"), tp));
            out.push((format!("T-_{s}"), tm));
            out.push((format!("G_{s}"), g));
        }
        out
    }

    pub fn len(&self) -> usize {
        2 + 3 * self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Which basis functional (in `SlfBasis::named` order) reads the coordinate
/// of a block basis element, if any.
fn slf_slot(p: u32, key: &QKey) -> Option<usize> {
    let block = block_of(p, key);
    if key.index + 1 != key.label {
        return None;
    }
    if block == 0 {
        return Some(0);
    }
    if block == p {
        return Some(1);
    }
    let base = 2 + 3 * (block as usize - 1);
    match (key.kind, key.sign) {
        (Kind::B, Sign::Plus) => Some(base),
        (Kind::B, Sign::Minus) => Some(base + 1),
        (Kind::A, _) => Some(base + 2),
        _ => None,
    }
}

/// The symmetric linear functions, each a sum of coordinate functionals of
/// the block bases, realized on PBW monomials by solving for the functional
/// with prescribed values on the block basis.
pub fn slf_functionals(uq: &Uq) -> Result<SlfBasis> {
    let p = uq.p();
    let dim = uq.dim();
    let nfun = 3 * p as usize - 1;
    let one = CycNum::one(uq.field());
    let mut ech = Echelon::new(dim);
    for s in 0..=p {
        for b in q_basis(uq, s)? {
            let mut row: SparseVec = b.element.to_sparse();
            if let Some(slot) = slf_slot(p, &b.key) {
                row.insert(dim + slot, one.clone());
            }
            match ech.insert(row) {
                Insert::Pivot(_) => {}
                _ => return Err(Error::Singular(format!("block basis is dependent at {}", b.key))),
            }
        }
    }
    if ech.rank() != dim {
        return Err(Error::Singular(format!("block bases have rank {} < {dim}", ech.rank())));
    }
    ech.back_substitute();
    let mut values = alloc::vec![alloc::vec![CycNum::zero(uq.field()); dim]; nfun];
    for j in 0..dim {
        for (slot, v) in ech.solution_row(j).expect("full rank") {
            values[slot][j] = v;
        }
    }
    let mut fs = values.into_iter().map(|v| Functional::new(uq, v)).collect::<Result<Vec<_>>>()?.into_iter();
    let t0 = fs.next().expect("T_0");
    let tp = fs.next().expect("T_p");
    let (mut t_plus, mut t_minus, mut g) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 1..p {
        t_plus.push(fs.next().expect("T+"));
        t_minus.push(fs.next().expect("T-"));
        g.push(fs.next().expect("G"));
    }
    Ok(SlfBasis { t0, tp, t_plus, t_minus, g })
}

/// Nonzero commutators `ab - ba` of all pairs of basis monomials `a < b`.
pub struct Commutators {
    list: Vec<(Mono, Mono, Vec<(Mono, CycNum)>)>,
}

impl Commutators {
    pub fn new(uq: &Uq, table: &ProductTable) -> Self {
        let dim = uq.dim();
        let mut list = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let mut acc: BTreeMap<Mono, CycNum> = BTreeMap::new();
                for (m, c) in table.get(i, j) {
                    let v = acc.entry(*m).or_insert_with(|| CycNum::zero(uq.field()));
                    *v += c;
                }
                for (m, c) in table.get(j, i) {
                    let v = acc.entry(*m).or_insert_with(|| CycNum::zero(uq.field()));
                    *v -= c;
                }
                let terms: Vec<(Mono, CycNum)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if !terms.is_empty() {
                    list.push((uq.mono_at(i), uq.mono_at(j), terms));
                }
            }
        }
        Commutators { list }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    /// A pair `(a, b)` with `φ(ab) != φ(ba)`, if any.
    pub fn violation(&self, phi: &Functional) -> Option<(Mono, Mono, CycNum)> {
        self.list.iter().find_map(|(a, b, c)| {
            let v = phi.eval_terms(c);
            (!v.is_zero()).then_some((*a, *b, v))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &[(Mono, CycNum)]> {
        self.list.iter().map(|(_, _, c)| c.as_slice())
    }
}

/// `φ(ab) = φ(ba)` for every pair of basis monomials.
pub fn check_symmetry(commutators: &Commutators, phi: &Functional) -> bool {
    commutators.violation(phi).is_none()
}

fn nullity_of(uq: &Uq, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new(uq.dim());
    for r in rows {
        if !r.is_empty() {
            ech.insert(r);
        }
    }
    ech.nullity()
}

fn generator_commutators(uq: &Uq) -> Vec<(usize, AlgElem)> {
    let gens = [uq.gen_e(), uq.gen_f(), uq.gen_k()];
    let mut out = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        for m in uq.basis() {
            let x = uq.mono(m);
            out.push((gi, &(g * &x) - &(&x * g)));
        }
    }
    out
}

/// Dimension of the space of symmetric linear functions: the nullity of
/// `{φ([g, m]) = 0}` over generators `g ∈ {E, F, K}` and basis monomials `m`.
/// Because `[ab, c] = [a, bc] + [b, ca]`, these commutators span `[A, A]`.
pub fn slf_space_dimension(uq: &Uq) -> usize {
    nullity_of(uq, generator_commutators(uq).into_iter().map(|(_, c)| c.to_sparse()))
}

/// The same dimension from the commutators of all pairs of basis monomials.
pub fn slf_space_dimension_all_pairs(uq: &Uq, commutators: &Commutators) -> usize {
    nullity_of(uq, commutators.iter().map(|c| c.iter().map(|(m, v)| (uq.mono_index(*m), v.clone())).collect()))
}

/// Dimension of the center: the nullity of `x ↦ ([E,x], [F,x], [K,x])`.
pub fn center_dimension(uq: &Uq) -> usize {
    let dim = uq.dim();
    let mut rows: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (i, (gi, c)) in generator_commutators(uq).into_iter().enumerate() {
        let col = i % dim;
        for (m, v) in c.terms() {
            rows.entry((gi, uq.mono_index(*m))).or_default().insert(col, v.clone());
        }
    }
    nullity_of(uq, rows.into_values())
}

/// The symmetric functions are symmetric, independent, span the space of
/// symmetric functions, and that space has the dimension of the center.
pub fn check_slf(uq: &Uq, basis: &SlfBasis, commutators: &Commutators) -> Result<VerificationReport> {
    let p = uq.p();
    let mut report = VerificationReport::new("slf", p);
    let named = basis.named();
    let fail = named
        .iter()
        .find_map(|(name, phi)| commutators.violation(phi).map(|(a, b, v)| format!("{name}: φ(ab) - φ(ba) = {v} at a = {a}, b = {b}")));
    report.push(Check::from_failure("constructed functionals are symmetric", fail));

    let mut block_fail = None;
    for s in 0..=p {
        let bb = q_basis(uq, s)?;
        for (i, x) in bb.iter().enumerate() {
            for y in &bb[i + 1..] {
                let comm = &(&x.element * &y.element) - &(&y.element * &x.element);
                for (name, phi) in &named {
                    let v = phi.eval(&comm);
                    if !v.is_zero() && block_fail.is_none() {
                        block_fail = Some(format!("{name}({0}·{1}) - {name}({1}·{0}) = {v}", x.key, y.key));
                    }
                }
            }
        }
    }
    report.push(Check::from_failure("symmetry on block basis pairs", block_fail));

    let expected = 3 * p as usize - 1;
    let slf_dim = slf_space_dimension(uq);
    report.push(Check::expect("slf_space_dimension", slf_dim == expected, format!("{slf_dim} (3p-1 = {expected})")));
    let center = center_dimension(uq);
    report.push(Check::expect("center_dimension", center == expected, format!("{center} (3p-1 = {expected})")));
    let rank = crate::linalg::rank(
        uq.dim(),
        named.iter().map(|(_, f)| f.values().iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()),
    );
    report.push(Check::expect(
        "constructed functionals are independent and span",
        rank == named.len() && rank == slf_dim,
        format!("{} functionals of rank {rank}, space dimension {slf_dim}", named.len()),
    ));
    Ok(report)
}

/// Coefficients of the twisted integral in the symmetric-function basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompCoeffs {
    pub alpha0: CycNum,
    pub alphap: CycNum,
    /// `α^+_s`, `s = 1..p-1`.
    pub alpha_plus: Vec<CycNum>,
    /// `α^-_s`, `s = 1..p-1`.
    pub alpha_minus: Vec<CycNum>,
    /// `β_s`, `s = 1..p-1`.
    pub beta: Vec<CycNum>,
}

impl DecompCoeffs {
    fn from_slots(mut c: Vec<CycNum>) -> Self {
        let rest = c.split_off(2);
        let (mut ap, mut am, mut b) = (Vec::new(), Vec::new(), Vec::new());
        for chunk in rest.chunks(3) {
            ap.push(chunk[0].clone());
            am.push(chunk[1].clone());
            b.push(chunk[2].clone());
        }
        let alphap = c.pop().expect("two leading slots");
        let alpha0 = c.pop().expect("two leading slots");
        DecompCoeffs { alpha0, alphap, alpha_plus: ap, alpha_minus: am, beta: b }
    }

    /// In `SlfBasis::named` order.
    pub fn slots(&self) -> Vec<&CycNum> {
        let mut out = alloc::vec![&self.alpha0, &self.alphap];
        for i in 0..self.beta.len() {
            out.push(&self.alpha_plus[i]);
            out.push(&self.alpha_minus[i]);
            out.push(&self.beta[i]);
        }
        out
    }
}

/// Solves `g⁻¹⇀λ = α_0 T_0 + α_p T_p + Σ (α^+_s T^+_s + α^-_s T^-_s + β_s G_s)`
/// from the values on all PBW monomials, then re-checks the identity.
pub fn decompose_twisted_integral(uq: &Uq, basis: &SlfBasis) -> Result<DecompCoeffs> {
    let named = basis.named();
    let n = named.len();
    let tw = twisted_lambda(uq);
    let mut ech = Echelon::new(n);
    for (j, target) in tw.values().iter().enumerate() {
        let mut row = SparseVec::new();
        for (i, (_, f)) in named.iter().enumerate() {
            let v = &f.values()[j];
            if !v.is_zero() {
                row.insert(i, v.clone());
            }
        }
        if !target.is_zero() {
            row.insert(n, target.clone());
        }
        if let Insert::Residual(r) = ech.insert(row) {
            return Err(Error::Inconsistent(format!("no decomposition: residual {r:?} at {}", uq.mono_at(j))));
        }
    }
    if ech.rank() != n {
        return Err(Error::Singular(format!("functionals have rank {} < {n}", ech.rank())));
    }
    ech.back_substitute();
    let coeffs: Vec<CycNum> =
        (0..n).map(|i| ech.solution_row(i).and_then(|r| r.get(&0).cloned()).unwrap_or_else(|| CycNum::zero(uq.field()))).collect();
    let sum = named.iter().zip(&coeffs).fold(Functional::zero(uq), |acc, ((_, f), c)| acc.add(&f.scale(c)));
    if sum != tw {
        return Err(Error::Inconsistent("substituted decomposition differs from the twisted integral".into()));
    }
    Ok(DecompCoeffs::from_slots(coeffs))
}

/// `α_0 = 1/(2p∏(-[i][p-i]))`, `α_p = 1/(2p∏[i][p-i])`, `α^±_s = -δ_s/γ_s²`,
/// `β_s = 1/γ_s`.
pub fn closed_form_coeffs(uq: &Uq) -> Result<DecompCoeffs> {
    let p = uq.p();
    let two_p = uq.scalar(2 * p as i64);
    let prod = (1..p).fold(CycNum::one(uq.field()), |acc, i| &acc * &(&uq.qint(i as i64) * &uq.qint((p - i) as i64)));
    let sign = uq.scalar(if (p - 1) % 2 == 0 { 1 } else { -1 });
    let alphap = (&two_p * &prod).inv()?;
    let alpha0 = (&(&two_p * &prod) * &sign).inv()?;
    let (mut ap, mut b) = (Vec::new(), Vec::new());
    for s in 1..p {
        let g = gamma(uq, Sign::Plus, s)?;
        let d = delta(uq, Sign::Plus, s)?;
        ap.push(-&(&d * &g.pow(2).inv()?));
        b.push(g.inv()?);
    }
    Ok(DecompCoeffs { alpha0, alphap, alpha_minus: ap.clone(), alpha_plus: ap, beta: b })
}

/// Solved coefficients agree with the closed forms exactly.
pub fn check_decomposition(uq: &Uq, basis: &SlfBasis) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("decomposition", uq.p());
    let solved = match decompose_twisted_integral(uq, basis) {
        Ok(c) => c,
        Err(e) => {
            report.push(Check::fail("twisted integral decomposes", format!("{e}")));
            return Ok(report);
        }
    };
    report.push(Check::pass("twisted integral decomposes"));
    let closed = closed_form_coeffs(uq)?;
    let names = basis.named();
    let fail = solved
        .slots()
        .iter()
        .zip(closed.slots())
        .zip(&names)
        .find_map(|((a, b), (name, _))| (*a != b).then(|| format!("coefficient of {name}: solved {a}; closed form {b}")));
    let shown: Vec<String> = solved.slots().iter().zip(&names).map(|(c, (n, _))| format!("{n}: {c}")).collect();
    report.push(match fail {
        None => Check::pass_with("coefficients match closed forms", shown.join(", ")),
        Some(f) => Check::fail("coefficients match closed forms", f),
    });
    Ok(report)
}

/// `-δ_s/γ_s² = -β_s(Σ_{l=1}^{s-1} 1/([l][s-l]) - Σ_{l=1}^{p-s-1} 1/([l][p-s-l]))`.
pub fn check_alpha_delta_relation(uq: &Uq) -> Result<VerificationReport> {
    let p = uq.p();
    let mut report = VerificationReport::new("decomposition", p);
    let recip_sum = |m: u32| -> Result<CycNum> {
        (1..m).try_fold(CycNum::zero(uq.field()), |acc, l| Ok(&acc + &(&uq.qint(l as i64) * &uq.qint((m - l) as i64)).inv()?))
    };
    let mut fail = None;
    for s in 1..p {
        let g = gamma(uq, Sign::Plus, s)?;
        let d = delta(uq, Sign::Plus, s)?;
        let left = -&(&d * &g.pow(2).inv()?);
        let beta = g.inv()?;
        let right = -&(&beta * &(&recip_sum(s)? - &recip_sum(p - s)?));
        if left != right && fail.is_none() {
            fail = Some(format!("s = {s}: -δ/γ² = {left}; bracketed form = {right}"));
        }
    }
    report.push(Check::from_failure("α±_s = -δ_s/γ_s² equals the bracketed sum", fail));
    Ok(report)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

/// Sine forms of `α_0`, `α_p`, `β_s`, the exact intermediate form of `β_s`,
/// and the auxiliary product identities.
pub fn check_trig_identities(uq: &Uq) -> Result<VerificationReport> {
    const TOL: f64 = 1e-9;
    const PROD_TOL: f64 = 1e-12;
    let p = uq.p();
    let pf = p as f64;
    let pi = core::f64::consts::PI;
    let mut report = VerificationReport::new("trig", p);
    let closed = closed_form_coeffs(uq)?;
    let scale = libm::pow(2.0 * libm::sin(pi / pf), 2.0 * (pf - 1.0)) / (2.0 * pf * pf * pf);
    let sgn = |e: u32| if e % 2 == 0 { 1.0 } else { -1.0 };

    let ap = closed.alphap.to_complex();
    report.push(Check::expect("α_p sine form", close(ap, Complex64::new(scale, 0.0), TOL), format!("exact {ap}, sine form {scale}")));
    let a0 = closed.alpha0.to_complex();
    let a0t = sgn(p - 1) * scale;
    report.push(Check::expect("α_0 sine form", close(a0, Complex64::new(a0t, 0.0), TOL), format!("exact {a0}, sine form {a0t}")));

    let fact = q_factorial(uq.field(), p - 1);
    let fact_sq_inv = fact.pow(2).inv()?;
    let (mut exact_fail, mut sine_fail) = (None, None);
    for s in 1..p {
        let beta = &closed.beta[s as usize - 1];
        let qs2 = uq.qint(s as i64).pow(2);
        let mid = (&(&qs2 * &fact_sq_inv) * &uq.scalar(2 * p as i64).inv()?)
            .scale(&crate::rational::Rational::from_int(if (p - s - 1) % 2 == 0 { 1 } else { -1 }));
        if mid != *beta && exact_fail.is_none() {
            exact_fail = Some(format!("s = {s}: β_s = {beta}; (-1)^(p-s-1)[s]²/(2p([p-1]!)²) = {mid}"));
        }
        let qs = libm::sin(s as f64 * pi / pf) / libm::sin(pi / pf);
        let trig = sgn(p - s - 1) * qs * qs * scale;
        let exact = beta.to_complex();
        if !close(exact, Complex64::new(trig, 0.0), TOL) && sine_fail.is_none() {
            sine_fail = Some(format!("s = {s}: exact {exact}, sine form {trig}"));
        }
    }
    report.push(Check::from_failure("β_s factorial form (exact)", exact_fail));
    report.push(Check::from_failure("β_s sine form", sine_fail));

    let sin_prod: f64 = (1..p).map(|l| libm::sin(l as f64 * pi / pf)).product();
    let fact_trig = sin_prod / libm::pow(libm::sin(pi / pf), pf - 1.0);
    let fc = fact.to_complex();
    report.push(Check::expect(
        "[p-1]! sine form",
        close(fc, Complex64::new(fact_trig, 0.0), TOL),
        format!("exact {fc}, sine form {fact_trig}"),
    ));
    let target = pf / libm::pow(2.0, pf - 1.0);
    let dev = libm::fabs(sin_prod - target);
    report.push(Check::expect("∏ sin(lπ/p) = p/2^(p-1)", dev <= PROD_TOL, format!("deviation {dev:e}")));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::idempotent;
    use crate::rational::Rational;

    fn rat(uq: &Uq, n: i64, d: i64) -> CycNum {
        CycNum::from_rational(uq.field(), Rational::new(n, d))
    }

    #[test]
    fn basis_sizes() {
        let uq = Uq::new(3).unwrap();
        let sizes: Vec<usize> = (0..=3).map(|s| q_basis(&uq, s).unwrap().len()).collect();
        assert_eq!(sizes, [9, 18, 18, 9]);
        assert!(q_basis(&uq, 4).is_err());
    }

    #[test]
    fn basis_contains_idempotents() {
        let uq = Uq::new(3).unwrap();
        let b = q_basis(&uq, 1).unwrap();
        let e = idempotent(&uq, ProjLabel::new(3, Sign::Plus, 1, 1).unwrap()).unwrap();
        assert!(b.iter().any(|x| x.key.kind == Kind::B && x.key.index == 0 && x.key.label == 1 && x.element == e));
        let b3 = q_basis(&uq, 3).unwrap();
        let e3 = idempotent(&uq, ProjLabel::new(3, Sign::Plus, 3, 2).unwrap()).unwrap();
        assert!(b3.iter().any(|x| x.key.index == 1 && x.key.label == 2 && x.element == e3));
    }

    #[test]
    fn table_rule_examples() {
        let k = |kind, sign, s, label, index| QKey { kind, sign, s, label, index };
        // B+_n(s,t1) A+_{t1-1}(s,t2) = A+_n(s,t2)
        let x = k(Kind::B, Sign::Plus, 2, 1, 1);
        let y = k(Kind::A, Sign::Plus, 2, 2, 0);
        assert_eq!(expected_product(3, &x, &y), Some(k(Kind::A, Sign::Plus, 2, 2, 1)));
        // Y-_n(p-s,u) X+_{u-1}(s,t2) = A+_n(s,t2)
        let x = k(Kind::Y, Sign::Minus, 1, 1, 1);
        let y = k(Kind::X, Sign::Plus, 2, 2, 0);
        assert_eq!(expected_product(3, &x, &y), Some(k(Kind::A, Sign::Plus, 2, 2, 1)));
        // A+ A- = 0
        let x = k(Kind::A, Sign::Plus, 2, 1, 0);
        let y = k(Kind::A, Sign::Minus, 1, 1, 0);
        assert_eq!(expected_product(3, &x, &y), None);
    }

    #[test]
    fn functional_values_on_idempotents() {
        let uq = Uq::new(3).unwrap();
        let basis = slf_functionals(&uq).unwrap();
        let e = idempotent(&uq, ProjLabel::new(3, Sign::Plus, 1, 1).unwrap()).unwrap();
        assert!(basis.t_plus[0].eval(&e).is_one());
        assert!(basis.g[0].eval(&e).is_zero());
        assert!(basis.t_minus[0].eval(&e).is_zero());
        let a = q_basis(&uq, 3).unwrap();
        assert!(basis.tp.eval(&a[0].element).is_one());
        assert!(basis.t0.eval(&a[0].element).is_zero());
    }

    #[test]
    fn symmetry_examples() {
        let uq = Uq::new(2).unwrap();
        let comms = Commutators::new(&uq, &ProductTable::new(&uq));
        let counit = Functional::from_fn(&uq, |m| if m.e == 0 && m.f == 0 { uq.scalar(1) } else { uq.scalar(0) });
        assert!(check_symmetry(&comms, &counit));
        assert!(!check_symmetry(&comms, &crate::integrals::lambda_functional(&uq)));
        assert!(check_symmetry(&comms, &twisted_lambda(&uq)));
    }

    #[test]
    fn dimensions_small_p() {
        for p in 2..=3 {
            let uq = Uq::new(p).unwrap();
            let comms = Commutators::new(&uq, &ProductTable::new(&uq));
            let d = 3 * p as usize - 1;
            assert_eq!(slf_space_dimension(&uq), d);
            assert_eq!(slf_space_dimension_all_pairs(&uq, &comms), d);
            assert_eq!(center_dimension(&uq), d);
        }
    }

    #[test]
    fn coefficients_p2_p3() {
        let uq = Uq::new(2).unwrap();
        let c = decompose_twisted_integral(&uq, &slf_functionals(&uq).unwrap()).unwrap();
        assert_eq!(c.alpha0, rat(&uq, -1, 4));
        assert_eq!(c.alphap, rat(&uq, 1, 4));
        assert!(c.alpha_plus[0].is_zero() && c.alpha_minus[0].is_zero());
        assert_eq!(c.beta[0], rat(&uq, 1, 4));
        let uq = Uq::new(3).unwrap();
        let c = decompose_twisted_integral(&uq, &slf_functionals(&uq).unwrap()).unwrap();
        assert_eq!(c.beta[0], rat(&uq, -1, 6));
        assert_eq!(c.alphap, rat(&uq, 1, 6));
        assert_eq!(c.alpha_plus[0], rat(&uq, -1, 6));
    }

    #[test]
    fn all_reports_small_p() {
        for p in 2..=3 {
            let uq = Uq::new(p).unwrap();
            let mut reports = alloc::vec![verify_matrix_units(&uq, 0).unwrap(), verify_matrix_units(&uq, p).unwrap()];
            for s in 1..p {
                reports.push(verify_block_tables(&uq, s).unwrap());
            }
            let basis = slf_functionals(&uq).unwrap();
            let comms = Commutators::new(&uq, &ProductTable::new(&uq));
            reports.push(check_slf(&uq, &basis, &comms).unwrap());
            reports.push(check_decomposition(&uq, &basis).unwrap());
            reports.push(check_alpha_delta_relation(&uq).unwrap());
            reports.push(check_trig_identities(&uq).unwrap());
            for r in reports {
                assert!(r.passed(), "{r}");
            }
            assert!(check_blocks_span(&uq).unwrap().passed());
        }
    }
}
