//! Linear functionals on the algebra, stored densely in PBW order.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgElem, Mono, Uq};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Functional {
    uq: Uq,
    values: Vec<CycNum>,
}

impl Functional {
    pub fn new(uq: &Uq, values: Vec<CycNum>) -> Result<Self> {
        if values.len() != uq.dim() {
            return Err(Error::OutOfRange(alloc::format!("functional needs {} values, got {}", uq.dim(), values.len())));
        }
        Ok(Functional { uq: uq.clone(), values })
    }

    pub fn zero(uq: &Uq) -> Self {
        Functional { uq: uq.clone(), values: alloc::vec![CycNum::zero(uq.field()); uq.dim()] }
    }

    /// The dual basis vector of `m`.
    pub fn delta(uq: &Uq, m: Mono) -> Self {
        let mut f = Self::zero(uq);
        f.values[uq.mono_index(m)] = CycNum::one(uq.field());
        f
    }

    pub fn from_fn(uq: &Uq, f: impl Fn(Mono) -> CycNum) -> Self {
        Functional { uq: uq.clone(), values: uq.basis().map(f).collect() }
    }

    pub fn uq(&self) -> &Uq {
        &self.uq
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value(&self, m: Mono) -> &CycNum {
        &self.values[self.uq.mono_index(m)]
    }

    pub fn eval(&self, x: &AlgElem) -> CycNum {
        let mut acc = CycNum::zero(self.uq.field());
        for (m, c) in x.terms() {
            let v = self.value(*m);
            if !v.is_zero() {
                acc += &(c * v);
            }
        }
        acc
    }

    /// Evaluates on a sparse list of terms, e.g. the output of `Uq::mul_mono`.
    pub fn eval_terms<'a>(&self, terms: impl IntoIterator<Item = &'a (Mono, CycNum)>) -> CycNum {
        let mut acc = CycNum::zero(self.uq.field());
        for (m, c) in terms {
            let v = self.value(*m);
            if !v.is_zero() {
                acc += &(c * v);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNum::is_zero)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Functional { uq: self.uq.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Functional { uq: self.uq.clone(), values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Functional { uq: self.uq.clone(), values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    /// `(a ⇀ φ)(b) = φ(ba)`.
    pub fn left_action(&self, a: &AlgElem) -> Self {
        Functional::from_fn(&self.uq, |m| self.eval(&(&self.uq.mono(m) * a)))
    }

    /// `(φ ↼ a)(b) = φ(ab)`.
    pub fn right_action(&self, a: &AlgElem) -> Self {
        Functional::from_fn(&self.uq, |m| self.eval(&(a * &self.uq.mono(m))))
    }

    /// Nonzero values in PBW order.
    pub fn support(&self) -> impl Iterator<Item = (Mono, &CycNum)> {
        self.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (self.uq.mono_at(i), v))
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Functional{")?;
        for (i, (m, v)) in self.support().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}: {v}")?;
        }
        f.write_str("}")
    }
}
