//! Exact linear algebra over `Q(q)`: incremental sparse row echelon forms
//! and small dense matrices.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::cyclotomic::{CycField, CycNum};

/// Sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, CycNum>;

fn axpy(target: &mut SparseVec, factor: &CycNum, source: &SparseVec) {
    for (col, v) in source {
        let t = factor * v;
        match target.get_mut(col) {
            Some(x) => {
                *x += &t;
                if x.is_zero() {
                    target.remove(col);
                }
            }
            None => {
                if !t.is_zero() {
                    target.insert(*col, t);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    /// The row was independent; its pivot column.
    Pivot(usize),
    /// The row reduced to zero.
    Dependent,
    /// The row reduced to something supported only outside the pivotable
    /// columns (an inconsistent equation when those are right-hand sides).
    Residual(SparseVec),
}

/// Row echelon form built one row at a time. Only columns `< pivot_limit`
/// are eligible as pivots; further columns carry right-hand sides.
#[derive(Clone, Debug)]
pub struct Echelon {
    pivot_limit: usize,
    /// Pivot column to row; each row has coefficient 1 at its pivot, which is
    /// its smallest pivotable column.
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(pivot_limit: usize) -> Self {
        Echelon { pivot_limit, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let next = row.range(cursor..self.pivot_limit).find(|(c, _)| self.rows.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((col, v)) = next else { break };
            axpy(&mut row, &-&v, &self.rows[&col]);
            cursor = col + 1;
        }
        row
    }

    pub fn insert(&mut self, row: SparseVec) -> Insert {
        let row = self.reduce(row);
        let Some((&col, lead)) = row.range(..self.pivot_limit).next() else {
            return if row.is_empty() { Insert::Dependent } else { Insert::Residual(row) };
        };
        let inv = lead.inv().expect("nonzero pivot");
        let normalized: SparseVec = row.iter().map(|(c, v)| (*c, v * &inv)).collect();
        self.rows.insert(col, normalized);
        Insert::Pivot(col)
    }

    /// Clears every pivot column above its pivot, giving reduced row echelon
    /// form.
    pub fn back_substitute(&mut self) {
        let cols: Vec<usize> = self.rows.keys().rev().copied().collect();
        for (i, &col) in cols.iter().enumerate() {
            let pivot_row = self.rows[&col].clone();
            for &other in &cols[i + 1..] {
                let row = self.rows.get_mut(&other).expect("row exists");
                if let Some(v) = row.get(&col).cloned() {
                    axpy(row, &-&v, &pivot_row);
                }
            }
        }
    }

    /// Basis of `{x : row · x = 0 for every inserted row}` over the pivotable
    /// columns. Call after `back_substitute`.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let free: Vec<usize> = (0..self.pivot_limit).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = SparseVec::new();
                let one = self.any_field().map(|fld| CycNum::one(&fld)).expect("nonempty system");
                v.insert(f, one);
                for (pc, row) in &self.rows {
                    if let Some(x) = row.get(&f) {
                        v.insert(*pc, -x);
                    }
                }
                v
            })
            .collect()
    }

    /// Nullity over the pivotable columns.
    pub fn nullity(&self) -> usize {
        self.pivot_limit - self.rank()
    }

    /// For a full-rank augmented system `[A | B]` in reduced form: row `j` of
    /// the solution `X` with `AX = B`, as the right-hand-side part of the pivot
    /// row for column `j`.
    pub fn solution_row(&self, col: usize) -> Option<SparseVec> {
        self.rows.get(&col).map(|r| r.range(self.pivot_limit..).map(|(c, v)| (c - self.pivot_limit, v.clone())).collect())
    }

    fn any_field(&self) -> Option<Arc<CycField>> {
        self.rows.values().flat_map(|r| r.values()).next().map(|v| v.field().clone()).or(None)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank(ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Small dense square matrices over `Q(q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zero(field: &Arc<CycField>, n: usize) -> Self {
        Matrix { n, data: vec![CycNum::zero(field); n * n] }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = CycNum::one(field);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.n + j] = v;
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn pow(&self, e: u32) -> Self {
        let field = self.data.first().map(|x| x.field().clone());
        match field {
            None => self.clone(),
            Some(f) => (0..e).fold(Matrix::identity(&f, self.n), |acc, _| &acc * self),
        }
    }

    /// True iff the matrix is `c · I` for some scalar `c`; returns `c`.
    pub fn as_scalar(&self) -> Option<CycNum> {
        let c = self.data.first()?.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                if (i == j && *v != c) || (i != j && !v.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        let field = self.data[0].field().clone();
        let mut out = Matrix::zero(&field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn sv(field: &Arc<CycField>, entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().filter(|(_, v)| *v != 0).map(|(c, v)| (*c, CycNum::from_int(field, *v))).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let f = CycField::new(3).unwrap();
        let mut e = Echelon::new(4);
        assert_eq!(e.insert(sv(&f, &[(0, 1), (1, 2)])), Insert::Pivot(0));
        assert_eq!(e.insert(sv(&f, &[(0, 2), (1, 4)])), Insert::Dependent);
        assert_eq!(e.insert(sv(&f, &[(1, 1), (3, 1)])), Insert::Pivot(1));
        e.back_substitute();
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        // every null vector is orthogonal to the original rows
        for v in &ns {
            let dot = |row: &[(usize, i64)]| {
                row.iter().fold(CycNum::zero(&f), |acc, (c, x)| {
                    &acc + &(&CycNum::from_int(&f, *x) * &v.get(c).cloned().unwrap_or_else(|| CycNum::zero(&f)))
                })
            };
            assert!(dot(&[(0, 1), (1, 2)]).is_zero());
            assert!(dot(&[(1, 1), (3, 1)]).is_zero());
        }
    }

    #[test]
    fn augmented_solve_and_inconsistency() {
        let f = CycField::new(2).unwrap();
        let q = CycNum::q_pow(&f, 1);
        // q x0 = 1 ; x0 + x1 = 0  (rhs in column 2)
        let mut e = Echelon::new(2);
        let mut r0 = SparseVec::new();
        r0.insert(0, q.clone());
        r0.insert(2, CycNum::one(&f));
        e.insert(r0);
        e.insert(sv(&f, &[(0, 1), (1, 1)]));
        e.back_substitute();
        let x0 = e.solution_row(0).unwrap();
        assert_eq!(x0[&0], q.inv().unwrap());
        let x1 = e.solution_row(1).unwrap();
        assert_eq!(x1[&0], -&q.inv().unwrap());
        // 0 = 1 is inconsistent
        match e.insert(sv(&f, &[(0, 1), (2, 5)])) {
            Insert::Residual(r) => assert!(r.keys().all(|c| *c >= 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matrix_ops() {
        let f = CycField::new(2).unwrap();
        let mut m = Matrix::zero(&f, 2);
        m.set(0, 1, CycNum::one(&f));
        assert!(m.pow(2).is_zero());
        let i2 = Matrix::identity(&f, 2).scale(&CycNum::from_rational(&f, Rational::new(1, 2)));
        assert_eq!(i2.as_scalar(), Some(CycNum::from_rational(&f, Rational::new(1, 2))));
        assert!(m.as_scalar().is_none());
    }
}
