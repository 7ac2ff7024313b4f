//! The cyclotomic field `Q(q)` with `q = exp(πi/p)`, a primitive `2p`-th root
//! of unity.
//!
//! Elements are stored as their unique residue modulo the cyclotomic
//! polynomial `Φ_{2p}` in the power basis `1, q, …, q^{φ(2p)-1}`, so structural
//! equality is field equality.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Euler's totient, by trial factorisation.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn moebius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Integer coefficients (lowest degree first) of the `n`-th cyclotomic
/// polynomial, via `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut num: Vec<i128> = vec![1];
    let mut den: Vec<i128> = vec![1];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let target = match moebius(n / d) {
            1 => &mut num,
            -1 => &mut den,
            _ => continue,
        };
        // multiply by x^d - 1
        let d = d as usize;
        let mut out = vec![0i128; target.len() + d];
        for (i, c) in target.iter().enumerate() {
            out[i] -= c;
            out[i + d] += c;
        }
        *target = out;
    }
    // exact division of monic-up-to-sign integer polynomials
    let dl = den.len() - 1;
    let lead = den[dl];
    let mut rem = num;
    let mut quot = vec![0i128; rem.len() - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl] / lead;
        quot[i] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quot.into_iter().map(|c| c as i64).collect()
}

/// Shared description of `Q(q)` for one value of `p`.
pub struct CycField {
    p: u32,
    /// `Φ_{2p}`, monic, lowest degree first; length `degree + 1`.
    modulus: Vec<i64>,
    degree: usize,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(q), q = exp(pi i/{})", self.p)
    }
}

impl CycField {
    pub fn new(p: u32) -> Result<Arc<Self>> {
        if p < 2 {
            return Err(Error::InvalidP(p as i64));
        }
        let modulus = cyclotomic_polynomial(2 * p as u64);
        let degree = modulus.len() - 1;
        debug_assert_eq!(degree as u64, euler_phi(2 * p as u64));
        Ok(Arc::new(CycField { p, modulus, degree }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `φ(2p)`, the dimension of `Q(q)` over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduces a polynomial in `q` of any length modulo `Φ_{2p}` in place and
    /// truncates it to `degree` coefficients.
    fn reduce(&self, poly: &mut Vec<Rational>) {
        let d = self.degree;
        if poly.len() > d {
            for i in (d..poly.len()).rev() {
                if poly[i].is_zero() {
                    continue;
                }
                let c = core::mem::take(&mut poly[i]);
                for (j, m) in self.modulus[..d].iter().enumerate() {
                    if *m != 0 {
                        let t = &c * &Rational::from_int(*m);
                        poly[i - d + j] -= &t;
                    }
                }
            }
        }
        poly.resize(d, Rational::zero());
    }
}

/// An exact element of `Q(q)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl CycNum {
    /// Canonical residue of `Σ poly[k] q^k`.
    pub fn from_poly(field: &Arc<CycField>, poly: &[Rational]) -> Self {
        let mut coeffs = poly.to_vec();
        field.reduce(&mut coeffs);
        CycNum { field: field.clone(), coeffs }
    }

    /// `cyc_make`: validates `p` and builds the canonical residue.
    pub fn make(p: u32, poly: &[Rational]) -> Result<Self> {
        let field = CycField::new(p)?;
        Ok(Self::from_poly(&field, poly))
    }

    pub fn zero(field: &Arc<CycField>) -> Self {
        CycNum { field: field.clone(), coeffs: vec![Rational::zero(); field.degree] }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CycField>, r: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree];
        coeffs[0] = r;
        CycNum { field: field.clone(), coeffs }
    }

    pub fn from_int(field: &Arc<CycField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_int(n))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(field: &Arc<CycField>, k: i64) -> Self {
        let two_p = 2 * field.p as i64;
        let k = k.rem_euclid(two_p) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        Self::from_poly(field, &poly)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.p == other.field.p,
            "mixing elements of Q(q) for p = {} and p = {}",
            self.field.p,
            other.field.p
        );
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.p() != other.p() {
            return Err(Error::MismatchedP(self.p(), other.p()));
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.p() != other.p() {
            return Err(Error::MismatchedP(self.p(), other.p()));
        }
        Ok(self * other)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(&self.field);
        }
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// `Φ_{2p}`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, r.inv().expect("nonzero")));
        }
        let modulus: Vec<Rational> = self.field.modulus.iter().map(|c| Rational::from_int(*c)).collect();
        // invariant: s_i * a ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !(r1.len() == 1) {
            let (quot, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // cannot happen for a field modulus
                return Err(Error::DivisionByZero);
            }
        }
        let c = r1[0].inv().expect("nonzero remainder");
        let s: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Evaluates the representing polynomial at `q = exp(πi/p)`.
    pub fn to_complex(&self) -> Complex64 {
        let p = self.field.p as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = core::f64::consts::PI * k as f64 / p;
            let v = c.to_f64();
            acc += Complex64::new(v * libm::cos(theta), v * libm::sin(theta));
        }
        acc
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero divisor");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &(&c * bj);
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.check_same(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycNum { field: self.field.clone(), coeffs }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.check_same(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycNum { field: self.field.clone(), coeffs }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.check_same(rhs);
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let d = self.field.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        self.field.reduce(&mut prod);
        CycNum { field: self.field.clone(), coeffs: prod }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in &mut self.coeffs {
            *c = -&*c;
        }
        self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

/// Human-readable polynomial in `q`, e.g. `1/2 - q + 3*q^2`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(p={}, {})", self.field.p, self)
    }
}
