//! Quantum integers, factorials and binomials at `q = exp(πi/p)`.

use alloc::format;
use alloc::sync::Arc;

use crate::cyclotomic::{CycField, CycNum};
use crate::error::{Error, Result};

/// `[n] = (q^n - q^{-n}) / (q - q^{-1})`, expanded as `Σ_{j<n} q^{n-1-2j}`.
pub fn q_int(field: &Arc<CycField>, n: i64) -> CycNum {
    if n < 0 {
        return -q_int(field, -n);
    }
    let mut acc = CycNum::zero(field);
    for j in 0..n {
        acc += &CycNum::q_pow(field, n - 1 - 2 * j);
    }
    acc
}

/// `[n]! = [n][n-1]…[1]`, with `[0]! = 1`.
pub fn q_factorial(field: &Arc<CycField>, n: u32) -> CycNum {
    (1..=n as i64).fold(CycNum::one(field), |acc, k| &acc * &q_int(field, k))
}

/// The quantum binomial `[m]! / ([n]! [m-n]!)` for `0 <= n <= m <= p-1`.
pub fn q_binom(field: &Arc<CycField>, m: u32, n: u32) -> Result<CycNum> {
    let p = field.p();
    if n > m || m >= p {
        return Err(Error::OutOfRange(format!("q_binom({m}, {n}) needs 0 <= n <= m <= {}", p - 1)));
    }
    let den = &q_factorial(field, n) * &q_factorial(field, m - n);
    Ok(&q_factorial(field, m) * &den.inv()?)
}

/// Arithmetic sanity of `Q(q)`: the degree of the field, `q^p = -1`,
/// `[p] = 0`, `[p-n] = [n]`, inverses, and the complex embedding.
pub fn check_arithmetic(field: &Arc<CycField>) -> crate::report::VerificationReport {
    use crate::report::Check;
    let p = field.p();
    let mut report = crate::report::VerificationReport::new("arithmetic", p);
    let deg = field.degree() as u64;
    let phi = crate::cyclotomic::euler_phi(2 * p as u64);
    report.push(Check::expect("field degree is φ(2p)", deg == phi, format!("degree {deg}, φ(2p) = {phi}")));
    let qp = CycNum::q_pow(field, p as i64);
    report.push(Check::expect("q^p = -1", (&qp + &CycNum::one(field)).is_zero(), format!("q^p = {qp}")));
    let qp_int = q_int(field, p as i64);
    report.push(Check::expect("[p] = 0", qp_int.is_zero(), format!("[p] = {qp_int}")));
    let mirror = (1..p as i64).find_map(|n| {
        let (a, b) = (q_int(field, p as i64 - n), q_int(field, n));
        (a != b).then(|| format!("[{}] = {a}, [{n}] = {b}", p as i64 - n))
    });
    report.push(Check::from_failure("[p-n] = [n]", mirror));
    let inverse = (1..p as i64).find_map(|n| {
        let x = q_int(field, n);
        match x.inv() {
            Ok(y) if (&x * &y).is_one() => None,
            _ => Some(format!("[{n}] = {x} has no inverse")),
        }
    });
    report.push(Check::from_failure("[n] invertible for 0 < n < p", inverse));
    let embed = (0..2 * p as i64).find_map(|k| {
        let z = CycNum::q_pow(field, k).to_complex();
        let angle = core::f64::consts::PI * k as f64 / p as f64;
        let dev = libm::hypot(z.re - libm::cos(angle), z.im - libm::sin(angle));
        (dev > 1e-12).then(|| format!("q^{k} embeds as {z}"))
    });
    report.push(Check::from_failure("complex embedding sends q to exp(πi/p)", embed));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn small_values() {
        let f = CycField::new(3).unwrap();
        assert!(q_int(&f, 0).is_zero());
        assert!(q_int(&f, 1).is_one());
        assert!(q_int(&f, 3).is_zero());
        // [2] = 2cos(pi/3) = 1
        assert!(q_int(&f, 2).is_one());
        assert!(q_int(&f, 2).inv().unwrap().is_one());
        assert!(q_factorial(&f, 0).is_one());
        assert!(q_binom(&f, 2, 1).unwrap().is_one());
        assert!(q_binom(&f, 2, 0).unwrap().is_one());
        assert!(q_binom(&f, 3, 1).is_err());
        assert!(q_binom(&f, 1, 2).is_err());
    }

    #[test]
    fn quotient_definition_agrees() {
        for p in 2..8 {
            let f = CycField::new(p).unwrap();
            let denom = (&CycNum::q_pow(&f, 1) - &CycNum::q_pow(&f, -1)).inv().unwrap();
            for n in -3..(3 * p as i64) {
                let num = &CycNum::q_pow(&f, n) - &CycNum::q_pow(&f, -n);
                assert_eq!(q_int(&f, n), &num * &denom, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn binomials_in_rationals_at_p2() {
        let f = CycField::new(2).unwrap();
        assert_eq!(q_binom(&f, 1, 1).unwrap(), CycNum::from_rational(&f, Rational::one()));
    }
}
