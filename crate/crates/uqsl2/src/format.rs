//! JSON encodings of field elements, algebra elements, tensors, functionals
//! and verification reports.
//!
//! A field element is the list of its rational coefficients in the power
//! basis `1, q, q^2, …` as strings. Object keys are emitted in sorted order
//! and lists in canonical order, so equal values serialize to equal bytes.

use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};
use uqsl2_core::{AlgElem, Check, CycField, CycNum, Functional, Mono, Rational, Status, TensorElem, Uq, VerificationReport};

pub fn cyc_to_json(c: &CycNum) -> Value {
    Value::Array(c.coeffs().iter().map(|r| Value::String(r.to_string())).collect())
}

pub fn cyc_from_json(field: &std::sync::Arc<CycField>, v: &Value) -> Result<CycNum> {
    let list = v.as_array().ok_or_else(|| anyhow!("field element must be a list of rational strings"))?;
    let coeffs = list
        .iter()
        .map(|x| {
            let s = x.as_str().ok_or_else(|| anyhow!("coefficient {x} is not a string"))?;
            s.parse::<Rational>().map_err(|e| anyhow!("{e}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CycNum::from_poly(field, &coeffs))
}

/// `"-1/4"` for rational values, otherwise the polynomial in `q`.
pub fn coefficient_string(c: &CycNum) -> String {
    match c.as_rational() {
        Some(r) => r.to_string(),
        None => c.to_string(),
    }
}

pub fn complex_json(c: &CycNum) -> Value {
    let z = c.to_complex();
    json!([z.re, z.im])
}

pub fn mono_to_json(m: Mono) -> Value {
    json!({"e": m.e, "f": m.f, "k": m.k})
}

fn field_u32(v: &Value, key: &str) -> Result<u32> {
    let n = v.get(key).and_then(Value::as_u64).ok_or_else(|| anyhow!("missing or non-integer field {key:?}"))?;
    u32::try_from(n).context(key.to_string())
}

pub fn mono_from_json(v: &Value) -> Result<Mono> {
    Ok(Mono::new(field_u32(v, "e")?, field_u32(v, "f")?, field_u32(v, "k")?))
}

pub fn alg_to_json(x: &AlgElem) -> Value {
    let terms: Vec<Value> = x.terms().map(|(m, c)| json!({"e": m.e, "f": m.f, "k": m.k, "c": cyc_to_json(c)})).collect();
    json!({"p": x.p(), "terms": terms})
}

pub fn alg_from_json(uq: &Uq, v: &Value) -> Result<AlgElem> {
    let p = field_u32(v, "p")?;
    if p != uq.p() {
        bail!("element has p = {p}, expected {}", uq.p());
    }
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| anyhow!("missing terms"))?;
    let parsed = terms
        .iter()
        .map(|t| Ok((mono_from_json(t)?, cyc_from_json(uq.field(), t.get("c").ok_or_else(|| anyhow!("missing c"))?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgElem::from_terms(uq, parsed)?)
}

pub fn tensor_to_json(t: &TensorElem) -> Value {
    let terms: Vec<Value> =
        t.terms().map(|([l, r], c)| json!({"left": mono_to_json(*l), "right": mono_to_json(*r), "c": cyc_to_json(c)})).collect();
    json!({"p": t.uq().p(), "terms": terms})
}

pub fn functional_to_json(f: &Functional) -> Value {
    let values: Vec<Value> = f.uq().basis().zip(f.values()).map(|(m, v)| json!([mono_to_json(m), cyc_to_json(v)])).collect();
    json!({"p": f.uq().p(), "values": values})
}

pub fn functional_from_json(uq: &Uq, v: &Value) -> Result<Functional> {
    let p = field_u32(v, "p")?;
    if p != uq.p() {
        bail!("functional has p = {p}, expected {}", uq.p());
    }
    let rows = v.get("values").and_then(Value::as_array).ok_or_else(|| anyhow!("missing values"))?;
    let mut values = vec![CycNum::zero(uq.field()); uq.dim()];
    for row in rows {
        let pair = row.as_array().filter(|a| a.len() == 2).ok_or_else(|| anyhow!("value rows are [mono, coeff]"))?;
        let m = mono_from_json(&pair[0])?;
        if !uq.in_range(m) {
            bail!("monomial {m} out of range");
        }
        values[uq.mono_index(m)] = cyc_from_json(uq.field(), &pair[1])?;
    }
    Ok(Functional::new(uq, values)?)
}

/// Elapsed times are emitted only when `timings` is set, which keeps the
/// default output byte-identical across runs.
pub fn report_to_json(r: &VerificationReport, timings: bool) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("name".into(), json!(c.name));
            m.insert("status".into(), json!(if c.passed() { "pass" } else { "fail" }));
            if let Some(d) = &c.detail {
                m.insert("detail".into(), json!(d));
            }
            if let (true, Some(e)) = (timings, c.elapsed) {
                m.insert("elapsed_ms".into(), json!(e.as_secs_f64() * 1e3));
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "suite": r.suite,
        "p": r.p,
        "passed": r.passed(),
        "total": r.total(),
        "failed": r.failed_count(),
        "checks": checks,
    })
}

pub fn report_from_json(v: &Value) -> Result<VerificationReport> {
    let suite = v.get("suite").and_then(Value::as_str).ok_or_else(|| anyhow!("missing suite"))?;
    let p = match v.get("p") {
        None | Some(Value::Null) => None,
        Some(x) => Some(u32::try_from(x.as_u64().ok_or_else(|| anyhow!("p must be an integer"))?)?),
    };
    let list = v.get("checks").and_then(Value::as_array).ok_or_else(|| anyhow!("missing checks"))?;
    let checks = list
        .iter()
        .map(|c| {
            let name = c.get("name").and_then(Value::as_str).ok_or_else(|| anyhow!("check without name"))?;
            let status = match c.get("status").and_then(Value::as_str) {
                Some("pass") => Status::Pass,
                Some("fail") => Status::Fail,
                other => bail!("bad status {other:?}"),
            };
            let detail = c.get("detail").and_then(Value::as_str).map(str::to_string);
            let elapsed = c.get("elapsed_ms").and_then(Value::as_f64).map(|ms| Duration::from_secs_f64(ms / 1e3));
            Ok(Check { name: name.to_string(), status, detail, elapsed })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = VerificationReport { suite: suite.to_string(), p, checks };
    if let Some(total) = v.get("total").and_then(Value::as_u64) {
        if total as usize != report.total() {
            bail!("total {total} disagrees with {} listed checks", report.total());
        }
    }
    Ok(report)
}

/// Text rendering; elapsed times are appended when `timings` is set.
pub fn report_to_text(r: &VerificationReport, timings: bool) -> String {
    let mut out = String::new();
    match r.p {
        Some(p) => out.push_str(&format!("suite {} (p = {p})\n", r.suite)),
        None => out.push_str(&format!("suite {}\n", r.suite)),
    }
    for c in &r.checks {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("  {tag} {}", c.name));
        if let Some(d) = &c.detail {
            out.push_str(&format!(": {d}"));
        }
        if let (true, Some(e)) = (timings, c.elapsed) {
            out.push_str(&format!(" [{:.1} ms]", e.as_secs_f64() * 1e3));
        }
        out.push('\n');
    }
    out.push_str(&format!("{} checks, {} failed\n", r.total(), r.failed_count()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_roundtrip() {
        let uq = Uq::new(3).unwrap();
        let x = &uq.casimir() + &uq.monomial(2, 1, 5).scale(&uq.q(1));
        let v = alg_to_json(&x);
        assert_eq!(alg_from_json(&uq, &v).unwrap(), x);
        assert!(alg_from_json(&Uq::new(2).unwrap(), &v).is_err());
    }

    #[test]
    fn coefficient_strings() {
        let uq = Uq::new(3).unwrap();
        assert_eq!(coefficient_string(&uq.scalar(-2)), "-2");
        assert_eq!(coefficient_string(&uq.q(1)), "q");
    }
}
