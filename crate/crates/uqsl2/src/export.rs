//! JSON exports: idempotents, symmetric linear functions, decomposition
//! coefficients and block multiplication tables.

use anyhow::Result;
use serde_json::{json, Value};
use uqsl2_core::projective::all_idempotents;
use uqsl2_core::slf::{block_table, closed_form_coeffs, decompose_twisted_integral, slf_functionals};
use uqsl2_core::{CycNum, Uq};

use crate::format::{alg_to_json, coefficient_string, complex_json, functional_to_json};

pub fn idempotents_json(uq: &Uq) -> Result<Value> {
    let list: Vec<Value> = all_idempotents(uq)?
        .into_iter()
        .map(|(l, e)| json!({"label": {"alpha": l.alpha.to_string(), "s": l.s, "t": l.t}, "element": alg_to_json(&e)}))
        .collect();
    Ok(Value::Array(list))
}

pub fn slf_basis_json(uq: &Uq) -> Result<Value> {
    let basis = slf_functionals(uq)?;
    let list: Vec<Value> = basis.named().into_iter().map(|(name, f)| json!({"name": name, "functional": functional_to_json(f)})).collect();
    Ok(json!({"p": uq.p(), "functionals": list}))
}

/// The coefficients of the twisted integral, solved and checked against the
/// closed forms. `alphas` interleaves `α^+_s, α^-_s` for `s = 1..p-1`.
pub fn coefficients_json(uq: &Uq) -> Result<Value> {
    let solved = decompose_twisted_integral(uq, &slf_functionals(uq)?)?;
    let closed = closed_form_coeffs(uq)?;
    let alphas: Vec<&CycNum> = solved.alpha_plus.iter().zip(&solved.alpha_minus).flat_map(|(a, b)| [a, b]).collect();
    let strings = |xs: &[&CycNum]| xs.iter().map(|c| Value::String(coefficient_string(c))).collect::<Vec<_>>();
    let complex = |xs: &[&CycNum]| xs.iter().map(|c| complex_json(c)).collect::<Vec<_>>();
    let betas: Vec<&CycNum> = solved.beta.iter().collect();
    Ok(json!({
        "p": uq.p(),
        "alpha0": coefficient_string(&solved.alpha0),
        "alphap": coefficient_string(&solved.alphap),
        "alphas": strings(&alphas),
        "betas": strings(&betas),
        "complex": {
            "alpha0": complex_json(&solved.alpha0),
            "alphap": complex_json(&solved.alphap),
            "alphas": complex(&alphas),
            "betas": complex(&betas),
        },
        "matches_closed_forms": solved == closed,
    }))
}

/// The multiplication table of `Q_s` as a matrix of cells.
pub fn table_json(uq: &Uq, s: u32) -> Result<Value> {
    let cells = block_table(uq, s)?;
    let n = (cells.len() as f64).sqrt().round() as usize;
    let labels: Vec<String> = cells.iter().take(n).map(|c| c.col.to_string()).collect();
    let rows: Vec<Value> = cells
        .chunks(n)
        .map(|row| {
            Value::Array(row.iter().map(|c| json!({"row": c.row.to_string(), "col": c.col.to_string(), "result": c.result})).collect())
        })
        .collect();
    Ok(json!({"p": uq.p(), "s": s, "labels": labels, "cells": rows}))
}
