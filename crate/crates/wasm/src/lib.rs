//! Browser bindings for the static demo page in `www/`.
//!
//! Three operations are exposed: generating a gate from an orthogonal basis
//! (with its parameters and triangle layout), recovering a domain-3 basis from
//! parameters, and evaluating a grid with both the engine and the oracle.
//! Every function takes and returns JSON strings.

use holant_core::basis::OrthoBasis;
use holant_core::engine::{holant_eval_report, EvalOptions};
use holant_core::io::{GeneratorSpec, GridDocument, ParamsDocument, SignatureSpec};
use holant_core::oracle::holant_bruteforce_capped;
use holant_core::random::params_for_basis;
use holant_core::signature::counts_in_order;
use holant_core::{fib3, relative_error, Complex, FibParams, FibParamsD3, Tolerance};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const ORACLE_CAP: u64 = 2_000_000;

fn pair(c: Complex) -> [f64; 2] {
    [c.re, c.im]
}

/// Random orthogonal basis as a generator spec.
pub fn random_basis_json(domain: usize, seed: u64) -> Result<String, String> {
    if !(3..=4).contains(&domain) {
        return Err(format!("domain must be 3 or 4, got {domain}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = OrthoBasis::random(&mut rng, domain, false);
    let spec = GeneratorSpec {
        weights: basis.weights().iter().copied().map(pair).collect(),
        vectors: (0..domain).map(|k| basis.vector(k).into_iter().map(pair).collect()).collect(),
    };
    serde_json::to_string(&spec).map_err(|e| e.to_string())
}

/// Signature of the given arity spanned by a basis, with its entries keyed
/// by count vector and the shared gate parameters.
pub fn gate_from_basis_json(basis: &str, arity: usize) -> Result<String, String> {
    let spec: GeneratorSpec = serde_json::from_str(basis).map_err(|e| e.to_string())?;
    let domain = spec.vectors.len();
    let tol = Tolerance::default();
    let sig = SignatureSpec {
        name: "g".into(),
        arity,
        values: None,
        generator: Some(spec.clone()),
    }
    .expand(domain, tol)
    .map_err(|e| e.to_string())?;
    let weights = spec.weights.iter().map(|p| Complex::new(p[0], p[1])).collect();
    let vectors: Vec<Vec<Complex>> = spec
        .vectors
        .iter()
        .map(|v| v.iter().map(|p| Complex::new(p[0], p[1])).collect())
        .collect();
    let basis = OrthoBasis::from_full_vectors(weights, &vectors, tol).map_err(|e| e.to_string())?;
    let params = params_for_basis(&basis, tol).map_err(|e| e.to_string())?;
    let verified = params.verify_gate(&sig, tol).map_err(|e| e.to_string())?;
    let entries: Vec<Value> = counts_in_order(domain, arity)
        .zip(sig.values())
        .map(|(m, v)| json!({"counts": m, "value": pair(*v)}))
        .collect();
    Ok(json!({
        "domain": domain,
        "arity": arity,
        "entries": entries,
        "params": serde_json::to_value(ParamsDocument::from_params(&params)).map_err(|e| e.to_string())?,
        "verified": verified,
    })
    .to_string())
}

/// Roots `{a, c, e}` and, when determined, the basis vectors for `(s, x, y, t)`.
pub fn recover_basis_json(s: f64, x: f64, y: f64, t: f64) -> Result<String, String> {
    let p = FibParamsD3::from_reals(s, x, y, t);
    let rep = fib3::recover_basis(&p, Tolerance::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "roots": rep.roots.map(pair),
        "vectors": rep.vectors.map(|vs| vs.map(|v| v.map(pair))),
        "degeneracy": rep.degeneracy.map(|d| d.message),
    })
    .to_string())
}

/// Engine and (when small enough) oracle values for a grid document.
pub fn evaluate_grid_json(grid: &str, params: Option<&str>) -> Result<String, String> {
    let tol = Tolerance::default();
    let doc = GridDocument::from_json(grid).map_err(|e| e.to_string())?;
    let grid = doc.to_grid(tol).map_err(|e| e.to_string())?;
    let params = match params {
        Some(text) if !text.trim().is_empty() => ParamsDocument::from_json(text)
            .and_then(|d| d.to_params())
            .map_err(|e| e.to_string())?,
        _ => {
            let sigs: Vec<_> = grid.signatures().iter().map(|s| s.signature.clone()).collect();
            FibParams::fit(grid.domain(), &sigs, tol).map_err(|e| e.to_string())?
        }
    };
    let opts = EvalOptions {
        strict: true,
        ..Default::default()
    };
    let rep = holant_eval_report(&grid, &params, &opts).map_err(|e| e.to_string())?;
    let oracle = holant_bruteforce_capped(&grid, ORACLE_CAP).ok();
    Ok(json!({
        "engine": pair(rep.value),
        "oracle": oracle.map(pair),
        "relative_error": oracle.map(|o| relative_error(rep.value, o)),
        "merges": rep.merges,
        "max_arity": rep.max_arity,
        "merge_violations": rep.violations.len(),
        "params": serde_json::to_value(ParamsDocument::from_params(&params)).map_err(|e| e.to_string())?,
    })
    .to_string())
}

#[wasm_bindgen(js_name = randomBasis)]
pub fn random_basis(domain: usize, seed: u32) -> Result<String, JsError> {
    random_basis_json(domain, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = gateFromBasis)]
pub fn gate_from_basis(basis: &str, arity: usize) -> Result<String, JsError> {
    gate_from_basis_json(basis, arity).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = recoverBasis)]
pub fn recover_basis(s: f64, x: f64, y: f64, t: f64) -> Result<String, JsError> {
    recover_basis_json(s, x, y, t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = evaluateGrid)]
pub fn evaluate_grid(grid: &str, params: Option<String>) -> Result<String, JsError> {
    evaluate_grid_json(grid, params.as_deref()).map_err(|e| JsError::new(&e))
}
