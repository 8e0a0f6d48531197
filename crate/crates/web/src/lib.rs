//! Browser bindings. Every export returns a JSON string; failures come back as
//! `{"error": "..."}` so the page never has to catch.

use qsw_core::harness::{self, resolve_garrett_convention, EvalTarget, GarrettConvention, VerifyConfig};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_N: u32 = 40;
const MAX_Q: i64 = 200;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// `[{id, description}]` for the registry.
#[wasm_bindgen]
pub fn list_identities() -> String {
    let items: Vec<_> = harness::registry()
        .iter()
        .map(|s| json!({ "id": s.id, "description": s.description }))
        .collect();
    serde_json::Value::from(items).to_string()
}

/// One polynomial or truncated series as `{target, n, text, series}`.
#[wasm_bindgen]
pub fn eval_series(target: &str, n: u32, q_max: i32) -> String {
    let t: EvalTarget = match target.parse() {
        Ok(t) => t,
        Err(e) => return error(e),
    };
    if n > MAX_N {
        return error(format!("n is limited to {MAX_N} here"));
    }
    let q_max = i64::from(q_max);
    if !(0..=MAX_Q).contains(&q_max) {
        return error(format!("q_max must lie in 0..={MAX_Q}"));
    }
    match harness::eval(t, n, q_max) {
        Ok(s) => json!({
            "target": t.tag(),
            "n": n,
            "text": s.to_text(),
            "series": s.to_json_value(),
        })
        .to_string(),
        Err(e) => error(e),
    }
}

/// Runs one identity and returns its report. `convention` may be empty, in
/// which case it is measured first.
#[wasm_bindgen]
pub fn verify_identity(id: &str, q_max: i32, seed: u32, convention: &str) -> String {
    let convention = match convention {
        "" => None,
        c => match c.parse::<GarrettConvention>() {
            Ok(c) => Some(c),
            Err(e) => return error(e),
        },
    };
    let q_max = i64::from(q_max);
    if !(1..=MAX_Q).contains(&q_max) {
        return error(format!("q_max must lie in 1..={MAX_Q}"));
    }
    let cfg = VerifyConfig {
        q_max: Some(q_max),
        seed: u64::from(seed),
        convention,
        ..VerifyConfig::default()
    };
    let cfg = harness::with_resolved_convention(&cfg);
    match harness::verify(id, &cfg) {
        Ok(r) => r.to_json(),
        Err(e) => error(e),
    }
}

/// Per-`k` outcome of both sign conventions, plus the one selected.
#[wasm_bindgen]
pub fn garrett_table(k_max: u32, q_max: i32) -> String {
    if !(1..=12).contains(&k_max) {
        return error("k_max must lie in 1..=12");
    }
    let q_max = i64::from(q_max);
    if !(1..=MAX_Q).contains(&q_max) {
        return error(format!("q_max must lie in 1..={MAX_Q}"));
    }
    let res = resolve_garrett_convention(k_max, q_max);
    json!({
        "convention": res.convention.map(|c| c.tag()),
        "rows": res.rows,
    })
    .to_string()
}
