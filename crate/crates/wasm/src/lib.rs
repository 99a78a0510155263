//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string; errors come back as a thrown string.

use gbf::monotone::{class_suite, CMCheckSpec};
use gbf::quadrature::QuadratureSpec;
use gbf::registry::{evaluate, kernel_table, FunctionName};
use gbf::{OmegaParams, ParamPair};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_POINTS: usize = 20_000;

fn points(n: usize) -> Result<usize, String> {
    if (2..=MAX_POINTS).contains(&n) {
        Ok(n)
    } else {
        Err(format!("point count must be in 2..={MAX_POINTS}"))
    }
}

/// {"s": [...], "xi": [...], "eta": [...]} on [0, s_max] with every kink.
pub fn kernel_curves_json(a: f64, b: f64, s_max: f64, n: usize) -> Result<String, String> {
    let params = OmegaParams::new(a, b).map_err(|e| e.to_string())?;
    let rows = kernel_table(&params, s_max, points(n)?).map_err(|e| e.to_string())?;
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
    Ok(json!({ "s": col(0), "xi": col(1), "eta": col(2) }).to_string())
}

/// {"x": [...], "y": [...]} for a registry function on a uniform grid of
/// [lo, hi]. Points where the function is undefined are dropped.
pub fn family_curve_json(
    name: &str,
    a: f64,
    b: f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<String, String> {
    let name: FunctionName = name.parse().map_err(|e: gbf::Error| e.to_string())?;
    let pair = ParamPair::new(a, b).map_err(|e| e.to_string())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err("need a finite range with lo < hi".into());
    }
    let n = points(n)?;
    let spec = QuadratureSpec::default();
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        if let Ok(y) = evaluate(name, &pair, &[x], &spec) {
            xs.push(x);
            ys.push(y[0]);
        }
    }
    if xs.is_empty() {
        return Err(format!("{name} is undefined on [{lo}, {hi}] for ({a}, {b})"));
    }
    Ok(json!({ "x": xs, "y": ys }).to_string())
}

/// The class suite for (a, b) as a list of {label, class, passed,
/// worst_violation, witness}.
pub fn class_checks_json(a: f64, b: f64) -> Result<String, String> {
    let pair = ParamPair::new(a, b).map_err(|e| e.to_string())?;
    let reports = class_suite(&pair, &CMCheckSpec::standard()).map_err(|e| e.to_string())?;
    let rows: Vec<_> = reports
        .iter()
        .map(|r| {
            json!({
                "label": r.label,
                "class": r.class_id,
                "order": r.order,
                "passed": r.passed,
                "worst_violation": r.worst_violation.is_finite().then_some(r.worst_violation),
                "witness": r.witness,
            })
        })
        .collect();
    Ok(serde_json::Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn kernel_curves(a: f64, b: f64, s_max: f64, n: usize) -> Result<String, JsValue> {
    kernel_curves_json(a, b, s_max, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn family_curve(name: &str, a: f64, b: f64, lo: f64, hi: f64, n: usize) -> Result<String, JsValue> {
    family_curve_json(name, a, b, lo, hi, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn class_checks(a: f64, b: f64) -> Result<String, JsValue> {
    class_checks_json(a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn function_names() -> String {
    let names: Vec<&str> = FunctionName::ALL.iter().map(|f| f.name()).collect();
    json!(names).to_string()
}
