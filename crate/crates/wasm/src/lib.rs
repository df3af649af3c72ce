//! Browser bindings. Each export takes plain strings and numbers and
//! returns a JSON string; the `*_json` functions are the same operations
//! without the JavaScript error wrapper.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use inertia_core::groupkit::GroupSpec;
use inertia_core::hondatate::{is_weil_number, tate_report, IntPoly, WeilNumber};
use inertia_core::inertial::is_pta_inertial;
use inertia_core::report::{AnalysisReport, ReportOptions};

/// Largest grid side accepted from the page.
pub const MAX_GRID: u64 = 64;

fn report(group_json: &str, p: u64) -> Result<AnalysisReport, String> {
    let spec: GroupSpec = serde_json::from_str(group_json).map_err(|e| format!("bad group description: {e}"))?;
    AnalysisReport::build(&spec, p, ReportOptions::default()).map_err(|e| e.to_string())
}

fn to_string(v: &Value) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Membership of every (t, a) with t ≤ t_max and a ≤ a_max; rows are indexed by a.
pub fn inertial_grid_json(group_json: &str, p: u64, t_max: u64, a_max: u64) -> Result<String, String> {
    if t_max > MAX_GRID || a_max > MAX_GRID {
        return Err(format!("grid is limited to {MAX_GRID} x {MAX_GRID}"));
    }
    let r = report(group_json, p)?;
    let profile = &r.profile;
    let grid: Vec<Vec<Value>> =
        (0..=a_max).map(|a| (0..=t_max).map(|t| json!(is_pta_inertial(profile, t, a))).collect()).collect();
    to_string(&json!({
        "label": r.label,
        "group_order": r.analysis.group_order,
        "p": p,
        "t_max": t_max,
        "a_max": a_max,
        "profile": profile,
        "grid": grid,
    }))
}

/// Weil test and, for Weil numbers, the endomorphism algebra data.
pub fn weil_report_json(poly: &str, p: u64, n: u32) -> Result<String, String> {
    let f = IntPoly::parse(poly).map_err(|e| e.to_string())?;
    let check = is_weil_number(&f, p, n).map_err(|e| e.to_string())?;
    let end = if check.weil {
        let w = WeilNumber::new(f.clone(), p, n).map_err(|e| e.to_string())?;
        Some(tate_report(&w))
    } else {
        None
    };
    to_string(&json!({
        "weil": check.weil,
        "poly": f.to_string(),
        "p": p,
        "n": n,
        "certificate": check.certificate,
        "end_algebra": end,
    }))
}

/// Simple factors of Q[G] with their classification, plus a text table.
pub fn decomposition_json(group_json: &str, p: u64) -> Result<String, String> {
    let r = report(group_json, p)?;
    let mut v = r.to_json();
    v["text"] = json!(r.to_table());
    to_string(&v)
}

#[wasm_bindgen(js_name = inertialGrid)]
pub fn inertial_grid(group_json: &str, p: u32, t_max: u32, a_max: u32) -> Result<String, JsError> {
    inertial_grid_json(group_json, p.into(), t_max.into(), a_max.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = weilReport)]
pub fn weil_report(poly: &str, p: u32, n: u32) -> Result<String, JsError> {
    weil_report_json(poly, p.into(), n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decomposition(group_json: &str, p: u32) -> Result<String, JsError> {
    decomposition_json(group_json, p.into()).map_err(|e| JsError::new(&e))
}
