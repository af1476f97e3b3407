//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<String, String>` so
//! the logic is testable on the host.

use wasm_bindgen::prelude::*;

use tightsrg::graphs::graph6::{parse_graph6, write_graph6};
use tightsrg::graphs::{
    coclique_intersection_stats, enumerate_delsarte_cocliques, kneser2, m22_graph, petersen,
    tight_info,
};
use tightsrg::report::{analyze, scan_rows, to_csv, to_json_value};
use tightsrg::srg::params_from_eigenvalues;

/// Largest `v` the demo scans in one call.
pub const SCAN_LIMIT: i64 = 20_000;

pub fn analyze_json(e_plus: i64, e_minus: i64) -> Result<String, String> {
    let t = params_from_eigenvalues(e_plus, e_minus).map_err(|e| e.to_string())?;
    let a = analyze(&t, &tightsrg::nonexistence::builtin_facts());
    Ok(serde_json::json!({ "text": a.to_text(), "report": to_json_value(&a) }).to_string())
}

pub fn scan_csv(min_v: i64, max_v: i64, min_e_plus: i64) -> Result<String, String> {
    if min_v > max_v {
        return Err(format!("min v {min_v} exceeds max v {max_v}"));
    }
    if max_v > SCAN_LIMIT {
        return Err(format!("max v is capped at {SCAN_LIMIT} in the browser"));
    }
    if min_e_plus < 1 {
        return Err("min e+ must be at least 1".into());
    }
    let rows = scan_rows(
        min_v,
        max_v,
        min_e_plus,
        &tightsrg::nonexistence::builtin_facts(),
    );
    Ok(to_csv(&rows))
}

pub fn cocliques_json(graph6: &str) -> Result<String, String> {
    let g = parse_graph6(graph6).map_err(|e| format!("graph6: {e}"))?;
    let info = tight_info(&g).map_err(|e| e.to_string())?;
    let all = enumerate_delsarte_cocliques(&g).map_err(|e| e.to_string())?;
    let stats = coclique_intersection_stats(&all);
    let lists: Vec<&[usize]> = all.iter().map(|c| c.vertices.as_slice()).collect();
    Ok(serde_json::json!({
        "params": info.params.to_string(),
        "bound": info.spectrum.m_minus + 1,
        "count": all.len(),
        "cocliques": lists,
        "pairwise": stats.pairwise,
        "triple": stats.triple,
    })
    .to_string())
}

pub fn construct_graph6(name: &str) -> Result<String, String> {
    let g = match name {
        "petersen" => petersen(),
        "m22" => m22_graph().map_err(|e| e.to_string())?,
        other => {
            let n = other
                .strip_prefix("kneser2-")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| format!("unknown graph {other:?}"))?;
            kneser2(n).map_err(|e| e.to_string())?
        }
    };
    Ok(write_graph6(&g))
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Parameters, designs and coclique bound for one eigenvalue pair, as JSON.
#[wasm_bindgen]
pub fn analyze_pair(e_plus: i32, e_minus: i32) -> Result<String, JsError> {
    js(analyze_json(e_plus.into(), e_minus.into()))
}

/// Tight parameter sets with `min_v ≤ v ≤ max_v` as CSV.
#[wasm_bindgen]
pub fn scan(min_v: i32, max_v: i32, min_e_plus: i32) -> Result<String, JsError> {
    js(scan_csv(min_v.into(), max_v.into(), min_e_plus.into()))
}

/// All Delsarte cocliques of a tight graph given in graph6, as JSON.
#[wasm_bindgen]
pub fn cocliques(graph6: &str) -> Result<String, JsError> {
    js(cocliques_json(graph6))
}

/// graph6 of `petersen`, `m22` or `kneser2-N`.
#[wasm_bindgen]
pub fn construct(name: &str) -> Result<String, JsError> {
    js(construct_graph6(name))
}
