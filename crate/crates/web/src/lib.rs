//! Browser bindings for the iterate census. Each exported function returns a
//! JSON string; the page in `www/` draws it.

use iterate_census::census::{incidence_matrix, run_census, CensusConfig, CensusMode};
use iterate_census::{asymptotic_row, build_tableau, term_comparison, TableauKind};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest order the page will brute-force in the browser.
pub const BROWSER_BRUTE_CAP: usize = 7;
/// Largest order for the closed-form census and the ratio curve.
pub const BROWSER_CLOSED_CAP: usize = 600;

fn err(e: impl ToString) -> String {
    e.to_string()
}

pub fn census_report(n: usize) -> Result<String, String> {
    let config = CensusConfig { brute_cap: BROWSER_BRUTE_CAP, closed_cap: BROWSER_CLOSED_CAP, ..Default::default() };
    let mode = if n <= BROWSER_BRUTE_CAP { CensusMode::Both } else { CensusMode::Closed };
    let report = run_census(n, mode, &config).map_err(err)?;
    let mut value = serde_json::to_value(&report).map_err(err)?;
    value["irreducible_A"] = json!(report.irreducible_a().to_string());
    value["irreducible_AB"] = json!(report.irreducible_ab().to_string());
    serde_json::to_string(&value).map_err(err)
}

pub fn incidence(n: usize, kind: &str) -> Result<String, String> {
    let kind: TableauKind = kind.parse().map_err(err)?;
    if kind == TableauKind::B {
        return Err("incidence is shown for A and AB only".into());
    }
    let t = build_tableau(kind, n, n.max(1)).map_err(err)?;
    let matrix = incidence_matrix(&t).map_err(err)?;
    let words: Vec<String> = t.universe().iter().map(|w| w.to_word()).collect();
    let multiplicities = t.multiplicities();
    serde_json::to_string(&json!({
        "n": n,
        "kind": kind,
        "iterates": words,
        "multiplicity": multiplicities,
        "matrix": matrix,
    }))
    .map_err(err)
}

pub fn ratio_curve(n_max: usize, step: usize) -> Result<String, String> {
    if !(2..=BROWSER_CLOSED_CAP).contains(&n_max) {
        return Err(format!("n_max must lie in 2..={BROWSER_CLOSED_CAP}"));
    }
    let step = step.max(1);
    let rows = (2..=n_max)
        .step_by(step)
        .map(|n| asymptotic_row(n, BROWSER_CLOSED_CAP))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let k_max = (n_max / 2).clamp(1, 8);
    let terms = term_comparison(n_max, k_max).map_err(err)?;
    serde_json::to_string(&json!({ "rows": rows, "terms": terms })).map_err(err)
}

/// Census counts for order `n` as JSON; brute force and closed forms when small.
#[wasm_bindgen(js_name = censusReport)]
pub fn census_report_js(n: usize) -> Result<String, JsValue> {
    census_report(n).map_err(|e| JsValue::from_str(&e))
}

/// Incidence matrix of `A_n` or `A_n ⊕ B_n` (kind `"A"` or `"AB"`) as JSON.
#[wasm_bindgen(js_name = incidenceMatrix)]
pub fn incidence_js(n: usize, kind: &str) -> Result<String, JsValue> {
    incidence(n, kind).map_err(|e| JsValue::from_str(&e))
}

/// Reducible and irreducible fractions against the asymptotic estimate for `2..=n_max`.
#[wasm_bindgen(js_name = ratioCurve)]
pub fn ratio_curve_js(n_max: usize, step: usize) -> Result<String, JsValue> {
    ratio_curve(n_max, step).map_err(|e| JsValue::from_str(&e))
}
