//! WebAssembly bindings behind `www/index.html`. Every export returns a JSON
//! string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use polyspaces::confhomology::{cohomology_conf, homology_conf};
use polyspaces::poly::Polynomial;
use polyspaces::spaces::SpaceSpec;
use polyspaces::spectral::{e1_page, verify_stability};

/// Largest p offered by the page; keeps each click well under a second.
pub const DEMO_P_MAX: usize = 8;

pub fn membership_json(poly: &str, n: usize) -> Result<String, String> {
    let f: Polynomial = poly.parse().map_err(|e| format!("{e}"))?;
    let d = f.degree().filter(|&d| d > 0).ok_or("enter a polynomial of positive degree")?;
    let spec = SpaceSpec::symmetric_product(d, n).map_err(|e| e.to_string())?;
    let verdict = spec.contains(&f).map_err(|e| e.to_string())?;
    Ok(json!({ "polynomial": f, "d": d, "n": n, "verdict": verdict }).to_string())
}

pub fn conf_homology_json(p: usize) -> Result<String, String> {
    if p > DEMO_P_MAX {
        return Err(format!("p is limited to {DEMO_P_MAX} here"));
    }
    let show = |gs: Vec<_>| gs.iter().map(ToString::to_string).collect::<Vec<String>>();
    let h = homology_conf(p).map_err(|e| e.to_string())?;
    let c = cohomology_conf(p).map_err(|e| e.to_string())?;
    Ok(json!({ "p": p, "homology": show(h), "cohomology": show(c) }).to_string())
}

pub fn e1_page_json(d: usize, n: usize) -> Result<String, String> {
    if n >= 2 && d / n > DEMO_P_MAX {
        return Err(format!("d/n is limited to {DEMO_P_MAX} here"));
    }
    let page = e1_page(d, n).map_err(|e| e.to_string())?;
    let report = verify_stability(d, n).map_err(|e| e.to_string())?;
    let entries: Vec<_> = page
        .entries()
        .map(|e| json!({ "p": e.p, "q": e.q, "total_degree": e.total_degree, "group": e.group.to_string() }))
        .collect();
    Ok(json!({ "d": d, "n": n, "entries": entries, "stability": report }).to_string())
}

#[wasm_bindgen(js_name = checkMembership)]
pub fn check_membership(poly: &str, n: usize) -> Result<String, JsError> {
    membership_json(poly, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = confHomology)]
pub fn conf_homology(p: usize) -> Result<String, JsError> {
    conf_homology_json(p).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = e1Page)]
pub fn e1_page_table(d: usize, n: usize) -> Result<String, JsError> {
    e1_page_json(d, n).map_err(|e| JsError::new(&e))
}
