//! Browser bindings: analyze a family, transform a point, vote over a box.
//!
//! Each entry point takes family-file text and returns a JSON string. The
//! plain functions are usable natively; the `wasm_bindgen` wrappers turn
//! errors into JavaScript exceptions.

use hough_core::detector::{collect_points, perturb, run_detector};
use hough_core::family_file::{parse_family_file, parse_points_csv, FamilyFile};
use hough_core::field::parse_rational;
use hough_core::report::{ideal_json, peak_json, report_json};
use hough_core::{analyze, hough_transform_point, AnalysisOptions, InverterPolicy, Rational};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn load(text: &str) -> Result<FamilyFile, String> {
    parse_family_file(text).map_err(|e| e.to_string())
}

fn parse_point(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',').map(|c| parse_rational(c).ok_or_else(|| format!("malformed coordinate `{}`", c.trim()))).collect()
}

/// `inverter` is `"when-needed"`, `"always"` or `"never"`.
pub fn analyze_json(text: &str, inverter: &str) -> Result<String, String> {
    let inverter = match inverter {
        "" | "when-needed" => InverterPolicy::WhenNeeded,
        "always" => InverterPolicy::Always,
        "never" => InverterPolicy::Never,
        other => return Err(format!("unknown inverter policy `{other}`")),
    };
    let f = load(text)?;
    let r = analyze(&f.family, &AnalysisOptions { inverter, always_saturate: false }).map_err(|e| e.to_string())?;
    let mut v = report_json(&r);
    v["exit_code"] = json!(r.verdict.exit_code());
    Ok(v.to_string())
}

/// `point` holds comma-separated coordinates.
pub fn transform_json(text: &str, point: &str) -> Result<String, String> {
    let f = load(text)?;
    let ideal = hough_transform_point(&f.family, &parse_point(point)?).map_err(|e| e.to_string())?;
    Ok(ideal_json(&ideal).to_string())
}

/// Votes for the family's `detect` section. `extra_csv` adds points;
/// `csv` lines of the file are ignored since there is no file system.
/// An empty `noise` means no perturbation; `resolution = 0` keeps the file's.
pub fn detect_json(text: &str, extra_csv: &str, noise: &str, seed: u64, resolution: usize) -> Result<String, String> {
    let f = load(text)?;
    let mut cfg = f.detect.clone().ok_or("the family has no `detect` section")?;
    cfg.csv.clear();
    if resolution > 0 {
        cfg.resolution = resolution;
    }
    let no_files = |p: &str| -> Result<Vec<Vec<Rational>>, String> { Err(format!("cannot read `{p}` here")) };
    let mut points = collect_points(&f.family, &cfg, &no_files).map_err(|e| e.to_string())?;
    if !extra_csv.trim().is_empty() {
        points.extend(parse_points_csv(extra_csv, f.family.nvars()).map_err(|e| e.to_string())?);
    }
    if points.is_empty() {
        return Err("no data points".into());
    }
    if !noise.trim().is_empty() {
        let sigma = parse_rational(noise).ok_or_else(|| format!("malformed noise level `{noise}`"))?;
        points = perturb(&points, &sigma, seed);
    }
    let (acc, peak) = run_detector(&f.family, &points, &cfg).map_err(|e| e.to_string())?;
    let mut v = peak_json(&acc, &peak, points.len());
    v["params"] = json!(f.family.params());
    v["counts"] = json!(acc.counts());
    v["flagged"] = json!(acc.flagged());
    v["data"] = json!(points
        .iter()
        .map(|p| p.iter().map(hough_core::report::rational_to_f64).collect::<Vec<_>>())
        .collect::<Vec<_>>());
    Ok(v.to_string())
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(text: &str, inverter: &str) -> Result<String, JsError> {
    analyze_json(text, inverter).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = transform)]
pub fn transform_js(text: &str, point: &str) -> Result<String, JsError> {
    transform_json(text, point).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = detect)]
pub fn detect_js(text: &str, extra_csv: &str, noise: &str, seed: u32, resolution: u32) -> Result<String, JsError> {
    detect_json(text, extra_csv, noise, seed.into(), resolution as usize).map_err(|e| JsError::new(&e))
}
