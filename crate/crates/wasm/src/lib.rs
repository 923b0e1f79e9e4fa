//! Browser bindings: the bound derivations and the testbed analyzer as
//! JSON-string endpoints for the static demo page in `www/`.
//!
//! Build with `wasm-pack build --target web --out-dir www/pkg` (or
//! `cargo build --target wasm32-unknown-unknown` plus `wasm-bindgen`), then
//! serve `www/`.
//!
//! The `*_impl` functions carry the logic and are plain `Result<String,
//! String>` so they run (and are tested) on any target; the exported
//! wrappers only translate errors into `JsValue`.

use fistab::bounds::{preset_pipeline, Preset};
use fistab::conf::build_conf_module;
use fistab::report::{analyze_module, bounds_report_json, config_report, AnalyzeOptions};
use wasm_bindgen::prelude::*;

fn stringify(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn bounds_report_impl(preset: &str, k: i64, lambda: i64) -> Result<String, String> {
    let preset: Preset = preset.parse().map_err(stringify)?;
    let report = preset_pipeline(preset, k, lambda).map_err(stringify)?;
    Ok(bounds_report_json(&report).render())
}

pub fn config_bounds_impl(dim: u32, orientable: bool, q: i64) -> Result<String, String> {
    if q < 0 {
        return Err("q must be nonnegative".into());
    }
    let report = config_report(dim, orientable, q).map_err(stringify)?;
    Ok(report.to_json().render())
}

pub fn analyze_testbed_impl(k: u32, max_level: u32) -> Result<String, String> {
    if k > 3 {
        return Err("the demo caps the cohomological degree at 3".into());
    }
    if max_level > 8 {
        return Err("the demo caps the truncation at level 8".into());
    }
    let module = build_conf_module(k, max_level).map_err(stringify)?;
    let report = analyze_module(&module, AnalyzeOptions::default()).map_err(stringify)?;
    Ok(report.to_json().render())
}

/// Preset bound table plus derivation trace, as the CLI's JSON report.
#[wasm_bindgen]
pub fn bounds_report(preset: &str, k: i64, lambda: i64) -> Result<String, JsValue> {
    bounds_report_impl(preset, k, lambda).map_err(|e| JsValue::from_str(&e))
}

/// The four configuration-space bounds for a `dim`-manifold at degree `q`.
#[wasm_bindgen]
pub fn config_bounds(dim: u32, orientable: bool, q: i64) -> Result<String, JsValue> {
    config_bounds_impl(dim, orientable, q).map_err(|e| JsValue::from_str(&e))
}

/// Builds the planar configuration-space cohomology module in degree `k` up
/// to `max_level` and runs the full analysis. Sizes are limited to keep the
/// page responsive.
#[wasm_bindgen]
pub fn analyze_testbed(k: u32, max_level: u32) -> Result<String, JsValue> {
    analyze_testbed_impl(k, max_level).map_err(|e| JsValue::from_str(&e))
}
