//! Browser bindings for the interactive demo page. All functions take and
//! return JSON strings; the page never needs framework glue.

use wasm_bindgen::prelude::wasm_bindgen;

mod ops;

#[wasm_bindgen]
pub fn templates_json() -> String {
    ops::templates_json()
}

#[wasm_bindgen]
pub fn units_json() -> String {
    ops::units_json()
}

/// Validate a Turtle document against a built-in template, anchored at a
/// focus IRI/CURIE, and run the instance checks.
#[wasm_bindgen]
pub fn validate_turtle(turtle: &str, template: &str, focus: &str) -> String {
    ops::validate_turtle(turtle, template, focus)
}

/// Run stasis/change detection over a sensor CSV and return samples,
/// segments, events, and the emitted Turtle.
#[wasm_bindgen]
pub fn analyze_series(
    csv: &str,
    range_lo: &str,
    range_hi: &str,
    unit: &str,
    epsilon: &str,
    min_samples: u32,
    policy: &str,
) -> String {
    ops::analyze_series(csv, range_lo, range_hi, unit, epsilon, min_samples, policy)
}

/// Convert a value between two registered units.
#[wasm_bindgen]
pub fn convert_value(value: &str, from: &str, to: &str) -> String {
    ops::convert_value(value, from, to)
}

/// Sample inputs for preloading the page.
#[wasm_bindgen]
pub fn sample_sensor_csv() -> String {
    ops::SAMPLE_SENSOR_CSV.to_string()
}

#[wasm_bindgen]
pub fn sample_turtle() -> String {
    ops::sample_turtle()
}
