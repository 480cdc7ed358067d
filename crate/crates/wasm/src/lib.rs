//! Browser bindings. Every export takes and returns strings; results are
//! JSON documents. The plain functions in [`api`] carry the logic so they
//! can be tested without a JavaScript host.

use wasm_bindgen::prelude::*;

pub mod api;

/// The `τ(n, s)` table as JSON: `{"max_n", "rows": [{"n", "tau", "alpha"}]}`.
#[wasm_bindgen]
pub fn tau_table(max_n: u32) -> Result<String, JsError> {
    api::tau_table(max_n as usize).map_err(|e| JsError::new(&e))
}

/// Layout, SD labels, canonical forms and class counts of an expression.
#[wasm_bindgen]
pub fn inspect(expr: &str) -> Result<String, JsError> {
    api::inspect(expr).map_err(|e| JsError::new(&e))
}

/// Evaluates every class of a family over the bound values.
#[wasm_bindgen]
pub fn survey(binding: &str, selector: &str, precision: &str) -> Result<String, JsError> {
    api::survey(binding, selector, precision).map_err(|e| JsError::new(&e))
}
