//! Browser bindings for the static demo page in `www/`. Every export takes a
//! spec as TOML text and returns JSON; the plain-Rust functions in `api` carry
//! the logic so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api {
    use bfree_core::analysis::{analyze, AnalyzeOptions};
    use bfree_core::bset::eta_segment;
    use bfree_core::complexity::{rho_of_bits, trend_rows, TrendRow};
    use bfree_core::specfile::{SpecFile, SpecKind, BUNDLED};
    use bfree_core::toeplitz::direct_eta_segment;
    use serde::Serialize;

    /// Demo-side caps keep the page responsive.
    pub const MAX_WINDOW: i64 = 200_000;
    pub const MAX_LEVELS: usize = 5;
    pub const MAX_BLOCK: usize = 64;

    fn json<T: Serialize>(v: &T) -> Result<String, String> {
        serde_json::to_string(v).map_err(|e| e.to_string())
    }

    fn spec(toml: &str) -> Result<SpecFile, String> {
        SpecFile::parse(toml).map_err(|e| e.to_string())
    }

    pub fn bundled_names() -> Result<String, String> {
        json(&BUNDLED.iter().map(|(n, _)| *n).collect::<Vec<_>>())
    }

    pub fn bundled_spec(name: &str) -> Result<String, String> {
        BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| t.to_string()).ok_or_else(|| format!("no bundled spec {name:?}"))
    }

    #[derive(Serialize)]
    struct Window {
        start: i64,
        bits: String,
        unresolved: Vec<i64>,
    }

    /// η on [lo, hi] as a 0/1 string.
    pub fn eta_window(toml: &str, lo: i64, hi: i64) -> Result<String, String> {
        if hi < lo || hi - lo >= MAX_WINDOW {
            return Err(format!("range must be nonempty and shorter than {MAX_WINDOW}"));
        }
        let (bits, unresolved) = match spec(toml)?.kind {
            SpecKind::BFree(s) => (eta_segment(&s, lo, hi).map_err(|e| e.to_string())?.to_string(), Vec::new()),
            SpecKind::Toeplitz(t) => {
                let r = direct_eta_segment(&t, lo, hi, t.max_level()).map_err(|e| e.to_string())?;
                (r.window.to_string(), r.unresolved)
            }
        };
        json(&Window { start: lo, bits, unresolved })
    }

    /// Per-level holes, essential holes, periods, conditions and the centralizer report.
    pub fn holes_report(toml: &str, n_max: usize) -> Result<String, String> {
        if n_max == 0 || n_max > MAX_LEVELS {
            return Err(format!("levels must be in 1..={MAX_LEVELS}"));
        }
        let opts = AnalyzeOptions { n_max, ..AnalyzeOptions::default() };
        json(&analyze(&spec(toml)?, &opts).map_err(|e| e.to_string())?)
    }

    /// ρ(n) for n = 1..=n_max counted on [−l, l + n_max − 1].
    pub fn rho_curve(toml: &str, n_max: usize, l: i64) -> Result<String, String> {
        if n_max == 0 || n_max > MAX_BLOCK || l < 1 || 2 * l >= MAX_WINDOW {
            return Err(format!("need 1 ≤ n ≤ {MAX_BLOCK} and 1 ≤ 2L < {MAX_WINDOW}"));
        }
        let hi = l + n_max as i64 - 1;
        let bits: Vec<bool> = match spec(toml)?.kind {
            SpecKind::BFree(s) => eta_segment(&s, -l, hi).map_err(|e| e.to_string())?.bits,
            SpecKind::Toeplitz(t) => {
                let r = direct_eta_segment(&t, -l, hi, t.max_level()).map_err(|e| e.to_string())?;
                if !r.unresolved.is_empty() {
                    return Err(format!("{} positions are not resolved by the spec's levels", r.unresolved.len()));
                }
                r.window.bits
            }
        };
        let rows: Vec<TrendRow> = trend_rows((1..=n_max).map(|n| (n, rho_of_bits(&bits, n))));
        json(&rows)
    }
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = bundledNames)]
pub fn bundled_names() -> Result<String, JsError> {
    js(api::bundled_names())
}

#[wasm_bindgen(js_name = bundledSpec)]
pub fn bundled_spec(name: &str) -> Result<String, JsError> {
    js(api::bundled_spec(name))
}

#[wasm_bindgen(js_name = etaWindow)]
pub fn eta_window(toml: &str, lo: i32, hi: i32) -> Result<String, JsError> {
    js(api::eta_window(toml, lo.into(), hi.into()))
}

#[wasm_bindgen(js_name = holesReport)]
pub fn holes_report(toml: &str, n_max: u32) -> Result<String, JsError> {
    js(api::holes_report(toml, n_max as usize))
}

#[wasm_bindgen(js_name = rhoCurve)]
pub fn rho_curve(toml: &str, n_max: u32, l: i32) -> Result<String, JsError> {
    js(api::rho_curve(toml, n_max as usize, l.into()))
}
