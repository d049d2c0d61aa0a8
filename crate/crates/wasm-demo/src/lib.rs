//! Browser bindings: three interactive operations over the core library,
//! each returning canonical JSON for the demo page to render. Errors come
//! back as `{"error": "..."}` instead of thrown exceptions so the page can
//! show them inline.

use wasm_bindgen::prelude::wasm_bindgen;

use eigenone::canonical_json;
use eigenone::classify::{verify, Bounds, TheoremId};
use eigenone::elements::SemisimpleElement;
use eigenone::identities::run_suite;
use eigenone::spectra::{criterion_report, spectrum_report, SpectrumError, Weight};

fn error_json(msg: impl std::fmt::Display) -> String {
    canonical_json(&serde_json::json!({ "error": msg.to_string() }))
}

/// Eigenvalue set of one element in one representation. For the top
/// symplectic weight in characteristic 2 the si-delta criterion record is
/// returned instead of a spectrum.
#[wasm_bindgen]
pub fn spectrum_json(element: &str, weight: &str, characteristic: u32) -> String {
    let g: SemisimpleElement = match element.parse() {
        Ok(g) => g,
        Err(e) => return error_json(e),
    };
    let w = match Weight::parse(weight, g.group()) {
        Ok(w) => w,
        Err(e) => return error_json(e),
    };
    match spectrum_report(&g, &w, characteristic) {
        Ok(r) => canonical_json(&r),
        Err(SpectrumError::CharTwoTopWeight) => match criterion_report(&g, &w) {
            Ok(r) => canonical_json(&r),
            Err(e) => error_json(e),
        },
        Err(e) => error_json(e),
    }
}

/// The full identity suite for all odd moduli up to `max_m`.
#[wasm_bindgen]
pub fn lemmas_json(max_m: u32) -> String {
    match run_suite(u64::from(max_m)) {
        Ok(r) => canonical_json(&r),
        Err(e) => error_json(e),
    }
}

/// A theorem verification over the given window. Single-threaded; the demo
/// page keeps the default windows, which finish in well under a second.
#[wasm_bindgen]
pub fn classify_json(theorem: &str, rank_lo: u32, rank_hi: u32, max_order: u32) -> String {
    let theorem = match TheoremId::parse(theorem) {
        Ok(t) => t,
        Err(e) => return error_json(e),
    };
    let bounds = Bounds {
        rank_lo,
        rank_hi,
        max_order: u64::from(max_order),
        characteristic: theorem.default_characteristic(),
    };
    match verify(theorem, bounds, 1) {
        Ok(r) => canonical_json(&r),
        Err(e) => error_json(e),
    }
}

/// Default rank window and characteristic for a theorem id, for the page's
/// form widgets.
#[wasm_bindgen]
pub fn theorem_defaults_json(theorem: &str) -> String {
    match TheoremId::parse(theorem) {
        Ok(t) => canonical_json(&serde_json::json!({
            "characteristic": t.default_characteristic(),
            "rank_hi": t.default_ranks().1,
            "rank_lo": t.default_ranks().0,
            "theorem": t.as_str(),
        })),
        Err(e) => error_json(e),
    }
}
