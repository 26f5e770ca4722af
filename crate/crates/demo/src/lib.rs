//! Browser bindings: three operations over JSON monoid and M-set specs,
//! each returning plain text.

use alexandrov::converse::mset_to_etale;
use alexandrov::group::Window;
use alexandrov::groupoid::{build_groupoid, induced_action, pattern_grid};
use alexandrov::io::{MSetFile, MonoidFile};
use alexandrov::monoid::validate_mset;
use alexandrov::render::{render_grid, render_hasse, RenderConfig};
use alexandrov::sample::Sampler;
use wasm_bindgen::prelude::*;

const MARGIN: u32 = 5;

fn err(e: alexandrov::Error) -> String {
    e.to_string()
}

/// DOT Hasse diagram of the étale poset of an M-set over `window`
/// (`A..B` or a radius).
pub fn etale_dot_text(monoid: &str, mset: &str, window: &str) -> Result<String, String> {
    let window = Window::parse(window).map_err(err)?;
    let extent = match window {
        Window::Ball(r) => r,
        Window::Range(lo, hi) => lo.unsigned_abs().max(hi.unsigned_abs()) as u32,
    };
    let m = MonoidFile::from_json(monoid).map_err(err)?.build(2 * extent.max(6), MARGIN).map_err(err)?;
    let set = MSetFile::from_json(mset).map_err(err)?.to_mset(m.descriptor()).map_err(err)?;
    let e = mset_to_etale(&m, &set, window, 1).map_err(err)?;
    Ok(render_hasse(e.total(), &RenderConfig::default()))
}

/// The `size`×`size` grid of related offsets, top row first.
pub fn pattern_text(monoid: &str, size: usize) -> Result<String, String> {
    if size == 0 || size > 40 {
        return Err("size must be between 1 and 40".into());
    }
    let m = MonoidFile::from_json(monoid).map_err(err)?.build(2 * size as u32 + 2, MARGIN).map_err(err)?;
    Ok(render_grid(&pattern_grid(&m, size).map_err(err)?))
}

/// Whether an N-set descends to the quotient, by the validator and by the
/// induced groupoid action, with the first violation if any.
pub fn mset_verdict_text(monoid: &str, mset: &str) -> Result<String, String> {
    let file = MonoidFile::from_json(monoid).map_err(err)?;
    let radius = if file.descriptor().map_err(err)?.is_free() { 3 } else { 8 };
    let m = file.build(2 * radius, MARGIN).map_err(err)?;
    let set = MSetFile::from_json(mset).map_err(err)?.to_mset(m.descriptor()).map_err(err)?;
    let violations = validate_mset(&m, &set).map_err(err)?;
    let g = build_groupoid(&m, radius, 2, &mut Sampler::default()).map_err(err)?;
    let induced = induced_action(&g, &set, &mut Sampler::default()).map_err(err)?;
    let mut text = format!(
        "valid: {}\ninduced action monotone: {}\n",
        violations.is_empty(),
        induced.monotone()
    );
    if let Some(v) = violations.first() {
        text += &format!("violation: {v}\n");
    }
    Ok(text)
}

#[wasm_bindgen]
pub fn etale_dot(monoid: &str, mset: &str, window: &str) -> Result<String, JsError> {
    etale_dot_text(monoid, mset, window).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pattern(monoid: &str, size: usize) -> Result<String, JsError> {
    pattern_text(monoid, size).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn mset_verdict(monoid: &str, mset: &str) -> Result<String, JsError> {
    mset_verdict_text(monoid, mset).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAT: &str = r#"{"group":"int:1","submonoid":"nonneg"}"#;
    const NAT_2EQ5: &str = r#"{"group":"int:1","submonoid":"nonneg","congruence_pairs":[["(2)","(5)"]]}"#;
    const MOD2: &str = r#"{"elements":["0","1"],"action":{"(1)":{"0":"1","1":"0"}}}"#;
    const MOD3: &str = r#"{"elements":["0","1","2"],"action":{"(1)":{"0":"1","1":"2","2":"0"}}}"#;

    #[test]
    fn etale_dot_has_the_zigzag() {
        let dot = etale_dot_text(NAT, MOD2, "1..9").unwrap();
        assert_eq!(dot.matches(" -> ").count(), 16);
        assert!(dot.starts_with("digraph hasse {"));
    }

    #[test]
    fn diagonal_pattern() {
        assert_eq!(pattern_text(NAT, 3).unwrap(), "..#\n.#.\n#..");
        assert!(pattern_text(NAT, 0).is_err());
    }

    #[test]
    fn verdicts() {
        // 5 - 2 = 3 is a multiple of 3 but not of 2
        let ok = mset_verdict_text(NAT_2EQ5, MOD3).unwrap();
        assert!(ok.starts_with("valid: true\ninduced action monotone: true\n"), "{ok}");
        let bad = mset_verdict_text(NAT_2EQ5, MOD2).unwrap();
        assert!(bad.starts_with("valid: false\ninduced action monotone: false\n"), "{bad}");
        assert!(bad.contains("violation: "));
    }

    #[test]
    fn bad_input_is_an_error_message() {
        assert!(etale_dot_text("{", MOD2, "1..9").is_err());
        assert!(etale_dot_text(NAT, MOD2, "9..1").is_err());
    }
}
