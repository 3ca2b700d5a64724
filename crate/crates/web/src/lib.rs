//! Browser bindings: weight tables, Bochner identities and the Kirchberg
//! estimate, rendered as text or JSON.

use kahlergrad::bochner::{identity_lines, kirchberg_bound, kirchberg_closed_form, weitzenboeck};
use kahlergrad::cli::{EstimateOutput, IdentityOutput, Render, WeightsOutput};
use kahlergrad::HighestWeight;
use wasm_bindgen::prelude::*;

/// Largest rank accepted from the page, to keep the UI responsive.
pub const MAX_RANK: usize = 12;

fn parse_weight(rho: &str) -> Result<HighestWeight, String> {
    let rho: HighestWeight = rho.trim().parse().map_err(|e| format!("{e}"))?;
    if rho.m() > MAX_RANK {
        return Err(format!("rank {} is above the limit of {MAX_RANK}", rho.m()));
    }
    Ok(rho)
}

fn render(out: &impl Render, json: bool) -> String {
    if json {
        out.json()
    } else {
        out.text()
    }
}

pub fn weights_text(rho: &str, json: bool) -> Result<String, String> {
    let rho = parse_weight(rho)?;
    let out = WeightsOutput::new(&rho).map_err(|e| e.to_string())?;
    Ok(render(&out, json))
}

/// Degree-`q` identities, or the Weitzenböck formula when `weitzenboeck` is set.
pub fn identity_text(
    rho: &str,
    q: u32,
    weitzenboeck_form: bool,
    json: bool,
) -> Result<String, String> {
    let rho = parse_weight(rho)?;
    if q > 2 * rho.m() as u32 {
        return Err(format!("degree {q} is above 2m = {}", 2 * rho.m()));
    }
    let out = if weitzenboeck_form {
        let id = weitzenboeck(&rho).map_err(|e| e.to_string())?;
        IdentityOutput::new(&rho, "weitzenboeck", None, None, vec![id])
    } else {
        let ids = identity_lines(&rho, q).map_err(|e| e.to_string())?;
        IdentityOutput::new(&rho, "degree", Some(q), None, ids)
    };
    Ok(render(&out, json))
}

pub fn estimate_text(m: usize, json: bool) -> Result<String, String> {
    if m > 10_000 {
        return Err("m is above 10000".into());
    }
    let b = kirchberg_bound(m).map_err(|e| e.to_string())?;
    Ok(render(
        &EstimateOutput::new(b, kirchberg_closed_form(m)),
        json,
    ))
}

#[wasm_bindgen]
pub fn weights(rho: &str, json: bool) -> Result<String, JsError> {
    weights_text(rho, json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn identity(rho: &str, q: u32, weitzenboeck: bool, json: bool) -> Result<String, JsError> {
    identity_text(rho, q, weitzenboeck, json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn estimate(m: usize, json: bool) -> Result<String, JsError> {
    estimate_text(m, json).map_err(|e| JsError::new(&e))
}
