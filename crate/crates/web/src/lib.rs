//! Three library operations exposed to a static page through wasm-bindgen.
//!
//! Each export takes strings and returns a JSON string, so the page needs no
//! bindings beyond `JSON.parse`. Errors come back as `{"error": "..."}`.

use hcgl::gadgets::{boost, implement_activity};
use hcgl::numerics::rational::{self, BigRational};
use hcgl::partition::path_ratio;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Longest path the curve will evaluate.
pub const CURVE_N_CAP: u32 = 400;

/// Gadgets up to this size are returned with their edge list for drawing.
pub const DRAW_CAP: usize = 400;

fn parse(s: &str) -> Result<BigRational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Endpoint ratios of `P_1 .. P_{n_max}`. Exact values are sent only while
/// they are short; the float is for plotting.
pub fn path_ratio_curve_json(lambda: &str, n_max: u32) -> Result<Value, String> {
    let l = parse(lambda)?;
    let n_max = n_max.clamp(1, CURVE_N_CAP);
    let mut points = Vec::new();
    for n in 1..=n_max as u64 {
        let p = match path_ratio(n, &l) {
            Ok(r) => {
                let exact = r.to_string();
                let exact = (exact.len() <= 40).then_some(exact);
                json!({ "n": n, "ratio": rational::to_f64(&r), "exact": exact })
            }
            // Z of the shorter path vanishes: the ratio is a pole.
            Err(_) => json!({ "n": n, "ratio": null, "exact": null }),
        };
        points.push(p);
    }
    Ok(json!({ "lambda": l.to_string(), "points": points }))
}

pub fn boost_sequence_json(delta: u32, lambda: &str) -> Result<Value, String> {
    let l = parse(lambda)?;
    let b = boost(delta as usize, &l).map_err(|e| e.to_string())?;
    let floats: Vec<f64> = b.iterates.iter().map(rational::to_f64).collect();
    Ok(json!({
        "height": b.height,
        "iterates": b.iterates.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "iterates_approx": floats,
        "lambda_hat": b.lambda_hat.to_string(),
        "lambda_hat_approx": rational::to_f64(&b.lambda_hat),
        "tree_vertices": b.tree.vertex_count(),
    }))
}

pub fn implement_json(delta: u32, lambda: &str, target: &str, eps: &str) -> Result<Value, String> {
    let (l, t, e) = (parse(lambda)?, parse(target)?, parse(eps)?);
    let imp = implement_activity(delta as usize, &l, &t, &e).map_err(|e| e.to_string())?;
    let g = &imp.gadget;
    let edges = (g.vertex_count() <= DRAW_CAP).then(|| g.graph.edges().to_vec());
    Ok(json!({
        "ratio": g.claimed_ratio.to_string(),
        "ratio_approx": rational::to_f64(&g.claimed_ratio),
        "error": (&g.claimed_ratio - &t).to_string(),
        "vertices": g.vertex_count(),
        "edges": g.graph.edge_count(),
        "terminal": g.terminal,
        "max_degree": g.graph.max_degree(),
        "trace": serde_json::to_value(&imp.trace).map_err(|e| e.to_string())?,
        "edge_list": edges,
    }))
}

#[wasm_bindgen]
pub fn path_ratio_curve(lambda: &str, n_max: u32) -> String {
    finish(path_ratio_curve_json(lambda, n_max))
}

#[wasm_bindgen]
pub fn boost_sequence(delta: u32, lambda: &str) -> String {
    finish(boost_sequence_json(delta, lambda))
}

#[wasm_bindgen]
pub fn implement(delta: u32, lambda: &str, target: &str, eps: &str) -> String {
    finish(implement_json(delta, lambda, target, eps))
}
