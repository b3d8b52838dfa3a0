//! wasm-bindgen surface for `www/index.html`. Every call returns JSON text;
//! rationals travel as exact strings next to an `f64` for drawing.

use lw_core::puiseux::parse_q;
use lw_core::trop_path::{breakpoints, gamma_count, gamma_of_path, projected_path, standard_grid, trop_curvature_lower_bound};
use lw_core::tropical::{trop_segment, TropPoint, Q};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn exact(q: &Q) -> Value {
    json!({"q": q.to_string(), "f": q.to_f64()})
}

fn point(p: &TropPoint<Q>) -> Value {
    Value::Array(p.finite_values().unwrap_or_default().iter().map(exact).collect())
}

/// Staircase `(x_{2r−1}, x_{2r})` of the tropical central path on `[lo, hi]`.
pub fn staircase_json(r: usize, lo: &str, hi: &str) -> Result<Value, String> {
    if !(1..=10).contains(&r) {
        return Err("r must lie in 1..=10".into());
    }
    let (lo, hi) = (parse_q(lo).map_err(|e| e.to_string())?, parse_q(hi).map_err(|e| e.to_string())?);
    if lo >= hi {
        return Err("empty range".into());
    }
    let d = breakpoints(r, &lo, &hi).map_err(|e| e.to_string())?;
    let proj = projected_path(r, &lo, &hi, &[2 * r - 2, 2 * r - 1]).map_err(|e| e.to_string())?;
    let verts: Vec<Value> = d.lambdas.iter().zip(proj.points()).map(|(l, p)| json!({"lambda": exact(l), "xy": point(p)})).collect();
    Ok(json!({
        "r": r,
        "vertices": verts,
        "pieces": proj.clone().merge_collinear().num_pieces(),
        "gamma_projection": gamma_of_path(&proj).map_err(|e| e.to_string())?,
        "gamma_full": gamma_count(&d).map_err(|e| e.to_string())?,
        "lower_bound": 1u64 << (r - 1),
    }))
}

/// Vertices of `tsegm(u, v)`; coordinates are comma-separated rationals.
pub fn segment_json(u: &str, v: &str) -> Result<Value, String> {
    let parse = |s: &str| -> Result<TropPoint<Q>, String> {
        let vals = s.split(',').map(|c| parse_q(c).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
        TropPoint::from_finite(vals).map_err(|e| e.to_string())
    };
    let seg = trop_segment(&parse(u)?, &parse(v)?).map_err(|e| e.to_string())?;
    let dirs: Vec<String> = seg.directions().unwrap_or_default().iter().map(|d| d.to_string()).collect();
    Ok(json!({"points": seg.points().iter().map(point).collect::<Vec<_>>(), "directions": dirs}))
}

/// Weak tropical angles of the full path on the grid `4k/2^{r−1}`.
pub fn angles_json(r: usize) -> Result<Value, String> {
    if !(3..=12).contains(&r) {
        return Err("r must lie in 3..=12".into());
    }
    let g = standard_grid(r).map_err(|e| e.to_string())?;
    let b = trop_curvature_lower_bound(r, &g).map_err(|e| e.to_string())?;
    let angles: Vec<Value> = g[1..g.len() - 1].iter().zip(&b.angles).map(|(l, a)| json!({"lambda": exact(l), "half_pis": a.units()})).collect();
    Ok(json!({"angles": angles, "half_pis": b.half_pis(), "radians": b.radians()}))
}

#[wasm_bindgen]
pub fn staircase(r: usize, lo: &str, hi: &str) -> Result<String, JsValue> {
    staircase_json(r, lo, hi).map(|v| v.to_string()).map_err(err)
}

#[wasm_bindgen]
pub fn segment(u: &str, v: &str) -> Result<String, JsValue> {
    segment_json(u, v).map(|v| v.to_string()).map_err(err)
}

#[wasm_bindgen]
pub fn tropical_angles(r: usize) -> Result<String, JsValue> {
    angles_json(r).map(|v| v.to_string()).map_err(err)
}
