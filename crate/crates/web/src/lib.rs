//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes plain numbers and returns a JSON string.
//! The JSON builders are ordinary Rust functions so they can be tested
//! without a JavaScript host.

use serde::Serialize;
use starmeans::baernstein::{integral_mean, majorant_samples, star_function, ConvexTestFn};
use starmeans::operators::{janowski_ln, ClassMember, ClassParams};
use starmeans::sampling::member_from_seed;
use starmeans::verification::{build_extremal, theorem_integrands, ExtremalSpec, Precision, Sign};
use starmeans::SampleConfig;
use wasm_bindgen::prelude::*;

/// Random members use this Blaschke degree when `degree` is negative.
const DEFAULT_DEGREE: usize = 3;

#[derive(Debug, Serialize)]
pub struct Curve {
    pub label: String,
    pub theta: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct StarCurves {
    /// `log|f'|` and the majorant on the circle, `theta` in `[-pi, pi)`.
    pub integrands: Vec<Curve>,
    /// Their star functions on `[0, pi]`.
    pub stars: Vec<Curve>,
    pub order: usize,
}

#[derive(Debug, Serialize)]
pub struct MeanRow {
    pub phi: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Serialize)]
pub struct Means {
    pub theorem1: Vec<MeanRow>,
    pub theorem2: Vec<MeanRow>,
    pub seed: Option<u64>,
}

fn member(params: ClassParams, seed: Option<u64>, gamma: f64, degree: usize, r: f64, m: usize) -> starmeans::Result<ClassMember> {
    let precision = Precision { grid: m, ..Precision::default() };
    let base = match seed {
        Some(seed) => {
            let cfg = SampleConfig { seed: 0, degree, count: 1, params, order: precision.order };
            member_from_seed(&cfg, seed)?
        }
        None => build_extremal(&ExtremalSpec { params, gamma }, precision.order)?,
    };
    precision.resolve(&base, r)
}

/// Seed `< 0` selects the extremal rotated by `gamma`; otherwise a random
/// member with that seed.
fn seed_of(seed: f64) -> Option<u64> {
    (seed >= 0.0).then_some(seed as u64)
}

fn degree_of(degree: i32) -> usize {
    usize::try_from(degree).unwrap_or(DEFAULT_DEGREE)
}

#[allow(clippy::too_many_arguments)]
pub fn star_curves_json(
    alpha: f64,
    n: u32,
    a: f64,
    b: f64,
    r: f64,
    seed: f64,
    gamma: f64,
    degree: i32,
    m: usize,
) -> Result<String, String> {
    let run = || -> starmeans::Result<StarCurves> {
        let params = ClassParams::new(alpha, n, a, b)?;
        params.validate_theorem_range()?;
        let f = member(params, seed_of(seed), gamma, degree_of(degree), r, m)?;
        let (g, _) = theorem_integrands(&f, r, m, Sign::Plus)?;
        let h = majorant_samples(&params, r, m)?;
        let mut integrands = Vec::new();
        let mut stars = Vec::new();
        for (label, s) in [("log|f'|", &g), ("majorant", &h)] {
            integrands.push(Curve { label: label.into(), theta: s.thetas().collect(), values: s.values().to_vec() });
            let star = star_function(s);
            stars.push(Curve { label: label.into(), theta: star.theta_grid().to_vec(), values: star.values().to_vec() });
        }
        Ok(StarCurves { integrands, stars, order: f.order() })
    };
    let out = run().map_err(|e| e.to_string())?;
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
pub fn integral_means_json(
    alpha: f64,
    n: u32,
    a: f64,
    b: f64,
    r: f64,
    seed: f64,
    gamma: f64,
    degree: i32,
    m: usize,
) -> Result<String, String> {
    let run = || -> starmeans::Result<Means> {
        let params = ClassParams::new(alpha, n, a, b)?;
        params.validate_theorem_range()?;
        let f = member(params, seed_of(seed), gamma, degree_of(degree), r, m)?;
        let mut phis = vec![ConvexTestFn::Linear];
        for rate in [0.5, 1.0, 2.0] {
            phis.push(ConvexTestFn::exp(rate)?);
        }
        let mut rows = [Vec::new(), Vec::new()];
        for (out, sign) in rows.iter_mut().zip([Sign::Plus, Sign::Minus]) {
            let (g, h) = theorem_integrands(&f, r, m, sign)?;
            for phi in &phis {
                let (lhs, rhs) = (integral_mean(&g, phi), integral_mean(&h, phi));
                out.push(MeanRow { phi: phi.to_string(), lhs, rhs, margin: rhs - lhs });
            }
        }
        let [theorem1, theorem2] = rows;
        Ok(Means { theorem1, theorem2, seed: f.seed() })
    };
    let out = run().map_err(|e| e.to_string())?;
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

pub fn janowski_coefficients_json(alpha: f64, n: u32, a: f64, b: f64, order: usize) -> Result<String, String> {
    let params = ClassParams::new(alpha, n, a, b).map_err(|e| e.to_string())?;
    let series = janowski_ln(&params, order).map_err(|e| e.to_string())?;
    let re: Vec<f64> = series.coeffs().iter().map(|c| c.re).collect();
    serde_json::to_string(&re).map_err(|e| e.to_string())
}

/// JSON `{integrands, stars, order}` for the member selected by `seed`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn star_curves(
    alpha: f64,
    n: u32,
    a: f64,
    b: f64,
    r: f64,
    seed: f64,
    gamma: f64,
    degree: i32,
    m: usize,
) -> Result<String, JsValue> {
    star_curves_json(alpha, n, a, b, r, seed, gamma, degree, m).map_err(|e| JsValue::from_str(&e))
}

/// JSON `{theorem1, theorem2, seed}` with one row per test function.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn integral_means(
    alpha: f64,
    n: u32,
    a: f64,
    b: f64,
    r: f64,
    seed: f64,
    gamma: f64,
    degree: i32,
    m: usize,
) -> Result<String, JsValue> {
    integral_means_json(alpha, n, a, b, r, seed, gamma, degree, m).map_err(|e| JsValue::from_str(&e))
}

/// JSON array of the (real) Taylor coefficients of `L_n(a, b)`.
#[wasm_bindgen]
pub fn janowski_coefficients(alpha: f64, n: u32, a: f64, b: f64, order: usize) -> Result<String, JsValue> {
    janowski_coefficients_json(alpha, n, a, b, order).map_err(|e| JsValue::from_str(&e))
}
