//! WebAssembly bindings behind the demo page in `www/`.
//!
//! Everything crosses the boundary as flat `f64` arrays: a sample of
//! intervals is `[lo0, hi0, lo1, hi1, ...]`, a 2-D box dataset is
//! `[x_lo, x_hi, y_lo, y_hi, ...]` per row.

use interval_centers::l2_hausdorff;
use interval_centers::{
    cluster, eval_dispersion, CentralMethod, ClusterDistance, ClusteringConfig, Exponent,
    Hypercube, HypercubeDataset, Interval, IntervalSample, Metric,
};
use wasm_bindgen::prelude::*;

fn sample_from(bounds: &[f64]) -> Result<IntervalSample, String> {
    if !bounds.len().is_multiple_of(2) {
        return Err("expected an even number of bounds".into());
    }
    let pairs: Vec<(f64, f64)> = bounds.chunks(2).map(|c| (c[0], c[1])).collect();
    IntervalSample::from_bounds(&pairs).map_err(|e| e.to_string())
}

/// For each method in the order median, midrange, mean-bounds, mean-midlen,
/// l2-hausdorff: `[lo, hi, dispersion]`.
pub fn central_intervals_impl(bounds: &[f64]) -> Result<Vec<f64>, String> {
    let sample = sample_from(bounds)?;
    Ok(CentralMethod::ALL
        .iter()
        .flat_map(|m| {
            let e = m.center(&sample);
            [e.center.lower(), e.center.upper(), e.dispersion]
        })
        .collect())
}

/// `S_2` of the Hausdorff distances on an `nx × ny` grid over
/// `[mu0, mu1] × [lambda0, lambda1]`, row-major with λ varying slowest.
/// Cells with λ < 0 are NaN.
#[allow(clippy::too_many_arguments)]
pub fn hausdorff_landscape_impl(
    bounds: &[f64],
    mu0: f64,
    mu1: f64,
    lambda0: f64,
    lambda1: f64,
    nx: usize,
    ny: usize,
) -> Result<Vec<f64>, String> {
    let sample = sample_from(bounds)?;
    let step = |lo: f64, hi: f64, n: usize, i: usize| {
        if n <= 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        let lambda = step(lambda0, lambda1, ny, iy);
        for ix in 0..nx {
            let mu = step(mu0, mu1, nx, ix);
            out.push(match Interval::from_mid_half(mu, lambda) {
                Ok(c) => eval_dispersion(&sample, &c, Exponent::Two, Metric::Hausdorff),
                Err(_) => f64::NAN,
            });
        }
    }
    Ok(out)
}

/// `[count of midpoint breakpoints, midpoints..., half-lengths...]`.
pub fn breakpoints_impl(bounds: &[f64]) -> Result<Vec<f64>, String> {
    let sample = sample_from(bounds)?;
    let bp = l2_hausdorff::breakpoints(&sample);
    let mut out = vec![bp.midpoints().len() as f64];
    out.extend_from_slice(bp.midpoints());
    out.extend_from_slice(bp.half_lengths());
    Ok(out)
}

/// Clusters 2-D boxes. Returns the `n` assignments, then `k` prototypes as
/// `[x_lo, x_hi, y_lo, y_hi]`, then the final criterion and iteration count.
pub fn cluster_boxes_impl(
    boxes: &[f64],
    k: usize,
    p: u8,
    distance: &str,
    normalize: bool,
    seed: u64,
) -> Result<Vec<f64>, String> {
    if !boxes.len().is_multiple_of(4) || boxes.is_empty() {
        return Err("expected four bounds per box".into());
    }
    let items = boxes
        .chunks(4)
        .map(|c| Hypercube::from_bounds(&[(c[0], c[1]), (c[2], c[3])]))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let data = HypercubeDataset::unnamed(items).map_err(|e| e.to_string())?;
    let p = match p {
        1 => Exponent::One,
        2 => Exponent::Two,
        _ => return Err("p must be 1 or 2".into()),
    };
    let distance: ClusterDistance = distance
        .parse()
        .map_err(|e: interval_centers::Error| e.to_string())?;
    let config = ClusteringConfig {
        normalize,
        seed,
        ..ClusteringConfig::new(k, p, distance)
    };
    let result = cluster(&data, &config).map_err(|e| e.to_string())?;
    let mut out: Vec<f64> = result.assignments.iter().map(|&a| a as f64).collect();
    for proto in &result.prototypes {
        for c in proto.components() {
            out.push(c.lower());
            out.push(c.upper());
        }
    }
    out.push(result.final_criterion().unwrap_or(f64::NAN));
    out.push(result.iterations as f64);
    Ok(out)
}

#[wasm_bindgen]
pub fn central_intervals(bounds: &[f64]) -> Result<Vec<f64>, JsError> {
    central_intervals_impl(bounds).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn hausdorff_landscape(
    bounds: &[f64],
    mu0: f64,
    mu1: f64,
    lambda0: f64,
    lambda1: f64,
    nx: usize,
    ny: usize,
) -> Result<Vec<f64>, JsError> {
    hausdorff_landscape_impl(bounds, mu0, mu1, lambda0, lambda1, nx, ny)
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn breakpoints(bounds: &[f64]) -> Result<Vec<f64>, JsError> {
    breakpoints_impl(bounds).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cluster_boxes(
    boxes: &[f64],
    k: usize,
    p: u8,
    distance: &str,
    normalize: bool,
    seed: u64,
) -> Result<Vec<f64>, JsError> {
    cluster_boxes_impl(boxes, k, p, distance, normalize, seed).map_err(|e| JsError::new(&e))
}
