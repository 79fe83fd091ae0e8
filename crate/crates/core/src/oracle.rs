//! Brute-force minimizers used to check the exact solvers.
//!
//! Everything here works straight from the raw interval bounds and shares no
//! code with the solvers beyond the selector enums. The search is a
//! hierarchical grid (three 41 × 41 levels, each zooming ×10 around the
//! incumbent) followed by cyclic coordinate-wise golden-section search. All
//! objectives searched here are convex, and in `(μ, λ)` coordinates their
//! kinks for the Hausdorff L1/L2 cases lie on axis-parallel lines, so a
//! coordinate-wise minimum is a global one. For the L∞ objective the
//! coordinate phase can stall on a diagonal kink; the result is then an
//! upper bound on the minimum, which is what the optimality checks need.

use crate::interval::{Exponent, Interval, IntervalSample, Metric};

const GRID_POINTS: usize = 41;
const GRID_LEVELS: usize = 3;
const ZOOM: f64 = 10.0;
const COORDINATE_ROUNDS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub center: Interval,
    /// Objective at `center`.
    pub value: f64,
    /// Final step size of the search.
    pub resolution: f64,
    /// Incumbent value after each grid level, then after the coordinate phase.
    pub level_values: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
struct SearchBox {
    mu: (f64, f64),
    lambda: (f64, f64),
}

impl SearchBox {
    fn width(&self) -> f64 {
        (self.mu.1 - self.mu.0).max(self.lambda.1 - self.lambda.0)
    }
}

fn term(metric: Metric, (a1, b1): (f64, f64), (a2, b2): (f64, f64)) -> f64 {
    let norm = |p: Exponent, x: f64, y: f64| match p {
        Exponent::One => x.abs() + y.abs(),
        Exponent::Two => (x * x + y * y).sqrt(),
        Exponent::Infinity => x.abs().max(y.abs()),
    };
    match metric {
        Metric::Hausdorff => (a1 - a2).abs().max((b1 - b2).abs()),
        Metric::Bounds(p) => norm(p, a1 - a2, b1 - b2),
        Metric::MidLen(p) => norm(p, (a1 + b1 - a2 - b2) / 2.0, (b1 - a1 - b2 + a2) / 2.0),
    }
}

fn dispersion(bounds: &[(f64, f64)], p: Exponent, metric: Metric, mu: f64, lambda: f64) -> f64 {
    let c = (mu - lambda, mu + lambda);
    let terms = bounds.iter().map(|&x| term(metric, x, c));
    match p {
        Exponent::One => terms.sum(),
        Exponent::Two => terms.map(|d| d * d).sum::<f64>().sqrt(),
        Exponent::Infinity => terms.fold(0.0, f64::max),
    }
}

fn raw_bounds(sample: &IntervalSample) -> Vec<(f64, f64)> {
    sample.iter().map(|x| (x.lower(), x.upper())).collect()
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

/// Bounding box of the data in `(μ, λ)` coordinates.
fn data_box(bounds: &[(f64, f64)]) -> SearchBox {
    SearchBox {
        mu: range(bounds.iter().map(|&(a, b)| (a + b) / 2.0)),
        lambda: range(bounds.iter().map(|&(a, b)| (b - a) / 2.0)),
    }
}

fn golden_section(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

fn search(f: impl Fn(f64, f64) -> f64, bx: SearchBox, tol: f64) -> (f64, f64, f64, Vec<f64>) {
    let mut best = (bx.mu.0, bx.lambda.0, f64::INFINITY);
    let mut level_values = Vec::with_capacity(GRID_LEVELS + 1);
    let (mut half_mu, mut half_lambda) =
        (0.5 * (bx.mu.1 - bx.mu.0), 0.5 * (bx.lambda.1 - bx.lambda.0));
    let mut center = (0.5 * (bx.mu.0 + bx.mu.1), 0.5 * (bx.lambda.0 + bx.lambda.1));
    for _ in 0..GRID_LEVELS {
        let mu_lo = (center.0 - half_mu).max(bx.mu.0);
        let mu_hi = (center.0 + half_mu).min(bx.mu.1);
        let la_lo = (center.1 - half_lambda).max(bx.lambda.0);
        let la_hi = (center.1 + half_lambda).min(bx.lambda.1);
        let steps = (GRID_POINTS - 1) as f64;
        for u in 0..GRID_POINTS {
            let mu = mu_lo + (mu_hi - mu_lo) * u as f64 / steps;
            for v in 0..GRID_POINTS {
                let lambda = la_lo + (la_hi - la_lo) * v as f64 / steps;
                let value = f(mu, lambda);
                if value < best.2 {
                    best = (mu, lambda, value);
                }
            }
        }
        level_values.push(best.2);
        center = (best.0, best.1);
        half_mu /= ZOOM;
        half_lambda /= ZOOM;
    }

    for _ in 0..COORDINATE_ROUNDS {
        let before = best;
        let mu = golden_section(&|m| f(m, best.1), bx.mu.0, bx.mu.1, tol);
        let value = f(mu, best.1);
        if value < best.2 {
            best = (mu, best.1, value);
        }
        let lambda = golden_section(&|l| f(best.0, l), bx.lambda.0, bx.lambda.1, tol);
        let value = f(best.0, lambda);
        if value < best.2 {
            best = (best.0, lambda, value);
        }
        if best == before {
            break;
        }
    }
    level_values.push(best.2);
    (best.0, best.1, best.2, level_values)
}

fn to_interval(mu: f64, lambda: f64) -> Interval {
    let lambda = lambda.max(0.0);
    Interval::new(mu - lambda, mu + lambda).expect("oracle keeps λ >= 0")
}

/// Minimizes `S_p` over valid intervals (`λ >= 0`) by brute force.
pub fn grid_minimize(sample: &IntervalSample, p: Exponent, metric: Metric) -> OracleResult {
    let bounds = raw_bounds(sample);
    let data = data_box(&bounds);
    let spread = (data.mu.1 - data.mu.0)
        .max(data.lambda.1 - data.lambda.0)
        .max(1.0);
    let bx = SearchBox {
        mu: (data.mu.0 - spread, data.mu.1 + spread),
        lambda: ((data.lambda.0 - spread).max(0.0), data.lambda.1 + spread),
    };
    let tol = 1e-13 * bx.width();
    let (mu, lambda, value, level_values) =
        search(|m, l| dispersion(&bounds, p, metric, m, l), bx, tol);
    OracleResult {
        center: to_interval(mu, lambda),
        value,
        resolution: tol,
        level_values,
    }
}

fn sorted_distinct(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v.dedup();
    v
}

/// Minimizes `Σ max((a_i - α)², (b_i - β)²)` over rectangle `(j, k)` of the
/// midpoint × half-length partition (0-based cell indices, cell 0 being the
/// unbounded one below the smallest breakpoint). The value is the squared
/// dispersion. Unbounded sides are clipped to the data box, which contains a
/// minimizer over the rectangle because moving a coordinate towards the data
/// range never increases any term.
pub fn rectangle_grid_minimize(
    sample: &IntervalSample,
    j: usize,
    k: usize,
    resolution: f64,
) -> OracleResult {
    let bounds = raw_bounds(sample);
    let mids = sorted_distinct(bounds.iter().map(|&(a, b)| (a + b) / 2.0).collect());
    let halves = sorted_distinct(bounds.iter().map(|&(a, b)| (b - a) / 2.0).collect());
    let data = data_box(&bounds);
    let side = |sorted: &[f64], idx: usize, (lo, hi): (f64, f64)| {
        let left = if idx == 0 { lo } else { sorted[idx - 1] };
        let right = if idx >= sorted.len() { hi } else { sorted[idx] };
        (left.max(lo), right.min(hi))
    };
    let bx = SearchBox {
        mu: side(&mids, j, data.mu),
        lambda: side(&halves, k, data.lambda),
    };
    let squared = |mu: f64, lambda: f64| -> f64 {
        let (alpha, beta) = (mu - lambda, mu + lambda);
        bounds
            .iter()
            .map(|&(a, b)| ((a - alpha) * (a - alpha)).max((b - beta) * (b - beta)))
            .sum()
    };
    let (mu, lambda, value, level_values) = search(squared, bx, resolution);
    OracleResult {
        center: to_interval(mu, lambda),
        value,
        resolution,
        level_values,
    }
}
