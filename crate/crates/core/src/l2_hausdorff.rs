//! Exact central interval for the L2 combination of Hausdorff distances.
//!
//! The objective is `F(α, β) = Σ max((a_i - α)², (b_i - β)²)`. Writing the
//! candidate as midpoint `μ` and half-length `λ`,
//!
//! ```text
//! (a_i - α)² - (b_i - β)² = -4 (m_i - μ)(l_i - λ)
//! ```
//!
//! so which of the two terms wins only depends on the sign of
//! `(m_i - μ)(l_i - λ)`. The sorted distinct midpoints and half-lengths cut the
//! `(μ, λ)` plane into rectangles on which every sign is fixed, and `F` is a
//! plain quadratic `Σ_{I_a} (a_i - α)² + Σ_{I_b} (b_i - β)²` there. Minimizing
//! that quadratic over each closed rectangle (a 2-variable box-constrained QP
//! solved through its KKT conditions) and keeping the best rectangle gives the
//! global minimum in `O(n³)` operations.

use crate::central::{mean, CentralEstimate, CentralMethod};
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSample};

/// Sorted, de-duplicated midpoints and half-lengths of a sample.
///
/// Cell `j` of the midpoint axis is `[m_(j), m_(j+1)]` with the conventions
/// `m_(0) = -∞` and `m_(n'+1) = +∞`; likewise for half-lengths. Indices are
/// 0-based, so `j` ranges over `0..=n'`.
#[derive(Debug, Clone, PartialEq)]
pub struct Breakpoints {
    midpoints: Vec<f64>,
    half_lengths: Vec<f64>,
}

impl Breakpoints {
    pub fn midpoints(&self) -> &[f64] {
        &self.midpoints
    }

    pub fn half_lengths(&self) -> &[f64] {
        &self.half_lengths
    }

    /// Number of midpoint cells, `n' + 1`.
    pub fn mid_cells(&self) -> usize {
        self.midpoints.len() + 1
    }

    /// Number of half-length cells, `n'' + 1`.
    pub fn half_cells(&self) -> usize {
        self.half_lengths.len() + 1
    }

    pub fn mid_cell(&self, j: usize) -> (f64, f64) {
        cell(&self.midpoints, j)
    }

    pub fn half_cell(&self, k: usize) -> (f64, f64) {
        cell(&self.half_lengths, k)
    }

    /// A point strictly inside rectangle `(j, k)`. Unbounded sides are
    /// replaced by the finite bound moved outwards by the axis range plus one.
    pub fn representative(&self, j: usize, k: usize) -> (f64, f64) {
        (
            interior_point(&self.midpoints, j),
            interior_point(&self.half_lengths, k),
        )
    }
}

fn cell(sorted: &[f64], j: usize) -> (f64, f64) {
    assert!(j <= sorted.len(), "cell index {j} out of range");
    let lo = if j == 0 {
        f64::NEG_INFINITY
    } else {
        sorted[j - 1]
    };
    let hi = sorted.get(j).copied().unwrap_or(f64::INFINITY);
    (lo, hi)
}

fn interior_point(sorted: &[f64], j: usize) -> f64 {
    let (lo, hi) = cell(sorted, j);
    let offset = sorted[sorted.len() - 1] - sorted[0] + 1.0;
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (false, true) => hi - offset,
        (true, false) => lo + offset,
        (false, false) => unreachable!("a sample has at least one breakpoint"),
    }
}

fn sorted_distinct(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

pub fn breakpoints(sample: &IntervalSample) -> Breakpoints {
    Breakpoints {
        midpoints: sorted_distinct(sample.midpoints()),
        half_lengths: sorted_distinct(sample.half_lengths()),
    }
}

/// True when the lower-bound term `(a_i - α)²` is the larger one at `(μ, λ)`.
#[inline]
fn lower_term_wins(m: f64, l: f64, mu: f64, lambda: f64) -> bool {
    (m - mu) * (l - lambda) <= 0.0
}

/// `x` when `mask` is all ones, `+0.0` when it is zero.
#[inline]
fn masked(x: f64, mask: u64) -> f64 {
    f64::from_bits(x.to_bits() & mask)
}

/// Index sets of a rectangle: `lower` holds the `i` whose term is
/// `(a_i - α)²`, `upper` those whose term is `(b_i - β)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSets {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

/// Splits the (0-based) sample indices for rectangle `(j, k)`.
pub fn classify(sample: &IntervalSample, bp: &Breakpoints, j: usize, k: usize) -> IndexSets {
    let (mu, lambda) = bp.representative(j, k);
    let (lower, upper) = (0..sample.len()).partition(|&i| {
        let x = &sample.as_slice()[i];
        lower_term_wins(x.midpoint(), x.half_length(), mu, lambda)
    });
    IndexSets { lower, upper }
}

/// The quadratic subproblem on one rectangle, reduced to its sufficient
/// statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleSubproblem {
    pub j: usize,
    pub k: usize,
    pub m_minus: f64,
    pub m_plus: f64,
    pub l_minus: f64,
    pub l_plus: f64,
    /// `|I_a|` and `|I_b|`.
    pub n_a: usize,
    pub n_b: usize,
    /// `Σ_{I_a} a_i`, `Σ_{I_b} b_i`.
    pub sum_a: f64,
    pub sum_b: f64,
    /// `Σ_{I_a} a_i²`, `Σ_{I_b} b_i²`.
    pub sum_a2: f64,
    pub sum_b2: f64,
}

impl RectangleSubproblem {
    /// Classifies the sample for rectangle `(j, k)` and accumulates the sums
    /// in a single pass.
    pub fn build(sample: &IntervalSample, bp: &Breakpoints, j: usize, k: usize) -> Self {
        let (m_minus, m_plus) = bp.mid_cell(j);
        let (l_minus, l_plus) = bp.half_cell(k);
        let (mu, lambda) = bp.representative(j, k);
        let mut rp = Self {
            j,
            k,
            m_minus,
            m_plus,
            l_minus,
            l_plus,
            n_a: 0,
            n_b: 0,
            sum_a: 0.0,
            sum_b: 0.0,
            sum_a2: 0.0,
            sum_b2: 0.0,
        };
        // Masks instead of branches: the split is data dependent and a branch
        // on it mispredicts about half the time. Adding an exact zero leaves
        // the sums unchanged.
        for x in sample {
            let lower = lower_term_wins(x.midpoint(), x.half_length(), mu, lambda);
            // black_box keeps the optimizer from turning the mask back into a branch
            let keep_a = std::hint::black_box(u64::from(lower).wrapping_neg());
            let keep_b = !keep_a;
            let (a, b) = (x.lower(), x.upper());
            rp.n_a += usize::from(lower);
            rp.sum_a += masked(a, keep_a);
            rp.sum_a2 += masked(a * a, keep_a);
            rp.sum_b += masked(b, keep_b);
            rp.sum_b2 += masked(b * b, keep_b);
        }
        rp.n_b = sample.len() - rp.n_a;
        rp
    }

    /// Restricts the rectangle to `λ >= 0`.
    pub fn clip_nonnegative_half_length(mut self) -> Self {
        self.l_minus = self.l_minus.max(0.0);
        self
    }

    /// `Σ_{I_a} (a_i - α)² + Σ_{I_b} (b_i - β)²` expanded over the sums.
    pub fn objective(&self, mu: f64, lambda: f64) -> f64 {
        let (alpha, beta) = (mu - lambda, mu + lambda);
        let value =
            self.sum_a2 - 2.0 * self.sum_a * alpha + self.n_a as f64 * alpha * alpha + self.sum_b2
                - 2.0 * self.sum_b * beta
                + self.n_b as f64 * beta * beta;
        value.max(0.0)
    }

    /// Gradient of the objective with respect to `(μ, λ)`.
    pub fn gradient(&self, mu: f64, lambda: f64) -> (f64, f64) {
        let (na, nb) = (self.n_a as f64, self.n_b as f64);
        let (a, b) = (self.sum_a, self.sum_b);
        (
            2.0 * (-a - b + (na + nb) * mu - (na - nb) * lambda),
            2.0 * (a - b - (na - nb) * mu + (na + nb) * lambda),
        )
    }

    fn n(&self) -> f64 {
        (self.n_a + self.n_b) as f64
    }

    /// Minimizer in `λ` along the vertical line `μ = mu`.
    fn best_lambda_at(&self, mu: f64) -> f64 {
        ((self.n_a as f64 - self.n_b as f64) * mu - self.sum_a + self.sum_b) / self.n()
    }

    /// Minimizer in `μ` along the horizontal line `λ = lambda`.
    fn best_mu_at(&self, lambda: f64) -> f64 {
        (self.sum_a + self.sum_b + (self.n_a as f64 - self.n_b as f64) * lambda) / self.n()
    }

    fn contains(&self, mu: f64, lambda: f64) -> bool {
        self.m_minus <= mu && mu <= self.m_plus && self.l_minus <= lambda && lambda <= self.l_plus
    }
}

/// How the rectangle minimizer was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveCase {
    /// The unconstrained minimizer lies in the rectangle.
    Interior,
    /// The projection of the unconstrained minimizer falls on an edge.
    Edge,
    /// The projection falls on a corner.
    Corner,
    /// One index set is empty and the objective is flat along a diagonal.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleSolution {
    pub mu: f64,
    pub lambda: f64,
    pub value: f64,
    /// The minimum is attained on a whole segment; `(mu, lambda)` is its midpoint.
    pub degenerate: bool,
    pub case: SolveCase,
    /// Both inward directional derivatives were negative at the corner. This
    /// contradicts convexity and is only reachable through rounding.
    pub forbidden_corner: bool,
}

impl RectangleSolution {
    pub fn center(&self) -> Result<Interval> {
        Interval::new(self.mu - self.lambda, self.mu + self.lambda)
    }
}

/// Minimizes the rectangle's quadratic over the closed (possibly unbounded)
/// rectangle.
pub fn solve_rectangle(rp: &RectangleSubproblem) -> Result<RectangleSolution> {
    let bounds = [rp.m_minus, rp.m_plus, rp.l_minus, rp.l_plus];
    if bounds.iter().any(|v| v.is_nan()) || rp.m_minus > rp.m_plus || rp.l_minus > rp.l_plus {
        return Err(Error::InfeasibleRectangle {
            m_minus: rp.m_minus,
            m_plus: rp.m_plus,
            l_minus: rp.l_minus,
            l_plus: rp.l_plus,
        });
    }
    if rp.n_a == 0 || rp.n_b == 0 {
        return Ok(solve_degenerate(rp));
    }

    let alpha = rp.sum_a / rp.n_a as f64;
    let beta = rp.sum_b / rp.n_b as f64;
    let (mu, lambda) = (0.5 * (alpha + beta), 0.5 * (beta - alpha));
    if rp.contains(mu, lambda) {
        return Ok(finish(rp, mu, lambda, SolveCase::Interior, false));
    }

    let mu_proj = mu.clamp(rp.m_minus, rp.m_plus);
    let lambda_proj = lambda.clamp(rp.l_minus, rp.l_plus);
    let mu_clamped = mu_proj != mu;
    let lambda_clamped = lambda_proj != lambda;

    if mu_clamped && !lambda_clamped {
        // vertical edge: slide along λ
        let l = rp.best_lambda_at(mu_proj).clamp(rp.l_minus, rp.l_plus);
        return Ok(finish(rp, mu_proj, l, SolveCase::Edge, false));
    }
    if lambda_clamped && !mu_clamped {
        let m = rp.best_mu_at(lambda_proj).clamp(rp.m_minus, rp.m_plus);
        return Ok(finish(rp, m, lambda_proj, SolveCase::Edge, false));
    }

    // Corner. Orient the gradient so that positive means "increasing when
    // moving into the rectangle".
    let (g_mu, g_lambda) = rp.gradient(mu_proj, lambda_proj);
    let inward_mu = if mu_proj == rp.m_minus { g_mu } else { -g_mu };
    let inward_lambda = if lambda_proj == rp.l_minus {
        g_lambda
    } else {
        -g_lambda
    };
    let along_horizontal = || {
        let m = rp.best_mu_at(lambda_proj).clamp(rp.m_minus, rp.m_plus);
        (m, lambda_proj)
    };
    let along_vertical = || {
        let l = rp.best_lambda_at(mu_proj).clamp(rp.l_minus, rp.l_plus);
        (mu_proj, l)
    };
    let sol = match (inward_mu >= 0.0, inward_lambda >= 0.0) {
        (true, true) => finish(rp, mu_proj, lambda_proj, SolveCase::Corner, false),
        (false, true) => {
            let (m, l) = along_horizontal();
            finish(rp, m, l, SolveCase::Corner, false)
        }
        (true, false) => {
            let (m, l) = along_vertical();
            finish(rp, m, l, SolveCase::Corner, false)
        }
        (false, false) => {
            let (m1, l1) = along_horizontal();
            let (m2, l2) = along_vertical();
            let (m, l) = if rp.objective(m1, l1) <= rp.objective(m2, l2) {
                (m1, l1)
            } else {
                (m2, l2)
            };
            finish(rp, m, l, SolveCase::Corner, true)
        }
    };
    Ok(sol)
}

fn finish(
    rp: &RectangleSubproblem,
    mu: f64,
    lambda: f64,
    case: SolveCase,
    forbidden_corner: bool,
) -> RectangleSolution {
    RectangleSolution {
        mu,
        lambda,
        value: rp.objective(mu, lambda),
        degenerate: case == SolveCase::Degenerate,
        case,
        forbidden_corner,
    }
}

/// One index set is empty: the objective is a 1-D quadratic in `t = μ + λ`
/// (when `I_a = ∅`) or in `s = μ - λ` (when `I_b = ∅`), constant along the
/// other diagonal. The minimizing `t` is clamped to the range reachable
/// inside the rectangle, and the midpoint of the flat segment is returned
/// (its finite end when the segment is unbounded).
fn solve_degenerate(rp: &RectangleSubproblem) -> RectangleSolution {
    let (mu_lo, mu_hi) = if rp.n_a == 0 {
        let t = (rp.sum_b / rp.n_b as f64).clamp(rp.m_minus + rp.l_minus, rp.m_plus + rp.l_plus);
        // μ + λ = t with λ ∈ [l-, l+]
        (rp.m_minus.max(t - rp.l_plus), rp.m_plus.min(t - rp.l_minus))
    } else {
        let s = (rp.sum_a / rp.n_a as f64).clamp(rp.m_minus - rp.l_plus, rp.m_plus - rp.l_minus);
        // μ - λ = s with λ ∈ [l-, l+]
        (rp.m_minus.max(s + rp.l_minus), rp.m_plus.min(s + rp.l_plus))
    };
    let mu = match (mu_lo.is_finite(), mu_hi.is_finite()) {
        (true, true) => 0.5 * (mu_lo + mu_hi),
        (true, false) => mu_lo,
        (false, true) => mu_hi,
        (false, false) => unreachable!("a rectangle has at least one finite side per axis"),
    }
    // rounding in t - l can leave the segment ends just outside the rectangle
    .clamp(rp.m_minus, rp.m_plus);
    let lambda = if rp.n_a == 0 {
        let t = (rp.sum_b / rp.n_b as f64).clamp(rp.m_minus + rp.l_minus, rp.m_plus + rp.l_plus);
        t - mu
    } else {
        let s = (rp.sum_a / rp.n_a as f64).clamp(rp.m_minus - rp.l_plus, rp.m_plus - rp.l_minus);
        mu - s
    };
    let lambda = lambda.clamp(rp.l_minus, rp.l_plus);
    finish(rp, mu, lambda, SolveCase::Degenerate, false)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanOptions {
    /// Intersect every rectangle with `λ >= 0` from the start.
    pub clip_nonnegative_half_length: bool,
    /// Solve the rectangles on the rayon thread pool.
    #[cfg(feature = "parallel")]
    pub parallel: bool,
}

/// Full outcome of a rectangle scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub estimate: CentralEstimate,
    /// Smallest rectangle value found by the scan (squared dispersion).
    pub min_value: f64,
    /// Rectangle `(j, k)` whose solution won the scan.
    pub winner: (usize, usize),
    pub winner_solution: RectangleSolution,
    pub rectangles: usize,
    pub degenerate_rectangles: usize,
    pub forbidden_corners: usize,
    /// The minimizer set is a segment and the returned center is its midpoint.
    pub flat_valley: bool,
    /// The first pass produced `λ < 0` and the scan was repeated on `λ >= 0`.
    pub clipped: bool,
}

/// Central interval for the L2 combination of Hausdorff distances.
pub fn center_l2_hausdorff(sample: &IntervalSample) -> CentralEstimate {
    scan(sample, ScanOptions::default()).estimate
}

pub fn scan(sample: &IntervalSample, options: ScanOptions) -> ScanReport {
    let bp = breakpoints(sample);
    let mut report = scan_rectangles(sample, &bp, options);
    if report.winner_solution.lambda < 0.0 && !options.clip_nonnegative_half_length {
        // Cannot happen for valid samples (lowering λ below 0 only increases
        // every |l_i - λ|), but the rectangles do span λ < 0.
        let clipped = ScanOptions {
            clip_nonnegative_half_length: true,
            ..options
        };
        report = scan_rectangles(sample, &bp, clipped);
        report.clipped = true;
    }
    report
}

const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy)]
struct RectangleSummary {
    value: f64,
    degenerate: bool,
    forbidden_corner: bool,
}

fn scan_rectangles(sample: &IntervalSample, bp: &Breakpoints, options: ScanOptions) -> ScanReport {
    let (rows, cols) = (bp.mid_cells(), bp.half_cells());
    let solve = |j: usize, k: usize| {
        let mut rp = RectangleSubproblem::build(sample, bp, j, k);
        if options.clip_nonnegative_half_length {
            rp = rp.clip_nonnegative_half_length();
        }
        solve_rectangle(&rp).expect("breakpoint rectangles are feasible")
    };

    // Only the values are kept; the winning rectangle is solved again below.
    let summarize = |idx: usize| {
        let sol = solve(idx / cols, idx % cols);
        RectangleSummary {
            value: sol.value,
            degenerate: sol.degenerate,
            forbidden_corner: sol.forbidden_corner,
        }
    };
    #[cfg(feature = "parallel")]
    let summaries: Vec<RectangleSummary> = if options.parallel {
        use rayon::prelude::*;
        (0..rows * cols).into_par_iter().map(summarize).collect()
    } else {
        (0..rows * cols).map(summarize).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let summaries: Vec<RectangleSummary> = (0..rows * cols).map(summarize).collect();

    let min_value = summaries
        .iter()
        .map(|s| s.value)
        .fold(f64::INFINITY, f64::min);
    // lexicographically smallest (j, k) among the near-ties
    let threshold = min_value + TIE_TOLERANCE * (1.0 + min_value);
    let winner_idx = summaries
        .iter()
        .position(|s| s.value <= threshold)
        .expect("at least one rectangle");
    let winner_solution = solve(winner_idx / cols, winner_idx % cols);

    let (center, flat_valley) = match flat_valley_midpoint(sample) {
        Some((c, value)) if value <= threshold => (c, true),
        _ => (
            winner_solution
                .center()
                .expect("winning rectangle solution has λ >= 0"),
            false,
        ),
    };

    ScanReport {
        estimate: CentralEstimate::at(sample, center, CentralMethod::L2Hausdorff),
        min_value,
        winner: (winner_idx / cols, winner_idx % cols),
        winner_solution,
        rectangles: summaries.len(),
        degenerate_rectangles: summaries.iter().filter(|s| s.degenerate).count(),
        forbidden_corners: summaries.iter().filter(|s| s.forbidden_corner).count(),
        flat_valley,
        clipped: options.clip_nonnegative_half_length,
    }
}

/// Canonical representative when the minimizer is not unique.
///
/// `F(α, β) >= Σ (b_i - β)² >= Σ (b_i - b̄)²`, with equality along
/// `β = b̄` exactly for the `α` satisfying `|a_i - α| <= |b_i - b̄|` for all
/// `i`. If that set of `α` is non-empty it is the whole set of minimizers and
/// its midpoint is returned; the same holds with the roles of the bounds
/// swapped. Otherwise the minimizer is unique (every piece with both index
/// sets non-empty is strictly convex) and `None` is returned.
fn flat_valley_midpoint(sample: &IntervalSample) -> Option<(Interval, f64)> {
    let lowers = sample.lowers();
    let uppers = sample.uppers();
    let slack = |values: &[f64]| 1e-12 * (1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs())));

    let valley = |fixed: &[f64], free: &[f64]| -> Option<(f64, f64, f64)> {
        let center = mean(fixed);
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (&f, &x) in fixed.iter().zip(free) {
            let r = (f - center).abs();
            lo = lo.max(x - r);
            hi = hi.min(x + r);
        }
        if lo > hi + slack(free) {
            return None;
        }
        let value = fixed.iter().map(|f| (f - center) * (f - center)).sum();
        Some((center, 0.5 * (lo + hi), value))
    };

    if let Some((beta, alpha, value)) = valley(&uppers, &lowers) {
        return Interval::new(alpha.min(beta), beta)
            .ok()
            .map(|c| (c, value));
    }
    if let Some((alpha, beta, value)) = valley(&lowers, &uppers) {
        return Interval::new(alpha, beta.max(alpha))
            .ok()
            .map(|c| (c, value));
    }
    None
}
