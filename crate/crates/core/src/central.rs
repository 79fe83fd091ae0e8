//! Closed-form central intervals.
//!
//! For a sample `x_1..x_n`, a central interval minimizes the dispersion
//! `S_p(c) = (Σ d(x_i, c)^p)^(1/p)` (or `max_i d(x_i, c)` for `p = ∞`).
//! Four `(d, p)` pairings have explicit minimizers:
//!
//! | method          | d                 | p | minimizer                               |
//! |-----------------|-------------------|---|-----------------------------------------|
//! | `L1Hausdorff`   | Hausdorff         | 1 | median midpoint, median half-length     |
//! | `LinfHausdorff` | Hausdorff         | ∞ | midrange of lowers, midrange of uppers  |
//! | `L2Bounds`      | L2 on bounds      | 2 | mean lower, mean upper                  |
//! | `L2MidLen`      | L2 on (mid, half) | 2 | mean midpoint, mean half-length         |
//!
//! The fifth pairing, Hausdorff with `p = 2`, lives in [`crate::l2_hausdorff`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interval::{Exponent, Interval, IntervalSample, Metric};
use crate::l2_hausdorff;

/// One of the five supported `(distance, exponent)` pairings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CentralMethod {
    L1Hausdorff,
    LinfHausdorff,
    L2Bounds,
    L2MidLen,
    L2Hausdorff,
}

impl CentralMethod {
    pub const ALL: [CentralMethod; 5] = [
        CentralMethod::L1Hausdorff,
        CentralMethod::LinfHausdorff,
        CentralMethod::L2Bounds,
        CentralMethod::L2MidLen,
        CentralMethod::L2Hausdorff,
    ];

    pub fn exponent(self) -> Exponent {
        match self {
            CentralMethod::L1Hausdorff => Exponent::One,
            CentralMethod::LinfHausdorff => Exponent::Infinity,
            CentralMethod::L2Bounds | CentralMethod::L2MidLen | CentralMethod::L2Hausdorff => {
                Exponent::Two
            }
        }
    }

    pub fn metric(self) -> Metric {
        match self {
            CentralMethod::L1Hausdorff
            | CentralMethod::LinfHausdorff
            | CentralMethod::L2Hausdorff => Metric::Hausdorff,
            CentralMethod::L2Bounds => Metric::Bounds(Exponent::Two),
            CentralMethod::L2MidLen => Metric::MidLen(Exponent::Two),
        }
    }

    /// Looks up the solver for a distance aggregated with exponent `p`.
    ///
    /// The L1 distance in midpoint/half-length space and the L∞ distance on the
    /// bounds coincide with Hausdorff and are accepted as aliases.
    pub fn for_pairing(metric: Metric, p: Exponent) -> Result<Self> {
        use Exponent::*;
        let hausdorff_like = matches!(
            metric,
            Metric::Hausdorff | Metric::MidLen(One) | Metric::Bounds(Infinity)
        );
        match (metric, p) {
            (_, One) if hausdorff_like => Ok(CentralMethod::L1Hausdorff),
            (_, Infinity) if hausdorff_like => Ok(CentralMethod::LinfHausdorff),
            (_, Two) if hausdorff_like => Ok(CentralMethod::L2Hausdorff),
            (Metric::Bounds(Two), Two) => Ok(CentralMethod::L2Bounds),
            (Metric::MidLen(Two), Two) => Ok(CentralMethod::L2MidLen),
            _ => Err(Error::UnsupportedPairing {
                metric: metric.to_string(),
                exponent: p.to_string(),
            }),
        }
    }

    /// Command-line name of the method.
    pub fn name(self) -> &'static str {
        match self {
            CentralMethod::L1Hausdorff => "median",
            CentralMethod::LinfHausdorff => "midrange",
            CentralMethod::L2Bounds => "mean-bounds",
            CentralMethod::L2MidLen => "mean-midlen",
            CentralMethod::L2Hausdorff => "l2-hausdorff",
        }
    }

    pub fn center(self, sample: &IntervalSample) -> CentralEstimate {
        match self {
            CentralMethod::L1Hausdorff => center_l1_hausdorff(sample),
            CentralMethod::LinfHausdorff => center_linf_hausdorff(sample),
            CentralMethod::L2Bounds => center_l2_bounds(sample),
            CentralMethod::L2MidLen => center_l2_midlen(sample),
            CentralMethod::L2Hausdorff => l2_hausdorff::center_l2_hausdorff(sample),
        }
    }
}

impl fmt::Display for CentralMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CentralMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CentralMethod::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::InvalidConfig(format!("unknown method {s:?}")))
    }
}

/// A central interval together with its dispersion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralEstimate {
    pub center: Interval,
    pub dispersion: f64,
    pub method: CentralMethod,
}

impl CentralEstimate {
    pub(crate) fn at(sample: &IntervalSample, center: Interval, method: CentralMethod) -> Self {
        let dispersion = eval_dispersion(sample, &center, method.exponent(), method.metric());
        Self {
            center,
            dispersion,
            method,
        }
    }

    pub fn exponent(&self) -> Exponent {
        self.method.exponent()
    }
}

/// `S_p(c)` for an arbitrary distance and exponent.
pub fn eval_dispersion(sample: &IntervalSample, c: &Interval, p: Exponent, metric: Metric) -> f64 {
    p.aggregate(sample.iter().map(|x| metric.distance(x, c)))
}

/// Median; for even lengths the average of the two middle order statistics.
pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// `(min + max) / 2`, the minimizer of `max_i |x_i - c|`.
pub(crate) fn midrange(values: &[f64]) -> f64 {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    0.5 * (lo + hi)
}

fn from_mid_half(mid: f64, half: f64) -> Interval {
    // half >= 0 always holds for averages/medians of half-lengths
    Interval::from_mid_half(mid, half).expect("non-negative half-length")
}

/// Median midpoint and median half-length. With an even sample size any value
/// between the two middle order statistics is optimal; the average is returned.
pub fn center_l1_hausdorff(sample: &IntervalSample) -> CentralEstimate {
    let mu = median(&sample.midpoints());
    let lambda = median(&sample.half_lengths());
    CentralEstimate::at(
        sample,
        from_mid_half(mu, lambda),
        CentralMethod::L1Hausdorff,
    )
}

/// Midrange of the lower bounds and midrange of the upper bounds.
///
/// Note that the half-ranges `(a_max - a_min) / 2` and `(b_max - b_min) / 2`
/// are the attained maxima (their larger one is the dispersion), not the
/// location of the minimizer.
pub fn center_linf_hausdorff(sample: &IntervalSample) -> CentralEstimate {
    let alpha = midrange(&sample.lowers());
    let beta = midrange(&sample.uppers());
    // a_min <= b_min and a_max <= b_max, so alpha <= beta
    let center = Interval::new(alpha, beta).expect("midranges are ordered");
    CentralEstimate::at(sample, center, CentralMethod::LinfHausdorff)
}

pub fn center_l2_bounds(sample: &IntervalSample) -> CentralEstimate {
    let alpha = mean(&sample.lowers());
    let beta = mean(&sample.uppers());
    // summing pointwise-ordered values with monotone rounding keeps alpha <= beta
    let center = Interval::new(alpha, beta).expect("means are ordered");
    CentralEstimate::at(sample, center, CentralMethod::L2Bounds)
}

pub fn center_l2_midlen(sample: &IntervalSample) -> CentralEstimate {
    let mu = mean(&sample.midpoints());
    let lambda = mean(&sample.half_lengths());
    CentralEstimate::at(sample, from_mid_half(mu, lambda), CentralMethod::L2MidLen)
}
