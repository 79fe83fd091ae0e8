//! Interval values, samples, and the distances between intervals.
//!
//! An interval `[a, b]` can equivalently be described by its midpoint
//! `m = (a + b) / 2` and half-length `l = (b - a) / 2`. Every distance here is
//! defined on one of those two coordinate systems.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A closed, bounded real interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lower: f64,
    upper: f64,
}

impl Interval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::NonFiniteBound { lower, upper });
        }
        if lower > upper {
            return Err(Error::LowerExceedsUpper { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// Builds `[mid - half, mid + half]`. A negative half-length is rejected
    /// through the usual bound check.
    pub fn from_mid_half(mid: f64, half: f64) -> Result<Self> {
        Self::new(mid - half, mid + half)
    }

    #[inline]
    pub fn lower(&self) -> f64 {
        self.lower
    }

    #[inline]
    pub fn upper(&self) -> f64 {
        self.upper
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    #[inline]
    pub fn half_length(&self) -> f64 {
        0.5 * (self.upper - self.lower)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }

    pub fn translate(&self, shift: f64) -> Result<Self> {
        Self::new(self.lower + shift, self.upper + shift)
    }

    /// Multiplies both bounds by a positive factor.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        if factor <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        Self::new(self.lower * factor, self.upper * factor)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// Non-empty, ordered collection of intervals observed on one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSample {
    items: Vec<Interval>,
}

impl IntervalSample {
    pub fn new(items: Vec<Interval>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(Self { items })
    }

    pub fn from_bounds(bounds: &[(f64, f64)]) -> Result<Self> {
        let items = bounds
            .iter()
            .map(|&(a, b)| Interval::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(items)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// Always false; kept for the usual `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.items.iter()
    }

    pub fn get(&self, index: usize) -> Option<&Interval> {
        self.items.get(index)
    }

    pub fn lowers(&self) -> Vec<f64> {
        self.items.iter().map(Interval::lower).collect()
    }

    pub fn uppers(&self) -> Vec<f64> {
        self.items.iter().map(Interval::upper).collect()
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.items.iter().map(Interval::midpoint).collect()
    }

    pub fn half_lengths(&self) -> Vec<f64> {
        self.items.iter().map(Interval::half_length).collect()
    }

    pub fn translate(&self, shift: f64) -> Result<Self> {
        let items = self
            .items
            .iter()
            .map(|x| x.translate(shift))
            .collect::<Result<Vec<_>>>()?;
        Self::new(items)
    }

    pub fn into_inner(self) -> Vec<Interval> {
        self.items
    }
}

impl<'a> IntoIterator for &'a IntervalSample {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// Exponent of an `L_p` aggregation. Only `1`, `2` and `∞` are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    One,
    Two,
    Infinity,
}

impl Exponent {
    /// `(Σ v^p)^(1/p)`, or `max v` for `p = ∞`. Values are assumed non-negative.
    pub fn aggregate<I: IntoIterator<Item = f64>>(self, values: I) -> f64 {
        match self {
            Exponent::One => values.into_iter().sum(),
            Exponent::Two => values.into_iter().map(|v| v * v).sum::<f64>().sqrt(),
            Exponent::Infinity => values.into_iter().fold(0.0, f64::max),
        }
    }

    /// `v^p` for finite exponents. `None` for `∞`.
    pub fn power(self, v: f64) -> Option<f64> {
        match self {
            Exponent::One => Some(v),
            Exponent::Two => Some(v * v),
            Exponent::Infinity => None,
        }
    }

    /// L_p norm of a two-component vector.
    fn norm2(self, x: f64, y: f64) -> f64 {
        match self {
            Exponent::One => x.abs() + y.abs(),
            Exponent::Two => x.hypot(y),
            Exponent::Infinity => x.abs().max(y.abs()),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exponent::One => "1",
            Exponent::Two => "2",
            Exponent::Infinity => "inf",
        })
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" => Ok(Exponent::One),
            "2" => Ok(Exponent::Two),
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => Err(Error::InvalidConfig(format!(
                "exponent must be 1, 2 or inf, got {other:?}"
            ))),
        }
    }
}

/// Distance between two intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// `max(|a1 - a2|, |b1 - b2|)`.
    Hausdorff,
    /// L_p distance between the `(lower, upper)` vectors.
    Bounds(Exponent),
    /// L_p distance between the `(midpoint, half-length)` vectors.
    MidLen(Exponent),
}

impl Metric {
    pub fn distance(self, x: &Interval, y: &Interval) -> f64 {
        match self {
            Metric::Hausdorff => hausdorff(x, y),
            Metric::Bounds(p) => lp_bounds_dist(x, y, p),
            Metric::MidLen(p) => lp_midlen_dist(x, y, p),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Hausdorff => f.write_str("hausdorff"),
            Metric::Bounds(p) => write!(f, "l{p}-bounds"),
            Metric::MidLen(p) => write!(f, "l{p}-midlen"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "hausdorff" {
            return Ok(Metric::Hausdorff);
        }
        let parsed = s.strip_prefix('l').and_then(|rest| {
            let (p, kind) = rest.split_once('-')?;
            let p = p.parse::<Exponent>().ok()?;
            match kind {
                "bounds" => Some(Metric::Bounds(p)),
                "midlen" => Some(Metric::MidLen(p)),
                _ => None,
            }
        });
        parsed.ok_or_else(|| Error::InvalidConfig(format!("unknown distance {s:?}")))
    }
}

/// Hausdorff distance between intervals, from the bounds.
pub fn hausdorff(x: &Interval, y: &Interval) -> f64 {
    (x.lower - y.lower).abs().max((x.upper - y.upper).abs())
}

/// Hausdorff distance written as `|m1 - m2| + |l1 - l2|`.
pub fn hausdorff_midlen(x: &Interval, y: &Interval) -> f64 {
    (x.midpoint() - y.midpoint()).abs() + (x.half_length() - y.half_length()).abs()
}

pub fn lp_bounds_dist(x: &Interval, y: &Interval, p: Exponent) -> f64 {
    p.norm2(x.lower - y.lower, x.upper - y.upper)
}

pub fn lp_midlen_dist(x: &Interval, y: &Interval, p: Exponent) -> f64 {
    p.norm2(
        x.midpoint() - y.midpoint(),
        x.half_length() - y.half_length(),
    )
}
