//! k-dimensional intervals and their coordinate-wise distances.
//!
//! With `D(x, y) = (Σ_j d(x^j, y^j)^q)^(1/q)` and the same exponent `p = q` in
//! the dispersion, the objective `Σ_i D(x_i, c)^p` splits into one
//! independent problem per coordinate, so the centrocube is the product of
//! the per-coordinate central intervals.

use crate::central::{CentralEstimate, CentralMethod};
use crate::error::{Error, Result};
use crate::interval::{Exponent, Interval, IntervalSample, Metric};

#[derive(Debug, Clone, PartialEq)]
pub struct Hypercube {
    components: Vec<Interval>,
}

impl Hypercube {
    pub fn new(components: Vec<Interval>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self { components })
    }

    pub fn from_bounds(bounds: &[(f64, f64)]) -> Result<Self> {
        let components = bounds
            .iter()
            .map(|&(a, b)| Interval::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &Interval {
        &self.components[j]
    }

    fn check_dim(&self, other: &Hypercube) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// `n >= 1` hypercubes of a common dimension, with one name per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct HypercubeDataset {
    items: Vec<Hypercube>,
    names: Vec<String>,
}

impl HypercubeDataset {
    pub fn new(items: Vec<Hypercube>, names: Vec<String>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptySample);
        }
        let k = names.len();
        if let Some(bad) = items.iter().find(|x| x.dim() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: bad.dim(),
            });
        }
        Ok(Self { items, names })
    }

    /// Names coordinates `x1, x2, ...`.
    pub fn unnamed(items: Vec<Hypercube>) -> Result<Self> {
        let k = items.first().map_or(0, Hypercube::dim);
        Self::new(items, (1..=k).map(|j| format!("x{j}")).collect())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn items(&self) -> &[Hypercube] {
        &self.items
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// All intervals observed on coordinate `j`.
    pub fn coordinate(&self, j: usize) -> IntervalSample {
        IntervalSample::new(self.items.iter().map(|x| x.components[j]).collect())
            .expect("dataset is non-empty")
    }

    /// Sub-dataset made of the given item indices.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        Self::new(
            indices.iter().map(|&i| self.items[i].clone()).collect(),
            self.names.clone(),
        )
    }
}

/// Combines coordinate-wise interval distances with an `L_q` norm.
pub fn dist_hypercube(x: &Hypercube, y: &Hypercube, d: Metric, q: Exponent) -> Result<f64> {
    x.check_dim(y)?;
    Ok(q.aggregate(
        x.components
            .iter()
            .zip(&y.components)
            .map(|(u, v)| d.distance(u, v)),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Centrocube {
    pub center: Hypercube,
    /// `(Σ_i Σ_j d(x_i^j, c^j)^p)^(1/p)`, or the overall maximum for `p = ∞`.
    pub dispersion: f64,
}

/// Product of the per-coordinate central intervals.
///
/// For `p = ∞` the coordinate-wise construction is still applied, although
/// the separability argument above only covers finite exponents.
pub fn centrocube(data: &HypercubeDataset, method: CentralMethod) -> Centrocube {
    let profile = dispersion_profile(data, method);
    let center = Hypercube::new(profile.estimates.iter().map(|e| e.center).collect())
        .expect("dimension >= 1");
    let d = method.metric();
    let dispersion = method.exponent().aggregate(
        data.items
            .iter()
            .flat_map(|x| x.components.iter().zip(&center.components))
            .map(|(u, c)| d.distance(u, c)),
    );
    Centrocube { center, dispersion }
}

/// Central interval and dispersion of every coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionProfile {
    pub method: CentralMethod,
    pub estimates: Vec<CentralEstimate>,
}

impl DispersionProfile {
    pub fn len(&self) -> usize {
        self.estimates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.estimates.is_empty()
    }

    pub fn dispersions(&self) -> Vec<f64> {
        self.estimates.iter().map(|e| e.dispersion).collect()
    }
}

pub fn dispersion_profile(data: &HypercubeDataset, method: CentralMethod) -> DispersionProfile {
    let estimates = (0..data.dim())
        .map(|j| method.center(&data.coordinate(j)))
        .collect();
    DispersionProfile { method, estimates }
}

/// `d(x^j, y^j) / s_j`, where a zero scale is only allowed when the distance
/// is zero too (the term is then 0).
pub(crate) fn scaled_terms<'a>(
    x: &'a Hypercube,
    y: &'a Hypercube,
    d: Metric,
    scales: &'a [f64],
) -> impl Iterator<Item = Result<f64>> + 'a {
    x.components
        .iter()
        .zip(&y.components)
        .zip(scales)
        .enumerate()
        .map(move |(j, ((u, v), &s))| {
            let dist = d.distance(u, v);
            if dist == 0.0 {
                Ok(0.0)
            } else if s > 0.0 {
                Ok(dist / s)
            } else {
                Err(Error::ZeroDispersion { coordinate: j })
            }
        })
}

/// Coordinate distances divided by the coordinate dispersions of `profile`,
/// then combined with an `L_q` norm. `q` must equal the exponent the profile
/// was computed with.
pub fn normalized_dist(
    x: &Hypercube,
    y: &Hypercube,
    profile: &DispersionProfile,
    d: Metric,
    q: Exponent,
) -> Result<f64> {
    x.check_dim(y)?;
    if profile.len() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: profile.len(),
            found: x.dim(),
        });
    }
    let p = profile.method.exponent();
    if q != p {
        return Err(Error::InvalidConfig(format!(
            "distance exponent {q} differs from the profile exponent {p}"
        )));
    }
    let scales = profile.dispersions();
    let terms = scaled_terms(x, y, d, &scales).collect::<Result<Vec<_>>>()?;
    Ok(q.aggregate(terms))
}
