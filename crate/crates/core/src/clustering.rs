//! Dynamic clustering of hypercubes with exact centrocube prototypes.
//!
//! Each iteration assigns every item to its nearest prototype and then
//! replaces each prototype by the exact centrocube of its cluster. Both steps
//! can only lower `Σ_clusters Σ_members D(x, prototype)^p`, so the recorded
//! criterion is non-increasing (except right after an empty-cluster repair).

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::central::CentralMethod;
use crate::error::{Error, Result};
use crate::hypercube::{centrocube, dispersion_profile, scaled_terms, Hypercube, HypercubeDataset};
use crate::interval::{Exponent, Metric};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClusterDistance {
    Hausdorff,
    L2Bounds,
    L2MidLen,
}

impl ClusterDistance {
    pub fn metric(self) -> Metric {
        match self {
            ClusterDistance::Hausdorff => Metric::Hausdorff,
            ClusterDistance::L2Bounds => Metric::Bounds(Exponent::Two),
            ClusterDistance::L2MidLen => Metric::MidLen(Exponent::Two),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClusterDistance::Hausdorff => "hausdorff",
            ClusterDistance::L2Bounds => "l2-bounds",
            ClusterDistance::L2MidLen => "l2-midlen",
        }
    }
}

impl fmt::Display for ClusterDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClusterDistance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ClusterDistance::Hausdorff,
            ClusterDistance::L2Bounds,
            ClusterDistance::L2MidLen,
        ]
        .into_iter()
        .find(|d| d.name() == s.trim())
        .ok_or_else(|| Error::InvalidConfig(format!("unknown clustering distance {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusteringConfig {
    pub k: usize,
    /// Exponent shared by the distance and the criterion; 1 or 2.
    pub p: Exponent,
    pub distance: ClusterDistance,
    /// Divide each coordinate distance by that coordinate's dispersion over
    /// the full dataset.
    pub normalize: bool,
    pub seed: u64,
    pub max_iter: usize,
}

impl ClusteringConfig {
    pub fn new(k: usize, p: Exponent, distance: ClusterDistance) -> Self {
        Self {
            k,
            p,
            distance,
            normalize: false,
            seed: 0,
            max_iter: 100,
        }
    }

    /// Prototype solver for the configured pairing.
    pub fn method(&self) -> Result<CentralMethod> {
        match (self.p, self.distance) {
            (Exponent::One, ClusterDistance::Hausdorff) => Ok(CentralMethod::L1Hausdorff),
            (Exponent::Two, ClusterDistance::Hausdorff) => Ok(CentralMethod::L2Hausdorff),
            (Exponent::Two, ClusterDistance::L2Bounds) => Ok(CentralMethod::L2Bounds),
            (Exponent::Two, ClusterDistance::L2MidLen) => Ok(CentralMethod::L2MidLen),
            (Exponent::Infinity, _) => Err(Error::InvalidConfig(
                "p = inf is not supported for clustering (the criterion is not additive)".into(),
            )),
            (p, d) => Err(Error::UnsupportedPairing {
                metric: d.to_string(),
                exponent: p.to_string(),
            }),
        }
    }

    fn validate(&self) -> Result<CentralMethod> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        self.method()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringResult {
    pub assignments: Vec<usize>,
    pub prototypes: Vec<Hypercube>,
    /// Criterion after each completed assignment + update iteration.
    pub criterion_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Trace positions whose iteration re-seeded an empty cluster. The
    /// criterion may increase at those steps.
    pub repairs: Vec<usize>,
}

impl ClusteringResult {
    pub fn final_criterion(&self) -> Option<f64> {
        self.criterion_trace.last().copied()
    }

    /// Checks `trace[t + 1] <= trace[t] + tol` for every step that is not a repair.
    pub fn is_monotone(&self, tol: f64) -> bool {
        self.criterion_trace
            .windows(2)
            .enumerate()
            .all(|(t, w)| self.repairs.contains(&(t + 1)) || w[1] <= w[0] + tol)
    }
}

/// Per-coordinate divisors: the global dispersions, or all ones.
fn coordinate_scales(data: &HypercubeDataset, config: &ClusteringConfig) -> Result<Vec<f64>> {
    let method = config.validate()?;
    Ok(if config.normalize {
        dispersion_profile(data, method).dispersions()
    } else {
        vec![1.0; data.dim()]
    })
}

/// `D(x, c)^p` with the coordinate scales applied.
fn powered_distance(
    x: &Hypercube,
    c: &Hypercube,
    metric: Metric,
    p: Exponent,
    scales: &[f64],
) -> Result<f64> {
    if x.dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: x.dim(),
        });
    }
    scaled_terms(x, c, metric, scales).try_fold(0.0, |acc, t| {
        Ok(acc + p.power(t?).expect("finite clustering exponent"))
    })
}

fn criterion_with(
    data: &HypercubeDataset,
    assignments: &[usize],
    prototypes: &[Hypercube],
    config: &ClusteringConfig,
    scales: &[f64],
) -> Result<f64> {
    let metric = config.distance.metric();
    data.items()
        .iter()
        .zip(assignments)
        .try_fold(0.0, |acc, (x, &c)| {
            Ok(acc + powered_distance(x, &prototypes[c], metric, config.p, scales)?)
        })
}

/// `Σ_clusters Σ_members D(x_i, prototype)^p`.
pub fn criterion(
    data: &HypercubeDataset,
    assignments: &[usize],
    prototypes: &[Hypercube],
    config: &ClusteringConfig,
) -> Result<f64> {
    if assignments.len() != data.len() {
        return Err(Error::DimensionMismatch {
            expected: data.len(),
            found: assignments.len(),
        });
    }
    if let Some(&bad) = assignments.iter().find(|&&c| c >= prototypes.len()) {
        return Err(Error::InvalidConfig(format!(
            "assignment {bad} has no prototype"
        )));
    }
    let scales = coordinate_scales(data, config)?;
    criterion_with(data, assignments, prototypes, config, &scales)
}

/// Indices of the first occurrence of every distinct item.
fn distinct_items(data: &HypercubeDataset) -> Vec<usize> {
    let items = data.items();
    (0..items.len())
        .filter(|&i| !items[..i].contains(&items[i]))
        .collect()
}

/// `k` distinct items chosen by a ChaCha8 generator seeded with `config.seed`.
pub fn initial_prototypes(
    data: &HypercubeDataset,
    config: &ClusteringConfig,
) -> Result<Vec<Hypercube>> {
    config.validate()?;
    let distinct = distinct_items(data);
    if config.k > distinct.len() {
        return Err(Error::KTooLarge {
            k: config.k,
            distinct: distinct.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    Ok(index::sample(&mut rng, distinct.len(), config.k)
        .into_iter()
        .map(|i| data.items()[distinct[i]].clone())
        .collect())
}

pub fn cluster(data: &HypercubeDataset, config: &ClusteringConfig) -> Result<ClusteringResult> {
    let init = initial_prototypes(data, config)?;
    cluster_from(data, config, init)
}

/// Runs the iterations from explicit starting prototypes.
pub fn cluster_from(
    data: &HypercubeDataset,
    config: &ClusteringConfig,
    mut prototypes: Vec<Hypercube>,
) -> Result<ClusteringResult> {
    let method = config.validate()?;
    if prototypes.len() != config.k {
        return Err(Error::InvalidConfig(format!(
            "expected {} initial prototypes, got {}",
            config.k,
            prototypes.len()
        )));
    }
    if config.k > data.len() {
        return Err(Error::KTooLarge {
            k: config.k,
            distinct: distinct_items(data).len(),
        });
    }
    let scales = coordinate_scales(data, config)?;
    let metric = config.distance.metric();

    let mut assignments: Option<Vec<usize>> = None;
    let mut trace = Vec::new();
    let mut repairs = Vec::new();
    let mut converged = false;

    for _ in 0..config.max_iter {
        let (mut next, distances) = assign(data, &prototypes, metric, config.p, &scales)?;
        let repaired = repair_empty_clusters(&mut next, &distances, config.k);
        if assignments.as_ref() == Some(&next) {
            converged = true;
            break;
        }
        for (c, proto) in prototypes.iter_mut().enumerate() {
            let members: Vec<usize> = (0..next.len()).filter(|&i| next[i] == c).collect();
            *proto = centrocube(&data.subset(&members)?, method).center;
        }
        trace.push(criterion_with(data, &next, &prototypes, config, &scales)?);
        if repaired {
            repairs.push(trace.len() - 1);
        }
        assignments = Some(next);
    }

    Ok(ClusteringResult {
        assignments: assignments.expect("max_iter >= 1"),
        prototypes,
        iterations: trace.len(),
        criterion_trace: trace,
        converged,
        repairs,
    })
}

/// Nearest prototype for every item (ties go to the lowest cluster index),
/// along with the powered distance to it.
fn assign(
    data: &HypercubeDataset,
    prototypes: &[Hypercube],
    metric: Metric,
    p: Exponent,
    scales: &[f64],
) -> Result<(Vec<usize>, Vec<f64>)> {
    let mut labels = Vec::with_capacity(data.len());
    let mut dists = Vec::with_capacity(data.len());
    for x in data.items() {
        let mut best = (0, f64::INFINITY);
        for (c, proto) in prototypes.iter().enumerate() {
            let d = powered_distance(x, proto, metric, p, scales)?;
            if d < best.1 {
                best = (c, d);
            }
        }
        labels.push(best.0);
        dists.push(best.1);
    }
    Ok((labels, dists))
}

/// Moves the item farthest from its prototype into each empty cluster,
/// taking it only from clusters that keep at least one member.
fn repair_empty_clusters(labels: &mut [usize], dists: &[f64], k: usize) -> bool {
    let mut repaired = false;
    let mut moved = vec![false; labels.len()];
    for empty in 0..k {
        let mut sizes = vec![0usize; k];
        for &c in labels.iter() {
            sizes[c] += 1;
        }
        if sizes[empty] > 0 {
            continue;
        }
        let donor = (0..labels.len())
            .filter(|&i| !moved[i] && sizes[labels[i]] > 1)
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if dists[b] >= dists[i] => Some(b),
                _ => Some(i),
            });
        if let Some(i) = donor {
            labels[i] = empty;
            moved[i] = true;
            repaired = true;
        }
    }
    repaired
}
