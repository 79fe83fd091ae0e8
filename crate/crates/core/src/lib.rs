//! Central tendency and dispersion for interval-valued data.
//!
//! A sample of intervals `[a_i, b_i]` is summarized by the *central interval*
//! minimizing `S_p(c) = (Σ d(x_i, c)^p)^(1/p)` for an interval distance `d`,
//! and by the attained value `S_p(ĉ)`, its *dispersion*. Five pairings are
//! supported ([`CentralMethod`]):
//!
//! * Hausdorff distance with `p = 1`, `p = ∞` and `p = 2`,
//! * L2 distance on the bounds or on (midpoint, half-length), with `p = 2`.
//!
//! The Hausdorff/`p = 2` case has no closed form; [`l2_hausdorff`] solves it
//! exactly by scanning a rectangle decomposition of the (midpoint,
//! half-length) plane. Hypercubes (products of intervals) are handled
//! coordinate-wise in [`hypercube`], and [`clustering`] uses the exact
//! centrocubes as prototypes in a dynamic clustering loop.
//!
//! ```
//! use interval_centers::{CentralMethod, IntervalSample};
//!
//! let sample = IntervalSample::from_bounds(&[(0.0, 2.0), (1.0, 5.0), (4.0, 6.0)]).unwrap();
//! let est = CentralMethod::L1Hausdorff.center(&sample);
//! assert_eq!((est.center.lower(), est.center.upper()), (2.0, 4.0));
//! assert_eq!(est.dispersion, 5.0);
//! ```

pub mod central;
pub mod clustering;
pub mod error;
pub mod hypercube;
pub mod interval;
pub mod l2_hausdorff;
pub mod oracle;

pub use central::{
    center_l1_hausdorff, center_l2_bounds, center_l2_midlen, center_linf_hausdorff,
    eval_dispersion, CentralEstimate, CentralMethod,
};
pub use clustering::{cluster, ClusterDistance, ClusteringConfig, ClusteringResult};
pub use error::{Error, Result};
pub use hypercube::{
    centrocube, dispersion_profile, dist_hypercube, normalized_dist, Centrocube, DispersionProfile,
    Hypercube, HypercubeDataset,
};
pub use interval::{
    hausdorff, hausdorff_midlen, lp_bounds_dist, lp_midlen_dist, Exponent, Interval,
    IntervalSample, Metric,
};
pub use l2_hausdorff::center_l2_hausdorff;
