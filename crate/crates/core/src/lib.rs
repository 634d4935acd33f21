//! Crest counts, decreasing rearrangements and pointwise Fourier bounds for
//! nonnegative step and piecewise-linear functions.
//!
//! A nonnegative function with `N` crests satisfies
//! `|f^(z)| <= N * pi * sqrt(10) * int_0^{1/z} f*` for every `z > 0`, where
//! `f*` is the decreasing rearrangement. Evaluating the ratio of the two
//! sides over a grid of frequencies gives a certified lower bound on the
//! number of crests (and on the number of roots of `f'` for smooth `f`).
//!
//! ```
//! use crestimate::{bounds, Function};
//!
//! let comb: Function = bounds::comb_example(1).unwrap().into();
//! let cert = bounds::crest_lower_bound(&comb, &[101.0 * std::f64::consts::PI]).unwrap();
//! assert_eq!(cert.crest_lower_bound, 2);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod crests;
pub mod error;
pub mod families;
pub mod hardy;
pub mod io;
pub mod piecewise;
pub mod quad;
pub mod rearrange;
pub mod transform;
pub mod verify;

pub use bounds::{
    comb_example, crest_lower_bound, crest_lower_bound_refined, default_grid, theorem1_bound, BoundCertificate,
    GridSpec, QReport,
};
pub use crests::{count_crests, decompose, CrestReport};
pub use error::{Error, Result};
pub use hardy::{check_corollary2, HardyReport};
pub use piecewise::{from_samples, Function, PiecewiseLinearFunction, SampleMode, StepFunction};
pub use rearrange::{rearrangement, Rearrangement};
pub use transform::fourier;
