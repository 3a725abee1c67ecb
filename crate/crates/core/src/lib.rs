//! Multidimensional linear canonical transforms over pseudo-Euclidean phase
//! space, plus a 1-D quadrature engine for the integral-transform picture.
//!
//! Phase vectors are stacked as `(p; x)` and a transform acts as
//! `p' = a p + b x`, `x' = c p + d x`. All arithmetic is in natural units.

// `!(x <= tol)` is deliberate throughout: NaN must fail every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bogoliubov;
pub mod cli;
pub mod dispersion;
pub mod error;
pub mod io;
pub mod liealg;
pub mod linalg;
pub mod metric;
pub mod symplectic;
pub mod transform1d;

pub use error::{LctError, Result};
pub use metric::{Metric, Signature};
pub use symplectic::{BlockLct, CanonicalMap, InhomogeneousLct, PhaseVector};
