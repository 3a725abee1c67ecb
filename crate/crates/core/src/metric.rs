//! Signatures, diagonal metrics and the symplectic form.
//!
//! Directions are always ordered with every `+1` entry before every `-1`
//! entry, so index 0 is a positive (time-like) direction whenever
//! `n_plus > 0`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{LctError, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Newtonian constant of gravitation, m^3 kg^-1 s^-2 (CODATA 2018).
pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;
/// Reduced Planck constant, J s.
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;

/// Counts of positive and negative metric directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_minus: usize) -> Result<Self> {
        if n_plus + n_minus == 0 {
            return Err(LctError::EmptySignature);
        }
        Ok(Self { n_plus, n_minus })
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// Minkowski signature (1, 3).
    pub fn minkowski() -> Self {
        Self {
            n_plus: 1,
            n_minus: 3,
        }
    }

    /// Every signature with `1 <= n_plus + n_minus <= max_dim`.
    pub fn all_up_to(max_dim: usize) -> Vec<Signature> {
        (1..=max_dim)
            .flat_map(|n| {
                (0..=n).rev().map(move |p| Signature {
                    n_plus: p,
                    n_minus: n - p,
                })
            })
            .collect()
    }
}

/// Diagonal metric with entries in {+1, -1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    signature: Signature,
    diag: Vec<f64>,
}

impl Metric {
    pub fn new(signature: Signature) -> Result<Self> {
        metric_matrix(signature)
    }

    /// Euclidean metric of dimension `n`.
    pub fn euclidean(n: usize) -> Result<Self> {
        Self::new(Signature::new(n, 0)?)
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn entry(&self, i: usize) -> f64 {
        self.diag[i]
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.diag))
    }

    /// `eta * m * eta` without a matrix product (sign flips only, so exact).
    pub fn sandwich(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
            self.diag[i] * m[(i, j)] * self.diag[j]
        })
    }

    /// `eta * m` (row sign flips).
    pub fn left(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| self.diag[i] * m[(i, j)])
    }

    /// Block-diagonal `diag(eta, eta)` of size 2N.
    pub fn doubled(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(
            2 * n,
            2 * n,
            |i, j| if i == j { self.diag[i % n] } else { 0.0 },
        )
    }
}

/// Builds the diagonal metric for a signature.
pub fn metric_matrix(sig: Signature) -> Result<Metric> {
    if sig.dim() == 0 {
        return Err(LctError::EmptySignature);
    }
    let diag = std::iter::repeat_n(1.0, sig.n_plus)
        .chain(std::iter::repeat_n(-1.0, sig.n_minus))
        .collect();
    Ok(Metric {
        signature: sig,
        diag,
    })
}

/// The 2N x 2N form `[[0, eta], [-eta, 0]]`.
pub fn omega_matrix(metric: &Metric) -> DMatrix<f64> {
    let n = metric.dim();
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for (i, &e) in metric.diag().iter().enumerate() {
        omega[(i, n + i)] = e;
        omega[(n + i, i)] = -e;
    }
    omega
}

/// Momentum/length coupling `c^3 / G` in kg/s.
///
/// Documentation only: all transform arithmetic runs in natural units.
pub fn coupling_constant_si() -> f64 {
    SPEED_OF_LIGHT.powi(3) / GRAVITATIONAL_CONSTANT
}
