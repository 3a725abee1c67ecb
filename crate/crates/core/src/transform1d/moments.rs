use num_complex::Complex64;
use rayon::prelude::*;

use super::{dual_grid, SampledSignal};
use crate::error::{LctError, Result};

/// Means and variances in time and angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub t_mean: f64,
    pub omega_mean: f64,
    /// time variance
    pub big_a: f64,
    /// frequency variance
    pub big_b: f64,
}

/// Moments of `|psi(t)|^2` (trapezoid) and of the spectral density
/// `|sum_j psi_j exp(+i w t_j)|^2` on the dual grid (direct sum).
pub fn signal_moments(s: &SampledSignal) -> Result<Moments> {
    let norm = s.norm_sq();
    if !(norm > 0.0) {
        return Err(LctError::ZeroSignal);
    }
    let density = |k: usize, z: &Complex64| s.weight(k) * z.norm_sqr() * s.dt() / norm;
    let t_mean: f64 = s
        .samples()
        .iter()
        .enumerate()
        .map(|(k, z)| s.t(k) * density(k, z))
        .sum();
    let big_a: f64 = s
        .samples()
        .iter()
        .enumerate()
        .map(|(k, z)| (s.t(k) - t_mean).powi(2) * density(k, z))
        .sum();

    let freq = dual_grid(s.grid());
    let spectrum: Vec<f64> = (0..freq.count)
        .into_par_iter()
        .map(|k| {
            let w = freq.t(k);
            s.samples()
                .iter()
                .enumerate()
                .map(|(j, z)| z * Complex64::cis(w * s.t(j)))
                .sum::<Complex64>()
                .norm_sqr()
        })
        .collect();
    let total: f64 = spectrum.iter().sum();
    let omega_mean = spectrum
        .iter()
        .enumerate()
        .map(|(k, p)| freq.t(k) * p)
        .sum::<f64>()
        / total;
    let big_b = spectrum
        .iter()
        .enumerate()
        .map(|(k, p)| (freq.t(k) - omega_mean).powi(2) * p)
        .sum::<f64>()
        / total;
    Ok(Moments {
        t_mean,
        omega_mean,
        big_a,
        big_b,
    })
}
