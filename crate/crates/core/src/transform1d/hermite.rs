use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Grid, SampledSignal};
use crate::error::{LctError, Result};

/// Hermite-Gaussian state parameters. `b_dev` is the frequency standard
/// deviation of the ground state, so `B = b_dev^2` and `A = 1 / (4 B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteState {
    pub n: u32,
    pub t_mean: f64,
    pub omega_mean: f64,
    pub b_dev: f64,
}

impl HermiteState {
    pub fn new(n: u32, t_mean: f64, omega_mean: f64, b_dev: f64) -> Result<Self> {
        if !(b_dev > 0.0 && b_dev.is_finite()) {
            return Err(LctError::InvalidArgument(format!(
                "b_dev must be > 0, got {b_dev}"
            )));
        }
        if !(t_mean.is_finite() && omega_mean.is_finite()) {
            return Err(LctError::InvalidArgument("means must be finite".into()));
        }
        Ok(Self {
            n,
            t_mean,
            omega_mean,
            b_dev,
        })
    }

    pub fn big_b(&self) -> f64 {
        self.b_dev * self.b_dev
    }

    pub fn big_a(&self) -> f64 {
        0.25 / self.big_b()
    }

    /// Time standard deviation of level `n`: `sqrt((2n+1) A)`.
    pub fn time_sigma(&self) -> f64 {
        ((2 * self.n + 1) as f64 * self.big_a()).sqrt()
    }
}

/// Physicists' Hermite polynomial by `H_{k+1} = 2 x H_k - 2 k H_{k-1}`.
pub fn hermite_poly(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Samples `(2B/pi)^(1/4) (2^n n!)^(-1/2) H_n(sqrt(2B)(t-T)) exp(-B (t-T)^2 - i W t)`.
///
/// The grid must cover `T +- 4 sigma_n`.
pub fn hermite_state(h: &HermiteState, grid: Grid) -> Result<SampledSignal> {
    let grid = Grid::new(grid.t0, grid.dt, grid.count)?;
    let sigma = h.time_sigma();
    let (need_lo, need_hi) = (h.t_mean - 4.0 * sigma, h.t_mean + 4.0 * sigma);
    if grid.t0 > need_lo || grid.end() < need_hi {
        return Err(LctError::GridTooNarrow {
            lo: grid.t0,
            hi: grid.end(),
            need_lo,
            need_hi,
        });
    }
    let big_b = h.big_b();
    let ln_norm = 0.25 * (2.0 * big_b / PI).ln()
        - 0.5 * (h.n as f64 * std::f64::consts::LN_2 + ln_factorial(h.n));
    let scale = (2.0 * big_b).sqrt();
    Ok(SampledSignal::from_fn(grid, |t| {
        let u = t - h.t_mean;
        let hn = hermite_poly(h.n, scale * u);
        let envelope = if hn == 0.0 {
            0.0
        } else {
            hn.signum() * (ln_norm + hn.abs().ln() - big_b * u * u).exp()
        };
        Complex64::from_polar(envelope, -h.omega_mean * t)
    }))
}
