use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Grid, Lct1d, SampledSignal};
use crate::error::{LctError, Result};

/// Smallest `|c|` for which the integral kernel is defined.
pub const KERNEL_MIN_C: f64 = 1e-9;

fn check_c(l: &Lct1d) -> Result<()> {
    if !(l.c.abs() >= KERNEL_MIN_C) {
        return Err(LctError::DegenerateKernel { c: l.c.abs() });
    }
    Ok(())
}

fn prefactor(l: &Lct1d) -> Complex64 {
    Complex64::from_polar(
        1.0 / (2.0 * PI * l.c.abs()).sqrt(),
        -FRAC_PI_4 * l.c.signum(),
    )
}

#[inline]
fn phase(l: &Lct1d, t_prime: f64, t: f64) -> f64 {
    (t_prime * t - 0.5 * (l.a * t_prime * t_prime + l.d * t * t)) / l.c
}

/// `C exp[(i/c)(t' t - (a t'^2 + d t^2)/2)]` with
/// `C = exp(-i pi/4 sgn c) / sqrt(2 pi |c|)`.
pub fn lct_kernel(l: &Lct1d, t_prime: f64, t: f64) -> Result<Complex64> {
    check_c(l)?;
    Ok(prefactor(l) * Complex64::cis(phase(l, t_prime, t)))
}

/// Central-difference residuals of the two kernel equations
///
/// ```text
/// i dK/dt' = a (-i dK/dt) + b t K
///     t' K = c (-i dK/dt) + d t K
/// ```
pub fn kernel_pde_residual(l: &Lct1d, t_prime: f64, t: f64, h: f64) -> Result<(f64, f64)> {
    let k = |tp: f64, tt: f64| lct_kernel(l, tp, tt);
    let k0 = k(t_prime, t)?;
    let d_tp = (k(t_prime + h, t)? - k(t_prime - h, t)?) / (2.0 * h);
    let d_t = (k(t_prime, t + h)? - k(t_prime, t - h)?) / (2.0 * h);
    let i = Complex64::i();
    let omega_k = -i * d_t;
    let first = i * d_tp - (omega_k * l.a + k0 * (l.b * t));
    let second = k0 * t_prime - (omega_k * l.c + k0 * (l.d * t));
    Ok((first.norm(), second.norm()))
}

/// Trapezoid quadrature of the integral transform onto `out`.
///
/// Output samples are computed in parallel; each one is a fixed-order sum.
pub fn apply_lct(l: &Lct1d, s: &SampledSignal, out: Grid) -> Result<SampledSignal> {
    check_c(l)?;
    let c0 = prefactor(l) * s.dt();
    let weighted: Vec<(f64, Complex64)> = s
        .samples()
        .iter()
        .enumerate()
        .map(|(j, z)| (s.t(j), z * s.weight(j)))
        .collect();
    let samples: Vec<Complex64> = (0..out.count)
        .into_par_iter()
        .map(|k| {
            let tp = out.t(k);
            let acc: Complex64 = weighted
                .iter()
                .map(|&(t, z)| z * Complex64::cis(phase(l, tp, t)))
                .sum();
            acc * c0
        })
        .collect();
    SampledSignal::new(out.t0, out.dt, samples)
}

/// Dual frequency grid: `d_omega = 2 pi / (n dt)`, `omega_0 = -(n/2) d_omega`.
pub fn dual_grid(g: Grid) -> Grid {
    let dw = 2.0 * PI / (g.count as f64 * g.dt);
    Grid {
        t0: -((g.count / 2) as f64) * dw,
        dt: dw,
        count: g.count,
    }
}

/// Brute-force `Psi(w_k) = dt / sqrt(2 pi) sum_j psi_j exp(-i w_k t_j)` on the dual grid.
pub fn dft_oracle(s: &SampledSignal) -> SampledSignal {
    let out = dual_grid(s.grid());
    let scale = s.dt() / (2.0 * PI).sqrt();
    let samples = (0..out.count)
        .into_par_iter()
        .map(|k| {
            let w = out.t(k);
            let acc: Complex64 = s
                .samples()
                .iter()
                .enumerate()
                .map(|(j, z)| z * Complex64::cis(-w * s.t(j)))
                .sum();
            acc * scale
        })
        .collect();
    SampledSignal {
        t0: out.t0,
        dt: out.dt,
        samples,
    }
}
