//! One-dimensional LCT integral transform on uniformly sampled signals.
//!
//! Parameters follow the block convention with `p -> omega`, `x -> t`:
//! `omega' = a omega + b t`, `t' = c omega + d t`. The frequency operator
//! acts as `i d/dt`, so `exp(-i W t)` has frequency `+W`.

mod hermite;
mod kernel;
mod moments;

pub use hermite::{hermite_poly, hermite_state, HermiteState};
pub use kernel::{apply_lct, dft_oracle, dual_grid, kernel_pde_residual, lct_kernel, KERNEL_MIN_C};
pub use moments::{signal_moments, Moments};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{LctError, Result};
use crate::metric::Metric;
use crate::symplectic::BlockLct;

/// Determinant tolerance for [`Lct1d`].
pub const DET_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lct1d {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Lct1d {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let residual = (a * d - b * c - 1.0).abs();
        if !(residual <= DET_TOL) {
            return Err(LctError::NotSymplectic {
                residual,
                tol: DET_TOL,
            });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_block(l: &BlockLct) -> Result<Self> {
        if l.dim() != 1 {
            return Err(LctError::DimensionMismatch(format!(
                "1-D transform expected, got dimension {}",
                l.dim()
            )));
        }
        // a 1-D metric of either sign gives the same group
        Self::new(l.a()[(0, 0)], l.b()[(0, 0)], l.c()[(0, 0)], l.d()[(0, 0)])
    }

    pub fn to_block(&self) -> BlockLct {
        let m = |v| DMatrix::from_element(1, 1, v);
        BlockLct::new(
            m(self.a),
            m(self.b),
            m(self.c),
            m(self.d),
            Metric::euclidean(1).expect("dimension 1"),
            DET_TOL,
        )
        .expect("determinant checked at construction")
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self o first`.
    pub fn compose(&self, first: &Lct1d) -> Self {
        Self {
            a: self.a * first.a + self.b * first.c,
            b: self.a * first.b + self.b * first.d,
            c: self.c * first.a + self.d * first.c,
            d: self.c * first.b + self.d * first.d,
        }
    }
}

/// `a = d = cos theta`, `b = sin theta`, `c = -sin theta`.
pub fn fractional_fourier_params(theta: f64) -> Lct1d {
    let (s, c) = theta.sin_cos();
    Lct1d {
        a: c,
        b: s,
        c: -s,
        d: c,
    }
}

/// Uniform grid `t_k = t0 + k dt`, `k < count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub t0: f64,
    pub dt: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(t0: f64, dt: f64, count: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite() && t0.is_finite()) {
            return Err(LctError::InvalidArgument(format!(
                "grid needs finite t0 and dt > 0, got t0 = {t0}, dt = {dt}"
            )));
        }
        if count < 2 {
            return Err(LctError::InvalidArgument(format!(
                "grid needs at least 2 samples, got {count}"
            )));
        }
        Ok(Self { t0, dt, count })
    }

    /// `count` points spanning `[center - half_width, center + half_width]`.
    pub fn centered(center: f64, half_width: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Self::new(center, 1.0, count);
        }
        Self::new(
            center - half_width,
            2.0 * half_width / (count - 1) as f64,
            count,
        )
    }

    pub fn t(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn end(&self) -> f64 {
        self.t(self.count - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|k| self.t(k))
    }
}

/// Uniformly sampled complex signal.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    t0: f64,
    dt: f64,
    samples: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(t0: f64, dt: f64, samples: Vec<Complex64>) -> Result<Self> {
        Grid::new(t0, dt, samples.len()).map_err(|e| LctError::InvalidSignal(e.to_string()))?;
        if samples
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(LctError::InvalidSignal("non-finite sample".into()));
        }
        Ok(Self { t0, dt, samples })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            t0: grid.t0,
            dt: grid.dt,
            samples: grid.points().map(f).collect(),
        }
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn grid(&self) -> Grid {
        Grid {
            t0: self.t0,
            dt: self.dt,
            count: self.samples.len(),
        }
    }

    pub fn t(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    /// Trapezoid weight of sample `k`, in units of `dt`.
    pub(crate) fn weight(&self, k: usize) -> f64 {
        if k == 0 || k + 1 == self.samples.len() {
            0.5
        } else {
            1.0
        }
    }

    /// Trapezoid `int |psi|^2 dt`.
    pub fn norm_sq(&self) -> f64 {
        self.samples
            .iter()
            .enumerate()
            .map(|(k, z)| self.weight(k) * z.norm_sqr())
            .sum::<f64>()
            * self.dt
    }

    /// Trapezoid `int conj(self) other dt`; grids must match.
    pub fn inner(&self, other: &SampledSignal) -> Result<Complex64> {
        if self.grid() != other.grid() {
            return Err(LctError::InvalidSignal(
                "inner product needs identical grids".into(),
            ));
        }
        let s: Complex64 = self
            .samples
            .iter()
            .zip(&other.samples)
            .enumerate()
            .map(|(k, (x, y))| x.conj() * y * self.weight(k))
            .sum();
        Ok(s * self.dt)
    }
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `||x - y|| / ||y||` over sample vectors.
pub fn relative_l2(x: &[Complex64], y: &[Complex64]) -> f64 {
    assert_eq!(x.len(), y.len(), "relative_l2 needs equal lengths");
    let diff: Vec<Complex64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    l2(&diff) / l2(y)
}

/// [`relative_l2`] after removing the best constant unit phase from `x`.
pub fn relative_l2_up_to_phase(x: &[Complex64], y: &[Complex64]) -> f64 {
    assert_eq!(x.len(), y.len(), "relative_l2 needs equal lengths");
    let overlap: Complex64 = x.iter().zip(y).map(|(a, b)| b * a.conj()).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let aligned: Vec<Complex64> = x.iter().map(|a| a * phase).collect();
    relative_l2(&aligned, y)
}
