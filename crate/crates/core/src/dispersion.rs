//! Dispersion data of Hermite-Gaussian states and how it moves under a
//! transform.
//!
//! A state is described by its means `(P, X)` and two window matrices
//! `a_win`, `b_win` with `a_win b_win = I/2`. The reduced operators are
//! `pr = sqrt 2 a_win (p - P)` and `xr = sqrt 2 b_win (x - X)`; the
//! dispersion matrices are `A = a_win eta a_win` (coordinates) and
//! `B = b_win eta b_win` (momenta). In 1-D, `p` is angular frequency and
//! `x` is time, so `A` and `B` are the time and frequency variances.
//!
//! Windows must be symmetric positive-definite and commute with `eta`.
//! On that domain the reduced matrix of any transform is again symplectic.

use nalgebra::{DMatrix, DVector};

use crate::error::{LctError, Result};
use crate::liealg::isodispersion_residual;
use crate::linalg::{expect_len, expect_shape, is_spd, max_abs, spd_sqrt};
use crate::metric::Metric;
use crate::symplectic::{BlockLct, CanonicalMap, PhaseVector, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionSpec {
    metric: Metric,
    p: DVector<f64>,
    x: DVector<f64>,
    a_win: DMatrix<f64>,
    b_win: DMatrix<f64>,
    big_a: DMatrix<f64>,
    big_b: DMatrix<f64>,
}

/// `max |a_win b_win - I/2|`.
pub fn window_product_residual(a_win: &DMatrix<f64>, b_win: &DMatrix<f64>) -> f64 {
    let n = a_win.nrows();
    max_abs(&(a_win * b_win - DMatrix::identity(n, n) * 0.5))
}

fn eta_commutator(m: &DMatrix<f64>, metric: &Metric) -> f64 {
    max_abs(&(metric.left(m) - m * metric.matrix()))
}

impl DispersionSpec {
    /// Validates windows: symmetric, positive-definite, commuting with
    /// `eta`, and `a_win b_win = I/2` within `tol`.
    pub fn new(
        metric: Metric,
        p: DVector<f64>,
        x: DVector<f64>,
        a_win: DMatrix<f64>,
        b_win: DMatrix<f64>,
        tol: f64,
    ) -> Result<Self> {
        let n = metric.dim();
        expect_len(&p, n, "P")?;
        expect_len(&x, n, "X")?;
        expect_shape(&a_win, n, n, "a_win")?;
        expect_shape(&b_win, n, n, "b_win")?;
        if p.iter().chain(x.iter()).any(|v| !v.is_finite()) {
            return Err(LctError::InvalidDispersion("means must be finite".into()));
        }
        for (w, name) in [(&a_win, "a_win"), (&b_win, "b_win")] {
            if !is_spd(w, tol) {
                return Err(LctError::InvalidDispersion(format!(
                    "{name} must be symmetric positive-definite"
                )));
            }
            let comm = eta_commutator(w, &metric);
            if !(comm <= tol) {
                return Err(LctError::InvalidDispersion(format!(
                    "{name} must commute with the metric (residual {comm:.3e})"
                )));
            }
        }
        let r = window_product_residual(&a_win, &b_win);
        if !(r <= tol) {
            return Err(LctError::InvalidDispersion(format!(
                "a_win b_win must equal I/2 (residual {r:.3e})"
            )));
        }
        let big_a = &a_win * metric.matrix() * &a_win;
        let big_b = &b_win * metric.matrix() * &b_win;
        Ok(Self {
            metric,
            p,
            x,
            a_win,
            b_win,
            big_a,
            big_b,
        })
    }

    /// Builds the spec from `a_win` alone, with `b_win = a_win^-1 / 2`.
    pub fn from_window(
        metric: Metric,
        p: DVector<f64>,
        x: DVector<f64>,
        a_win: DMatrix<f64>,
    ) -> Result<Self> {
        let inv = a_win
            .clone()
            .try_inverse()
            .ok_or_else(|| LctError::InvalidDispersion("a_win is singular".into()))?;
        let b_win = inv * 0.5;
        let b_win = (&b_win + b_win.transpose()) * 0.5;
        Self::new(metric, p, x, a_win, b_win, DEFAULT_TOL)
    }

    /// Isotropic windows `a_win = b_win = I / sqrt 2`.
    pub fn isotropic(metric: Metric, p: DVector<f64>, x: DVector<f64>) -> Result<Self> {
        let n = metric.dim();
        let w = DMatrix::identity(n, n) * std::f64::consts::FRAC_1_SQRT_2;
        Self::new(metric, p, x, w.clone(), w, DEFAULT_TOL)
    }

    /// 1-D Euclidean spec from frequency mean, time mean and frequency
    /// standard deviation.
    pub fn one_dim(omega: f64, t: f64, b_dev: f64) -> Result<Self> {
        if !(b_dev > 0.0 && b_dev.is_finite()) {
            return Err(LctError::InvalidDispersion(format!(
                "b_dev must be > 0, got {b_dev}"
            )));
        }
        let m = |v| DMatrix::from_element(1, 1, v);
        Self::new(
            Metric::euclidean(1)?,
            DVector::from_element(1, omega),
            DVector::from_element(1, t),
            m(0.5 / b_dev),
            m(b_dev),
            DEFAULT_TOL,
        )
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    /// Momentum means.
    pub fn p(&self) -> &DVector<f64> {
        &self.p
    }

    /// Coordinate means.
    pub fn x(&self) -> &DVector<f64> {
        &self.x
    }

    pub fn a_win(&self) -> &DMatrix<f64> {
        &self.a_win
    }

    pub fn b_win(&self) -> &DMatrix<f64> {
        &self.b_win
    }

    /// Coordinate dispersion `a_win eta a_win`.
    pub fn big_a(&self) -> &DMatrix<f64> {
        &self.big_a
    }

    /// Momentum dispersion `b_win eta b_win`.
    pub fn big_b(&self) -> &DMatrix<f64> {
        &self.big_b
    }
}

/// `max |a_win b_win - I/2|` of a spec.
pub fn dispersion_product_residual(d: &DispersionSpec) -> f64 {
    window_product_residual(&d.a_win, &d.b_win)
}

/// Transformation data of the reduced operators:
/// `pr' = Pi pr + Theta xr`, `xr' = Xi pr + Lambda xr`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedLct {
    pub metric: Metric,
    pub pi: DMatrix<f64>,
    pub xi: DMatrix<f64>,
    pub theta: DMatrix<f64>,
    pub lambda: DMatrix<f64>,
}

impl ReducedLct {
    /// Map matrix `[[Pi, Theta], [Xi, Lambda]]` acting on `(pr; xr)`.
    pub fn matrix(&self) -> DMatrix<f64> {
        crate::linalg::assemble(&self.pi, &self.theta, &self.xi, &self.lambda)
    }

    /// `[[Pi, Xi], [Theta, Lambda]]`: each block column holds the
    /// coefficients of one output operator.
    pub fn output_columns(&self) -> DMatrix<f64> {
        crate::linalg::assemble(&self.pi, &self.xi, &self.theta, &self.lambda)
    }

    pub fn symplectic_residual(&self) -> f64 {
        crate::symplectic::symplectic_residual(&self.matrix(), &self.metric)
            .expect("blocks share the metric dimension")
    }

    pub fn to_block_lct(&self, tol: f64) -> Result<BlockLct> {
        BlockLct::new(
            self.pi.clone(),
            self.theta.clone(),
            self.xi.clone(),
            self.lambda.clone(),
            self.metric.clone(),
            tol,
        )
    }
}

/// Reduced-operator matrix between the frames of `din` and `dout`.
///
/// Only the linear part of `l` enters, so translations leave it unchanged.
pub fn reduced_matrix<L: CanonicalMap + ?Sized>(
    l: &L,
    din: &DispersionSpec,
    dout: &DispersionSpec,
) -> Result<ReducedLct> {
    let lin = l.linear();
    if lin.metric() != &din.metric || din.metric != dout.metric {
        return Err(LctError::MetricMismatch);
    }
    let (a, b, c, d) = (lin.a(), lin.b(), lin.c(), lin.d());
    Ok(ReducedLct {
        metric: din.metric.clone(),
        pi: &dout.a_win * a * &din.b_win * 2.0,
        theta: &dout.a_win * b * &din.a_win * 2.0,
        xi: &dout.b_win * c * &din.b_win * 2.0,
        lambda: &dout.b_win * d * &din.a_win * 2.0,
    })
}

/// [`reduced_matrix`] with the output frame from [`ilct_transform_dispersion`].
pub fn reduced_matrix_ilct<L: CanonicalMap + ?Sized>(
    l: &L,
    din: &DispersionSpec,
    tol: f64,
) -> Result<ReducedLct> {
    let dout = ilct_transform_dispersion(l, din, tol)?;
    reduced_matrix(l, din, &dout)
}

/// Raw propagation `B' = a B a^T + b A b^T`, `A' = c B c^T + d A d^T`,
/// valid for uncorrelated inputs. Returns `(A', B')`.
pub fn propagate_dispersion(
    l: &BlockLct,
    big_a: &DMatrix<f64>,
    big_b: &DMatrix<f64>,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = l.dim();
    expect_shape(big_a, n, n, "A")?;
    expect_shape(big_b, n, n, "B")?;
    let (a, b, c, d) = (l.a(), l.b(), l.c(), l.d());
    let b_out = a * big_b * a.transpose() + b * big_a * b.transpose();
    let a_out = c * big_b * c.transpose() + d * big_a * d.transpose();
    Ok((a_out, b_out))
}

/// Dispersion spec in the output frame of an isodispersion transform.
///
/// Means move with the transform (including any translation). The new
/// windows are recovered as square roots of `eta A'` and `eta B'`; if they
/// no longer satisfy `a_win b_win = I/2` (anisotropic windows under a
/// mixing rotation) the call fails with `DispersionNotPreserved`.
pub fn ilct_transform_dispersion<L: CanonicalMap + ?Sized>(
    l: &L,
    din: &DispersionSpec,
    tol: f64,
) -> Result<DispersionSpec> {
    let lin = l.linear();
    if lin.metric() != &din.metric {
        return Err(LctError::MetricMismatch);
    }
    let residual = isodispersion_residual(&lin.matrix(), &din.metric)?;
    if !(residual <= tol) {
        return Err(LctError::NotIsodispersion { residual });
    }
    let means = l.apply(&PhaseVector::new(din.p.clone(), din.x.clone())?)?;
    let (big_a, big_b) = propagate_dispersion(lin, &din.big_a, &din.big_b)?;
    let metric = din.metric.clone();
    let root = |m: &DMatrix<f64>| spd_sqrt(&metric.left(m), tol.max(1e-12));
    let (Some(a_win), Some(b_win)) = (root(&big_a), root(&big_b)) else {
        return Err(LctError::DispersionNotPreserved {
            residual: f64::INFINITY,
        });
    };
    let residual = window_product_residual(&a_win, &b_win)
        .max(eta_commutator(&a_win, &metric))
        .max(eta_commutator(&b_win, &metric));
    if !(residual <= tol) {
        return Err(LctError::DispersionNotPreserved { residual });
    }
    Ok(DispersionSpec {
        metric,
        p: means.p,
        x: means.x,
        a_win,
        b_win,
        big_a,
        big_b,
    })
}
