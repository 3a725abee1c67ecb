//! Block linear canonical transforms on phase space.
//!
//! A transform acts on the phase vector `(p, x)` as
//!
//! ```text
//! p' = a p + b x
//! x' = c p + d x
//! ```
//!
//! so the 2N x 2N matrix acting on the stacked column `(p; x)` is
//! `S = [[a, b], [c, d]]`. Canonical commutation relations are preserved
//! exactly when `S^T Omega S = Omega` with `Omega = [[0, eta], [-eta, 0]]`.
//! The transposed arrangement `[[a^T, c^T], [b^T, d^T]]` is `S^T` and
//! lies in the same group.

use nalgebra::{DMatrix, DVector};

use crate::error::{LctError, Result};
use crate::linalg::{assemble, expect_len, expect_shape, max_abs, max_abs_vec, split};
use crate::metric::{omega_matrix, Metric};

/// Default absolute (max-norm) construction tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Composition revalidates with this multiple of the construction tolerance.
pub const COMPOSE_TOL_FACTOR: f64 = 10.0;

/// A validated homogeneous linear canonical transform.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockLct {
    metric: Metric,
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
    d: DMatrix<f64>,
}

/// A transform followed by a phase-space translation `(K, Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InhomogeneousLct {
    lct: BlockLct,
    k: DVector<f64>,
    y: DVector<f64>,
}

/// Classical phase-space point.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    pub p: DVector<f64>,
    pub x: DVector<f64>,
}

impl PhaseVector {
    pub fn new(p: DVector<f64>, x: DVector<f64>) -> Result<Self> {
        expect_len(&x, p.len(), "x")?;
        if p.iter().chain(x.iter()).any(|v| !v.is_finite()) {
            return Err(LctError::InvalidArgument(
                "phase vector has non-finite entries".into(),
            ));
        }
        Ok(Self { p, x })
    }

    pub fn from_slices(p: &[f64], x: &[f64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(p), DVector::from_column_slice(x))
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    fn stacked(&self) -> DVector<f64> {
        let n = self.dim();
        DVector::from_fn(2 * n, |i, _| if i < n { self.p[i] } else { self.x[i - n] })
    }

    fn from_stacked(v: &DVector<f64>) -> Self {
        let n = v.len() / 2;
        Self {
            p: v.rows(0, n).into_owned(),
            x: v.rows(n, n).into_owned(),
        }
    }
}

/// Anything with a linear part and an optional translation.
pub trait CanonicalMap {
    fn linear(&self) -> &BlockLct;

    /// Translation `(K, Y)` applied after the linear part, if any.
    fn translation(&self) -> Option<(&DVector<f64>, &DVector<f64>)> {
        None
    }

    fn metric(&self) -> &Metric {
        self.linear().metric()
    }

    fn apply(&self, v: &PhaseVector) -> Result<PhaseVector> {
        let lct = self.linear();
        let n = lct.dim();
        if v.dim() != n {
            return Err(LctError::DimensionMismatch(format!(
                "phase vector has dimension {}, transform has {n}",
                v.dim()
            )));
        }
        let mut p = &lct.a * &v.p + &lct.b * &v.x;
        let mut x = &lct.c * &v.p + &lct.d * &v.x;
        if let Some((k, y)) = self.translation() {
            p += k;
            x += y;
        }
        Ok(PhaseVector { p, x })
    }
}

impl CanonicalMap for BlockLct {
    fn linear(&self) -> &BlockLct {
        self
    }
}

impl CanonicalMap for InhomogeneousLct {
    fn linear(&self) -> &BlockLct {
        &self.lct
    }

    fn translation(&self) -> Option<(&DVector<f64>, &DVector<f64>)> {
        Some((&self.k, &self.y))
    }
}

/// `max |M^T Omega M - Omega|` for a 2N x 2N matrix.
pub fn symplectic_residual(m: &DMatrix<f64>, metric: &Metric) -> Result<f64> {
    let n2 = 2 * metric.dim();
    expect_shape(m, n2, n2, "phase-space matrix")?;
    let omega = omega_matrix(metric);
    Ok(max_abs(&(m.transpose() * &omega * m - omega)))
}

impl BlockLct {
    /// Validates and stores four N x N blocks.
    pub fn new(
        a: DMatrix<f64>,
        b: DMatrix<f64>,
        c: DMatrix<f64>,
        d: DMatrix<f64>,
        metric: Metric,
        tol: f64,
    ) -> Result<Self> {
        let n = metric.dim();
        for (m, name) in [(&a, "a"), (&b, "b"), (&c, "c"), (&d, "d")] {
            expect_shape(m, n, n, name)?;
        }
        let lct = Self { metric, a, b, c, d };
        let residual = lct.residual();
        if !(residual <= tol) {
            return Err(LctError::NotSymplectic { residual, tol });
        }
        Ok(lct)
    }

    /// Builds a transform from the phase-space matrix `[[a, b], [c, d]]`.
    pub fn from_matrix(m: &DMatrix<f64>, metric: Metric, tol: f64) -> Result<Self> {
        let n2 = 2 * metric.dim();
        expect_shape(m, n2, n2, "phase-space matrix")?;
        let (a, b, c, d) = split(m);
        Self::new(a, b, c, d, metric, tol)
    }

    pub(crate) fn from_blocks_unchecked(
        a: DMatrix<f64>,
        b: DMatrix<f64>,
        c: DMatrix<f64>,
        d: DMatrix<f64>,
        metric: Metric,
    ) -> Self {
        Self { metric, a, b, c, d }
    }

    pub fn identity(metric: Metric) -> Self {
        let n = metric.dim();
        Self {
            a: DMatrix::identity(n, n),
            b: DMatrix::zeros(n, n),
            c: DMatrix::zeros(n, n),
            d: DMatrix::identity(n, n),
            metric,
        }
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<f64> {
        &self.c
    }

    pub fn d(&self) -> &DMatrix<f64> {
        &self.d
    }

    /// Phase-space matrix `[[a, b], [c, d]]` acting on `(p; x)`.
    pub fn matrix(&self) -> DMatrix<f64> {
        assemble(&self.a, &self.b, &self.c, &self.d)
    }

    pub fn residual(&self) -> f64 {
        symplectic_residual(&self.matrix(), &self.metric).expect("blocks are N x N")
    }

    /// `self o first`: apply `first`, then `self`.
    pub fn compose(&self, first: &BlockLct) -> Result<BlockLct> {
        compose(self, first)
    }

    pub fn inverse(&self) -> BlockLct {
        inverse(self)
    }

    pub fn with_translation(self, k: DVector<f64>, y: DVector<f64>) -> Result<InhomogeneousLct> {
        InhomogeneousLct::new(self, k, y)
    }
}

/// Validated construction from blocks (`p' = a p + b x`, `x' = c p + d x`).
pub fn make_lct(
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
    d: DMatrix<f64>,
    metric: Metric,
    tol: f64,
) -> Result<BlockLct> {
    BlockLct::new(a, b, c, d, metric, tol)
}

/// `second o first`. The phase-space matrices multiply as `S_second * S_first`.
pub fn compose(second: &BlockLct, first: &BlockLct) -> Result<BlockLct> {
    if second.metric != first.metric {
        return Err(LctError::MetricMismatch);
    }
    let m = second.matrix() * first.matrix();
    BlockLct::from_matrix(&m, first.metric.clone(), DEFAULT_TOL * COMPOSE_TOL_FACTOR)
}

/// Group inverse via `S^-1 = -Omega S^T Omega`.
pub fn inverse(l: &BlockLct) -> BlockLct {
    let omega = omega_matrix(&l.metric);
    let inv = -(&omega * l.matrix().transpose() * &omega);
    let (a, b, c, d) = split(&inv);
    BlockLct::from_blocks_unchecked(a, b, c, d, l.metric.clone())
}

/// Applies a homogeneous or inhomogeneous transform to a phase vector.
pub fn apply<L: CanonicalMap + ?Sized>(l: &L, v: &PhaseVector) -> Result<PhaseVector> {
    l.apply(v)
}

impl InhomogeneousLct {
    pub fn new(lct: BlockLct, k: DVector<f64>, y: DVector<f64>) -> Result<Self> {
        let n = lct.dim();
        expect_len(&k, n, "K")?;
        expect_len(&y, n, "Y")?;
        if !(max_abs_vec(&k).is_finite() && max_abs_vec(&y).is_finite()) {
            return Err(LctError::InvalidArgument(
                "translation has non-finite entries".into(),
            ));
        }
        Ok(Self { lct, k, y })
    }

    pub fn lct(&self) -> &BlockLct {
        &self.lct
    }

    pub fn k(&self) -> &DVector<f64> {
        &self.k
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    /// `self o first` including translations.
    pub fn compose(&self, first: &InhomogeneousLct) -> Result<InhomogeneousLct> {
        let lct = compose(&self.lct, &first.lct)?;
        let shifted = self.lct.apply(&PhaseVector {
            p: first.k.clone(),
            x: first.y.clone(),
        })?;
        Ok(InhomogeneousLct {
            lct,
            k: shifted.p + &self.k,
            y: shifted.x + &self.y,
        })
    }

    pub fn inverse(&self) -> InhomogeneousLct {
        let inv = inverse(&self.lct);
        let back = PhaseVector::from_stacked(
            &(inv.matrix()
                * PhaseVector {
                    p: self.k.clone(),
                    x: self.y.clone(),
                }
                .stacked()),
        );
        InhomogeneousLct {
            lct: inv,
            k: -back.p,
            y: -back.x,
        }
    }
}

/// Lorentz-type embedding `(a, 0, 0, a)` of `a` in SO(n+, n-).
pub fn embed_pseudo_orthogonal(a: &DMatrix<f64>, metric: &Metric, tol: f64) -> Result<BlockLct> {
    let n = metric.dim();
    expect_shape(a, n, n, "a")?;
    let residual = pseudo_orthogonal_residual(a, metric);
    if !(residual <= tol) {
        return Err(LctError::NotPseudoOrthogonal { residual });
    }
    let det_residual = (a.determinant() - 1.0).abs();
    if !(det_residual <= tol) {
        return Err(LctError::NotPseudoOrthogonal {
            residual: det_residual,
        });
    }
    let zero = DMatrix::zeros(n, n);
    Ok(BlockLct::from_blocks_unchecked(
        a.clone(),
        zero.clone(),
        zero,
        a.clone(),
        metric.clone(),
    ))
}

/// `max |a^T eta a - eta|`.
pub fn pseudo_orthogonal_residual(a: &DMatrix<f64>, metric: &Metric) -> f64 {
    let eta = metric.matrix();
    max_abs(&(a.transpose() * &eta * a - eta))
}

/// Boost of the given rapidity in the (time_axis, space_axis) plane.
pub fn boost_matrix(
    metric: &Metric,
    time_axis: usize,
    space_axis: usize,
    rapidity: f64,
) -> Result<DMatrix<f64>> {
    let n = metric.dim();
    if time_axis >= n || space_axis >= n {
        return Err(LctError::AxisSignatureMismatch(format!(
            "axes ({time_axis}, {space_axis}) out of range for dimension {n}"
        )));
    }
    if time_axis == space_axis {
        return Err(LctError::AxisSignatureMismatch(
            "axes must be distinct".into(),
        ));
    }
    if metric.entry(time_axis) != 1.0 || metric.entry(space_axis) != -1.0 {
        return Err(LctError::AxisSignatureMismatch(format!(
            "axis {time_axis} must be +1 and axis {space_axis} must be -1"
        )));
    }
    let mut m = DMatrix::identity(n, n);
    let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
    m[(time_axis, time_axis)] = ch;
    m[(space_axis, space_axis)] = ch;
    m[(time_axis, space_axis)] = sh;
    m[(space_axis, time_axis)] = sh;
    Ok(m)
}

/// Fourier-like embedding `(0, b, -b, 0)`: `p' = b x`, `x' = -b p`.
pub fn embed_fourier_like(b: &DMatrix<f64>, metric: &Metric, tol: f64) -> Result<BlockLct> {
    let n = metric.dim();
    expect_shape(b, n, n, "b")?;
    let residual = pseudo_orthogonal_residual(b, metric);
    if !(residual <= tol) {
        return Err(LctError::ConstraintViolated {
            constraint: "b^T eta b = eta",
            residual,
        });
    }
    let zero = DMatrix::zeros(n, n);
    Ok(BlockLct::from_blocks_unchecked(
        zero.clone(),
        b.clone(),
        -b,
        zero,
        metric.clone(),
    ))
}

/// Pseudo-unitary transform `(a, b, -b, a)`.
pub fn make_pseudo_unitary_lct(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    metric: &Metric,
    tol: f64,
) -> Result<BlockLct> {
    let n = metric.dim();
    expect_shape(a, n, n, "a")?;
    expect_shape(b, n, n, "b")?;
    let eta = metric.matrix();
    let norm = max_abs(&(a.transpose() * &eta * a + b.transpose() * &eta * b - &eta));
    if !(norm <= tol) {
        return Err(LctError::ConstraintViolated {
            constraint: "a^T eta a + b^T eta b = eta",
            residual: norm,
        });
    }
    let cross = max_abs(&(a.transpose() * &eta * b - b.transpose() * &eta * a));
    if !(cross <= tol) {
        return Err(LctError::ConstraintViolated {
            constraint: "a^T eta b - b^T eta a = 0",
            residual: cross,
        });
    }
    Ok(BlockLct::from_blocks_unchecked(
        a.clone(),
        b.clone(),
        -b,
        a.clone(),
        metric.clone(),
    ))
}
