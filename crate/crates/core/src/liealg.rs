//! Lie-algebra parameterization of the pseudo-symplectic group.
//!
//! A generator `(lambda, mu, phi, theta)` assembles into
//! `G = [[lambda + mu, phi + theta], [phi - theta, lambda - mu]]`, read in the
//! same `(p; x)` layout as [`BlockLct::matrix`]. The constraints
//!
//! * `theta^T = eta theta eta`, `phi^T = eta phi eta`, `mu^T = eta mu eta`
//! * `lambda^T = -eta lambda eta`, `tr lambda = 0`
//!
//! make `G^T Omega + Omega G = 0`, so `exp(G)` is a valid transform.
//! Setting `phi = mu = 0` leaves the isodispersion subalgebra, whose
//! exponentials also preserve `diag(eta, eta)`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{LctError, Result};
use crate::linalg::{assemble, expect_shape, max_abs};
use crate::metric::{Metric, Signature};
use crate::symplectic::{symplectic_residual, BlockLct, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    metric: Metric,
    lambda: DMatrix<f64>,
    mu: DMatrix<f64>,
    phi: DMatrix<f64>,
    theta: DMatrix<f64>,
}

/// Per-constraint residuals of a generator candidate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeneratorResiduals {
    pub theta: f64,
    pub phi: f64,
    pub mu: f64,
    pub lambda: f64,
    pub trace: f64,
}

impl GeneratorResiduals {
    pub fn max(&self) -> f64 {
        [self.theta, self.phi, self.mu, self.lambda, self.trace]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn twisted_sym_residual(x: &DMatrix<f64>, metric: &Metric, sign: f64) -> f64 {
    max_abs(&(x.transpose() - metric.sandwich(x) * sign))
}

/// Residuals of the four symmetry constraints plus `|tr lambda|`.
pub fn generator_residual(
    lambda: &DMatrix<f64>,
    mu: &DMatrix<f64>,
    phi: &DMatrix<f64>,
    theta: &DMatrix<f64>,
    metric: &Metric,
) -> Result<GeneratorResiduals> {
    let n = metric.dim();
    for (m, name) in [
        (lambda, "lambda"),
        (mu, "mu"),
        (phi, "phi"),
        (theta, "theta"),
    ] {
        expect_shape(m, n, n, name)?;
    }
    Ok(GeneratorResiduals {
        theta: twisted_sym_residual(theta, metric, 1.0),
        phi: twisted_sym_residual(phi, metric, 1.0),
        mu: twisted_sym_residual(mu, metric, 1.0),
        lambda: twisted_sym_residual(lambda, metric, -1.0),
        trace: lambda.trace().abs(),
    })
}

impl Generator {
    pub fn new(
        lambda: DMatrix<f64>,
        mu: DMatrix<f64>,
        phi: DMatrix<f64>,
        theta: DMatrix<f64>,
        metric: Metric,
        tol: f64,
    ) -> Result<Self> {
        let r = generator_residual(&lambda, &mu, &phi, &theta, &metric)?;
        let worst = [
            ("theta^T = eta theta eta", r.theta),
            ("phi^T = eta phi eta", r.phi),
            ("mu^T = eta mu eta", r.mu),
            ("lambda^T = -eta lambda eta", r.lambda),
            ("tr lambda = 0", r.trace),
        ]
        .into_iter()
        .find(|(_, v)| !(*v <= tol));
        if let Some((name, v)) = worst {
            return Err(LctError::InvalidGenerator(format!(
                "{name} violated by {v:.3e}"
            )));
        }
        Ok(Self {
            metric,
            lambda,
            mu,
            phi,
            theta,
        })
    }

    pub fn zero(metric: Metric) -> Self {
        let n = metric.dim();
        let z = DMatrix::zeros(n, n);
        Self {
            metric,
            lambda: z.clone(),
            mu: z.clone(),
            phi: z.clone(),
            theta: z,
        }
    }

    /// Projects arbitrary matrices onto the constraint subspaces.
    pub fn projected(
        lambda: &DMatrix<f64>,
        mu: &DMatrix<f64>,
        phi: &DMatrix<f64>,
        theta: &DMatrix<f64>,
        metric: Metric,
    ) -> Result<Self> {
        generator_residual(lambda, mu, phi, theta, &metric)?;
        Ok(Self {
            lambda: project_lambda(lambda, &metric),
            mu: project_symmetric(mu, &metric),
            phi: project_symmetric(phi, &metric),
            theta: project_symmetric(theta, &metric),
            metric,
        })
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn lambda(&self) -> &DMatrix<f64> {
        &self.lambda
    }

    pub fn mu(&self) -> &DMatrix<f64> {
        &self.mu
    }

    pub fn phi(&self) -> &DMatrix<f64> {
        &self.phi
    }

    pub fn theta(&self) -> &DMatrix<f64> {
        &self.theta
    }

    pub fn residuals(&self) -> GeneratorResiduals {
        generator_residual(&self.lambda, &self.mu, &self.phi, &self.theta, &self.metric)
            .expect("shapes checked at construction")
    }

    /// `[[lambda + mu, phi + theta], [phi - theta, lambda - mu]]`.
    pub fn assembled(&self) -> DMatrix<f64> {
        assemble(
            &(&self.lambda + &self.mu),
            &(&self.phi + &self.theta),
            &(&self.phi - &self.theta),
            &(&self.lambda - &self.mu),
        )
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            metric: self.metric.clone(),
            lambda: &self.lambda * s,
            mu: &self.mu * s,
            phi: &self.phi * s,
            theta: &self.theta * s,
        }
    }

    /// Residuals of the isodispersion constraint set
    /// (`theta` and `lambda` as usual, `phi` and `mu` sign-flipped).
    pub fn isodispersion_algebra_residuals(&self) -> GeneratorResiduals {
        let m = &self.metric;
        GeneratorResiduals {
            theta: twisted_sym_residual(&self.theta, m, 1.0),
            phi: twisted_sym_residual(&self.phi, m, -1.0),
            mu: twisted_sym_residual(&self.mu, m, -1.0),
            lambda: twisted_sym_residual(&self.lambda, m, -1.0),
            trace: self.lambda.trace().abs(),
        }
    }
}

/// `(X + eta X^T eta) / 2`.
pub fn project_symmetric(x: &DMatrix<f64>, metric: &Metric) -> DMatrix<f64> {
    (x + metric.sandwich(&x.transpose())) * 0.5
}

/// `(X - eta X^T eta) / 2` with the trace removed.
pub fn project_lambda(x: &DMatrix<f64>, metric: &Metric) -> DMatrix<f64> {
    let mut m = (x - metric.sandwich(&x.transpose())) * 0.5;
    let n = m.nrows();
    let shift = m.trace() / n as f64;
    if shift != 0.0 {
        for i in 0..n {
            m[(i, i)] -= shift;
        }
    }
    m
}

/// Matrix exponential by scaling and squaring a truncated Taylor series.
pub fn expm(m: &DMatrix<f64>) -> DMatrix<f64> {
    assert!(m.is_square(), "expm needs a square matrix");
    let n = m.nrows();
    let norm = m
        .row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m / 2f64.powi(squarings);
    let mut sum = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..64 {
        term = &term * &scaled / k as f64;
        sum += &term;
        if max_abs(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp` of the assembled generator, as a `(p; x)` phase-space matrix.
pub fn exp_generator(g: &Generator) -> DMatrix<f64> {
    expm(&g.assembled())
}

/// `exp` of the generator wrapped as a validated transform.
pub fn exp_generator_lct(g: &Generator, tol: f64) -> Result<BlockLct> {
    BlockLct::from_matrix(&exp_generator(g), g.metric.clone(), tol)
}

/// `max |M diag(eta, eta) M^T - diag(eta, eta)|`.
pub fn isodispersion_residual(m: &DMatrix<f64>, metric: &Metric) -> Result<f64> {
    let n2 = 2 * metric.dim();
    expect_shape(m, n2, n2, "phase-space matrix")?;
    let d = metric.doubled();
    Ok(max_abs(&(m * &d * m.transpose() - d)))
}

/// Membership in the isodispersion subgroup.
pub fn is_ilct(m: &DMatrix<f64>, metric: &Metric, tol: f64) -> Result<bool> {
    Ok(isodispersion_residual(m, metric)? <= tol && symplectic_residual(m, metric)? <= tol)
}

/// True iff `phi` and `mu` vanish within `tol`.
pub fn is_ilct_generator(g: &Generator, tol: f64) -> bool {
    max_abs(&g.phi) <= tol && max_abs(&g.mu) <= tol
}

/// Which generator parts a random draw populates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Parts {
    pub lambda: bool,
    pub mu: bool,
    pub phi: bool,
    pub theta: bool,
}

impl Parts {
    pub const ALL: Parts = Parts {
        lambda: true,
        mu: true,
        phi: true,
        theta: true,
    };
    /// `phi = mu = 0`.
    pub const ISODISPERSION: Parts = Parts {
        lambda: true,
        mu: false,
        phi: false,
        theta: true,
    };
}

/// Draws entries uniformly in `[-scale, scale]` for the selected parts and
/// projects them onto the constraint subspaces. Deterministic per seed.
pub fn random_generator_parts(
    sig: Signature,
    seed: u64,
    scale: f64,
    parts: Parts,
) -> Result<Generator> {
    if !(scale >= 0.0 && scale.is_finite()) {
        return Err(LctError::InvalidArgument(format!(
            "scale must be >= 0, got {scale}"
        )));
    }
    let metric = Metric::new(sig)?;
    let n = metric.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |on: bool| {
        let m = DMatrix::from_fn(n, n, |_, _| {
            if scale > 0.0 {
                rng.random_range(-scale..=scale)
            } else {
                0.0
            }
        });
        if on {
            m
        } else {
            DMatrix::zeros(n, n)
        }
    };
    let lambda = draw(parts.lambda);
    let mu = draw(parts.mu);
    let phi = draw(parts.phi);
    let theta = draw(parts.theta);
    Generator::projected(&lambda, &mu, &phi, &theta, metric)
}

pub fn random_generator(sig: Signature, seed: u64, scale: f64) -> Result<Generator> {
    random_generator_parts(sig, seed, scale, Parts::ALL)
}

/// Random transform `exp(G)` for a random generator `G`.
pub fn random_lct(sig: Signature, seed: u64, scale: f64) -> Result<BlockLct> {
    exp_generator_lct(&random_generator(sig, seed, scale)?, DEFAULT_TOL)
}

/// Random isodispersion transform (`phi = mu = 0`).
pub fn random_ilct(sig: Signature, seed: u64, scale: f64) -> Result<BlockLct> {
    let g = random_generator_parts(sig, seed, scale, Parts::ISODISPERSION)?;
    exp_generator_lct(&g, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m1(v: f64) -> DMatrix<f64> {
        DMatrix::from_element(1, 1, v)
    }

    fn eu1() -> Metric {
        Metric::euclidean(1).unwrap()
    }

    #[test]
    fn zero_generator_residuals() {
        let g = Generator::zero(Metric::new(Signature::minkowski()).unwrap());
        assert_eq!(g.residuals(), GeneratorResiduals::default());
        assert_eq!(exp_generator(&g), DMatrix::identity(8, 8));
    }

    #[test]
    fn scalar_theta_always_valid() {
        let r = generator_residual(&m1(0.0), &m1(0.0), &m1(0.0), &m1(2.7), &eu1()).unwrap();
        assert_eq!(r.theta, 0.0);
    }

    #[test]
    fn lambda_identity_violates_trace() {
        for n in 1..=4 {
            let metric = Metric::euclidean(n).unwrap();
            let z = DMatrix::zeros(n, n);
            let r = generator_residual(&DMatrix::identity(n, n), &z, &z, &z, &metric).unwrap();
            assert_eq!(r.trace, n as f64);
            let err = Generator::new(
                DMatrix::identity(n, n),
                z.clone(),
                z.clone(),
                z,
                metric,
                1e-9,
            );
            assert!(matches!(err, Err(LctError::InvalidGenerator(_))));
        }
    }

    #[test]
    fn wrong_shape_rejected() {
        let r = generator_residual(&DMatrix::zeros(2, 2), &m1(0.0), &m1(0.0), &m1(0.0), &eu1());
        assert!(matches!(r, Err(LctError::DimensionMismatch(_))));
    }

    #[test]
    fn theta_exponential_is_rotation() {
        let t = 0.83;
        let g = Generator::new(m1(0.0), m1(0.0), m1(0.0), m1(t), eu1(), 1e-12).unwrap();
        let e = exp_generator(&g);
        let expected = DMatrix::from_row_slice(2, 2, &[t.cos(), t.sin(), -t.sin(), t.cos()]);
        assert!(max_abs(&(e - expected)) < 1e-15);
    }

    #[test]
    fn mu_exponential_is_squeeze() {
        let m = 0.3_f64;
        let g = Generator::new(m1(0.0), m1(m), m1(0.0), m1(0.0), eu1(), 1e-12).unwrap();
        let e = exp_generator(&g);
        assert!((e[(0, 0)] - m.exp()).abs() < 1e-15);
        assert!((e[(1, 1)] - (-m).exp()).abs() < 1e-15);
        assert_eq!(e[(0, 1)], 0.0);
        let iso = isodispersion_residual(&e, &eu1()).unwrap();
        assert!((iso - ((0.6_f64).exp() - 1.0)).abs() < 1e-14);
        assert!((iso - 0.822).abs() < 1e-3);
    }

    #[test]
    fn expm_large_norm_against_closed_form() {
        let t = 40.0;
        let g = DMatrix::from_row_slice(2, 2, &[0.0, t, -t, 0.0]);
        let e = expm(&g);
        let expected = DMatrix::from_row_slice(2, 2, &[t.cos(), t.sin(), -t.sin(), t.cos()]);
        assert!(max_abs(&(e - expected)) < 1e-12);
    }

    #[test]
    fn expm_matches_nalgebra() {
        for seed in 0..20 {
            let g = random_generator(Signature::new(2, 1).unwrap(), seed, 0.8).unwrap();
            let a = g.assembled();
            let ours = expm(&a);
            let theirs = a.clone().exp();
            assert!(max_abs(&(ours - theirs)) < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn projection_idempotent_exactly() {
        for sig in Signature::all_up_to(4) {
            let g = random_generator(sig, 7, 1.3).unwrap();
            let again =
                Generator::projected(g.lambda(), g.mu(), g.phi(), g.theta(), g.metric().clone())
                    .unwrap();
            assert_eq!(again, g);
            assert_eq!(g.residuals().max(), 0.0);
        }
    }

    #[test]
    fn generator_is_in_algebra() {
        for sig in Signature::all_up_to(4) {
            let metric = Metric::new(sig).unwrap();
            let g = random_generator(sig, 3, 1.0).unwrap();
            let a = g.assembled();
            let omega = crate::metric::omega_matrix(&metric);
            assert!(max_abs(&(a.transpose() * &omega + &omega * &a)) < 1e-14);
        }
    }

    #[test]
    fn random_lct_properties() {
        let sig = Signature::minkowski();
        assert_eq!(
            random_lct(sig, 11, 0.0).unwrap(),
            BlockLct::identity(Metric::new(sig).unwrap())
        );
        assert_eq!(
            random_lct(sig, 5, 0.5).unwrap(),
            random_lct(sig, 5, 0.5).unwrap()
        );
        assert_ne!(
            random_lct(sig, 5, 0.5).unwrap(),
            random_lct(sig, 6, 0.5).unwrap()
        );
        assert!(random_lct(sig, 5, -1.0).is_err());
    }

    #[test]
    fn ilct_generators() {
        let theta_only = Generator::new(m1(0.0), m1(0.0), m1(0.0), m1(1.0), eu1(), 1e-12).unwrap();
        assert!(is_ilct_generator(&theta_only, 1e-12));
        let mu_only = Generator::new(m1(0.0), m1(0.2), m1(0.0), m1(0.0), eu1(), 1e-12).unwrap();
        assert!(!is_ilct_generator(&mu_only, 1e-12));

        let metric = Metric::new(Signature::new(1, 1).unwrap()).unwrap();
        let lambda = DMatrix::from_row_slice(2, 2, &[0.0, 0.4, 0.4, 0.0]);
        let theta = DMatrix::from_row_slice(2, 2, &[0.3, 0.1, -0.1, -0.2]);
        let z = DMatrix::zeros(2, 2);
        let g = Generator::new(lambda, z.clone(), z, theta, metric.clone(), 1e-12).unwrap();
        assert!(is_ilct_generator(&g, 1e-12));
        assert!(isodispersion_residual(&exp_generator(&g), &metric).unwrap() < 1e-12);
        assert_eq!(g.isodispersion_algebra_residuals().max(), 0.0);
    }

    #[test]
    fn identity_isodispersion() {
        let m = Metric::euclidean(3).unwrap();
        assert_eq!(
            isodispersion_residual(&DMatrix::identity(6, 6), &m).unwrap(),
            0.0
        );
        assert!(is_ilct(&DMatrix::identity(6, 6), &m, 1e-12).unwrap());
        assert!(isodispersion_residual(&DMatrix::identity(4, 4), &m).is_err());
    }
}
