//! Complex `(w, v)` form of a block transform and the pseudo-unitarity test.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::metric::Metric;
use crate::symplectic::BlockLct;

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovPair {
    pub w: CMatrix,
    pub v: CMatrix,
    pub metric: Metric,
}

/// Residuals of the pair relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairResiduals {
    /// `max |v|`
    pub r_v: f64,
    /// `max |w^dag eta w - eta|`
    pub r_u: f64,
    /// `max |w^dag eta w - v^dag eta v - eta|`
    pub first_relation: f64,
    /// `max |v^dag eta w - w eta v^dag|`, as printed
    pub second_relation_printed: f64,
    /// `max |w^T eta v - v^T eta w|`
    pub second_relation_symmetric: f64,
}

fn cmax(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

fn complexify(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// `w = (a + d - i b + i c)/2`, `v = (a - d - i b - i c)/2`.
pub fn to_bogoliubov(l: &BlockLct) -> BogoliubovPair {
    bogoliubov_from_blocks(l.a(), l.b(), l.c(), l.d(), l.metric())
}

/// Same as [`to_bogoliubov`] on raw, unvalidated blocks.
pub fn bogoliubov_from_blocks(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    c: &DMatrix<f64>,
    d: &DMatrix<f64>,
    metric: &Metric,
) -> BogoliubovPair {
    let i = Complex64::i();
    let half = Complex64::new(0.5, 0.0);
    let re_w = complexify(&(a + d));
    let im_w = complexify(&(c - b));
    let re_v = complexify(&(a - d));
    let im_v = complexify(&(-(b + c)));
    BogoliubovPair {
        w: (re_w + im_w * i) * half,
        v: (re_v + im_v * i) * half,
        metric: metric.clone(),
    }
}

impl BogoliubovPair {
    pub fn residuals(&self) -> PairResiduals {
        let eta = complexify(&self.metric.matrix());
        let (w, v) = (&self.w, &self.v);
        let wdw = w.adjoint() * &eta * w;
        let vdv = v.adjoint() * &eta * v;
        PairResiduals {
            r_v: cmax(v),
            r_u: cmax(&(&wdw - &eta)),
            first_relation: cmax(&(&wdw - &vdv - &eta)),
            second_relation_printed: cmax(&(v.adjoint() * &eta * w - w * &eta * v.adjoint())),
            second_relation_symmetric: cmax(&(w.transpose() * &eta * v - v.transpose() * &eta * w)),
        }
    }

    pub fn is_pseudo_unitary(&self, tol: f64) -> bool {
        let r = self.residuals();
        r.r_v <= tol && r.r_u <= tol
    }
}

/// `(r_v, r_u)`; pseudo-unitary iff both are within tolerance.
pub fn pseudo_unitarity_residuals(pair: &BogoliubovPair) -> (f64, f64) {
    let r = pair.residuals();
    (r.r_v, r.r_u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{make_lct, DEFAULT_TOL};

    fn lct1(a: f64, b: f64, c: f64, d: f64) -> BlockLct {
        let m = |x| DMatrix::from_element(1, 1, x);
        make_lct(
            m(a),
            m(b),
            m(c),
            m(d),
            Metric::euclidean(1).unwrap(),
            DEFAULT_TOL,
        )
        .unwrap()
    }

    #[test]
    fn identity_pair() {
        let p = to_bogoliubov(&BlockLct::identity(Metric::euclidean(3).unwrap()));
        assert_eq!(p.w, CMatrix::identity(3, 3));
        assert_eq!(p.v, CMatrix::zeros(3, 3));
        assert_eq!(pseudo_unitarity_residuals(&p), (0.0, 0.0));
    }

    #[test]
    fn fourier_pair() {
        let p = to_bogoliubov(&lct1(0.0, 1.0, -1.0, 0.0));
        assert_eq!(p.w[(0, 0)], Complex64::new(0.0, -1.0));
        assert_eq!(p.v[(0, 0)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn fractional_pair_is_phase() {
        for k in 0..12 {
            let t = 0.37 * k as f64 - 2.0;
            let p = to_bogoliubov(&lct1(t.cos(), t.sin(), -t.sin(), t.cos()));
            let expected = Complex64::from_polar(1.0, -t);
            assert!((p.w[(0, 0)] - expected).norm() < 1e-15);
            assert!(p.v[(0, 0)].norm() < 1e-15);
            assert!(p.is_pseudo_unitary(1e-12));
        }
    }

    #[test]
    fn shear_is_not_pseudo_unitary() {
        let p = to_bogoliubov(&lct1(1.0, 1.0, 0.0, 1.0));
        assert_eq!(p.v[(0, 0)], Complex64::new(0.0, -0.5));
        let (r_v, _) = pseudo_unitarity_residuals(&p);
        assert_eq!(r_v, 0.5);
        assert!(!p.is_pseudo_unitary(DEFAULT_TOL));
        assert!(p.residuals().first_relation < 1e-15);
    }
}
