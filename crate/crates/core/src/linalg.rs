//! Small dense-matrix helpers shared by the group modules.

use nalgebra::{DMatrix, DVector};

use crate::error::{LctError, Result};

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_vec(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Assembles `[[tl, tr], [bl, br]]` from four N x N blocks.
pub fn assemble(
    tl: &DMatrix<f64>,
    tr: &DMatrix<f64>,
    bl: &DMatrix<f64>,
    br: &DMatrix<f64>,
) -> DMatrix<f64> {
    let n = tl.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(tl);
    m.view_mut((0, n), (n, n)).copy_from(tr);
    m.view_mut((n, 0), (n, n)).copy_from(bl);
    m.view_mut((n, n), (n, n)).copy_from(br);
    m
}

/// Splits a 2N x 2N matrix into `(tl, tr, bl, br)`.
pub fn split(m: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let n = m.nrows() / 2;
    (
        m.view((0, 0), (n, n)).into_owned(),
        m.view((0, n), (n, n)).into_owned(),
        m.view((n, 0), (n, n)).into_owned(),
        m.view((n, n), (n, n)).into_owned(),
    )
}

pub(crate) fn expect_shape(m: &DMatrix<f64>, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.nrows() != rows || m.ncols() != cols {
        return Err(LctError::DimensionMismatch(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

pub(crate) fn expect_len(v: &DVector<f64>, len: usize, what: &str) -> Result<()> {
    if v.len() != len {
        return Err(LctError::DimensionMismatch(format!(
            "{what} has length {}, expected {len}",
            v.len()
        )));
    }
    Ok(())
}

/// Square root of a symmetric positive-definite matrix.
///
/// Returns `None` when the matrix is not symmetric within `tol` or has a
/// non-positive eigenvalue.
pub fn spd_sqrt(m: &DMatrix<f64>, tol: f64) -> Option<DMatrix<f64>> {
    if max_abs(&(m - m.transpose())) > tol {
        return None;
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return None;
    }
    let root = eig.eigenvalues.map(f64::sqrt);
    Some(&eig.eigenvectors * DMatrix::from_diagonal(&root) * eig.eigenvectors.transpose())
}

/// True when `m` is symmetric within `tol` and all eigenvalues are positive.
pub fn is_spd(m: &DMatrix<f64>, tol: f64) -> bool {
    if max_abs(&(m - m.transpose())) > tol {
        return false;
    }
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigen().eigenvalues.iter().all(|&l| l > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assemble_split_roundtrip() {
        let m = DMatrix::from_fn(6, 6, |i, j| (i * 6 + j) as f64);
        let (a, b, c, d) = split(&m);
        assert_eq!(assemble(&a, &b, &c, &d), m);
        assert_eq!(b[(0, 0)], 3.0);
        assert_eq!(c[(0, 0)], 18.0);
    }

    #[test]
    fn spd_sqrt_squares_back() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        let r = spd_sqrt(&m, 1e-12).unwrap();
        assert!(max_abs(&(&r * &r - &m)) < 1e-14);
        assert!(spd_sqrt(&DMatrix::from_row_slice(1, 1, &[-1.0]), 1e-12).is_none());
        assert!(spd_sqrt(&DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]), 1e-12).is_none());
    }
}
