//! C ABI over `lct-core`.
//!
//! Every fallible function returns an [`LctStatus`]. On failure a message is
//! stored per thread and can be read with [`lct_last_error`]. Matrices are
//! passed as row-major `2N x 2N` arrays in the `(p; x)` layout, signals as
//! arrays of [`LctComplex`] on a uniform grid. Handles from `lct_block_*`
//! constructors must be released with [`lct_block_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lct_core::cli::classify;
use lct_core::liealg::{random_ilct, random_lct};
use lct_core::symplectic::symplectic_residual;
use lct_core::transform1d::{
    apply_lct, hermite_state, signal_moments, Grid, HermiteState, Lct1d, SampledSignal,
};
use lct_core::{BlockLct, CanonicalMap, LctError, Metric, PhaseVector, Signature};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LctStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotSymplectic = 4,
    DegenerateKernel = 5,
    GridTooNarrow = 6,
    MathError = 7,
    Panic = 8,
}

/// Opaque handle to a validated block transform.
pub struct LctBlock(BlockLct);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LctComplex {
    pub re: f64,
    pub im: f64,
}

/// Residuals and class flags; every flag also requires `symplectic`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LctClassification {
    pub symplectic_residual: f64,
    pub symplectic: bool,
    pub pseudo_unitary: bool,
    pub r_v: f64,
    pub r_u: f64,
    pub isodispersion: bool,
    pub isodispersion_residual: f64,
    pub lorentz_embedded: bool,
    pub lorentz_residual: f64,
    pub fourier_like: bool,
    pub fourier_residual: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LctMoments {
    pub t_mean: f64,
    pub omega_mean: f64,
    pub big_a: f64,
    pub big_b: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(LctStatus, String);

impl From<LctError> for Failure {
    fn from(e: LctError) -> Self {
        let status = match e {
            LctError::NotSymplectic { .. } => LctStatus::NotSymplectic,
            LctError::DegenerateKernel { .. } => LctStatus::DegenerateKernel,
            LctError::GridTooNarrow { .. } => LctStatus::GridTooNarrow,
            LctError::DimensionMismatch(_) => LctStatus::DimensionMismatch,
            LctError::EmptySignature
            | LctError::InvalidArgument(_)
            | LctError::InvalidSignal(_)
            | LctError::Parse(_) => LctStatus::InvalidArgument,
            _ => LctStatus::MathError,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LctStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            LctStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            LctStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(LctStatus::NullPointer, "null pointer argument".into())
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn handle<'a>(h: *const LctBlock) -> Result<&'a BlockLct, Failure> {
    h.as_ref().map(|b| &b.0).ok_or_else(null)
}

unsafe fn emit(out: *mut *mut LctBlock, l: BlockLct) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(LctBlock(l)));
    Ok(())
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = v;
    Ok(())
}

fn metric(n_plus: usize, n_minus: usize) -> Result<Metric, Failure> {
    Ok(Metric::new(Signature::new(n_plus, n_minus)?)?)
}

unsafe fn phase_matrix(m: *const f64, n: usize) -> Result<DMatrix<f64>, Failure> {
    Ok(DMatrix::from_row_slice(2 * n, 2 * n, slice(m, 4 * n * n)?))
}

unsafe fn signal(
    t0: f64,
    dt: f64,
    samples: *const LctComplex,
    len: usize,
) -> Result<SampledSignal, Failure> {
    let z = slice(samples, len)?
        .iter()
        .map(|c| Complex64::new(c.re, c.im))
        .collect();
    Ok(SampledSignal::new(t0, dt, z)?)
}

unsafe fn write_signal(s: &SampledSignal, out: *mut LctComplex) -> Result<(), Failure> {
    for (o, z) in slice_mut(out, s.len())?.iter_mut().zip(s.samples()) {
        *o = LctComplex { re: z.re, im: z.im };
    }
    Ok(())
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn lct_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Validates a row-major `2N x 2N` matrix, `N = n_plus + n_minus`.
///
/// # Safety
/// `matrix` must point to `4 N^2` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lct_block_new(
    n_plus: usize,
    n_minus: usize,
    matrix: *const f64,
    tol: f64,
    out: *mut *mut LctBlock,
) -> LctStatus {
    guard(|| {
        let metric = metric(n_plus, n_minus)?;
        let m = phase_matrix(matrix, metric.dim())?;
        emit(out, BlockLct::from_matrix(&m, metric, tol)?)
    })
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lct_block_free(h: *mut LctBlock) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `N` of the handle, or 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lct_block_dim(h: *const LctBlock) -> usize {
    h.as_ref().map_or(0, |b| b.0.dim())
}

/// Copies the row-major matrix into `out`, which holds `len` doubles.
///
/// # Safety
/// `h` must be live; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn lct_block_matrix(
    h: *const LctBlock,
    out: *mut f64,
    len: usize,
) -> LctStatus {
    guard(|| {
        let l = handle(h)?;
        let n2 = 2 * l.dim();
        if len != n2 * n2 {
            return Err(Failure(
                LctStatus::DimensionMismatch,
                format!("buffer needs {} doubles", n2 * n2),
            ));
        }
        let m = l.matrix();
        let out = slice_mut(out, len)?;
        for r in 0..n2 {
            for c in 0..n2 {
                out[r * n2 + c] = m[(r, c)];
            }
        }
        Ok(())
    })
}

/// # Safety
/// `h` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lct_block_residual(h: *const LctBlock, out: *mut f64) -> LctStatus {
    guard(|| write(out, handle(h)?.residual()))
}

/// `second * first`: applies `first`, then `second`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lct_block_compose(
    second: *const LctBlock,
    first: *const LctBlock,
    out: *mut *mut LctBlock,
) -> LctStatus {
    guard(|| emit(out, handle(second)?.compose(handle(first)?)?))
}

/// # Safety
/// `h` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lct_block_inverse(
    h: *const LctBlock,
    out: *mut *mut LctBlock,
) -> LctStatus {
    guard(|| emit(out, handle(h)?.inverse()))
}

/// Maps the phase-space point `(p; x)`; all arrays have length `N`.
///
/// # Safety
/// `h` must be live; the four arrays must hold `N` doubles each.
#[no_mangle]
pub unsafe extern "C" fn lct_block_apply(
    h: *const LctBlock,
    p: *const f64,
    x: *const f64,
    out_p: *mut f64,
    out_x: *mut f64,
) -> LctStatus {
    guard(|| {
        let l = handle(h)?;
        let n = l.dim();
        let v = PhaseVector::from_slices(slice(p, n)?, slice(x, n)?)?;
        let r = l.apply(&v)?;
        slice_mut(out_p, n)?.copy_from_slice(r.p.as_slice());
        slice_mut(out_x, n)?.copy_from_slice(r.x.as_slice());
        Ok(())
    })
}

/// Seeded random transform, `exp` of a random generator with entries in
/// `[-scale, scale]`; restricted to the isodispersion subgroup if requested.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lct_random(
    n_plus: usize,
    n_minus: usize,
    seed: u64,
    scale: f64,
    isodispersion: bool,
    out: *mut *mut LctBlock,
) -> LctStatus {
    guard(|| {
        let sig = Signature::new(n_plus, n_minus)?;
        let l = if isodispersion {
            random_ilct(sig, seed, scale)?
        } else {
            random_lct(sig, seed, scale)?
        };
        emit(out, l)
    })
}

/// # Safety
/// `matrix` must hold `4 N^2` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lct_symplectic_residual(
    n_plus: usize,
    n_minus: usize,
    matrix: *const f64,
    out: *mut f64,
) -> LctStatus {
    guard(|| {
        let metric = metric(n_plus, n_minus)?;
        let m = phase_matrix(matrix, metric.dim())?;
        write(out, symplectic_residual(&m, &metric)?)
    })
}

/// Classifies an unvalidated matrix.
///
/// # Safety
/// `matrix` must hold `4 N^2` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lct_classify(
    n_plus: usize,
    n_minus: usize,
    matrix: *const f64,
    tol: f64,
    out: *mut LctClassification,
) -> LctStatus {
    guard(|| {
        let metric = metric(n_plus, n_minus)?;
        let n = metric.dim();
        let m = phase_matrix(matrix, n)?;
        let blk = |r, c| m.view((r * n, c * n), (n, n)).into_owned();
        let rep = classify(&blk(0, 0), &blk(0, 1), &blk(1, 0), &blk(1, 1), &metric, tol)?;
        write(
            out,
            LctClassification {
                symplectic_residual: rep.symplectic_residual,
                symplectic: rep.symplectic,
                pseudo_unitary: rep.pseudo_unitary.flag,
                r_v: rep.pseudo_unitary.r_v,
                r_u: rep.pseudo_unitary.r_u,
                isodispersion: rep.isodispersion.flag,
                isodispersion_residual: rep.isodispersion.residual,
                lorentz_embedded: rep.lorentz_embedded.flag,
                lorentz_residual: rep.lorentz_embedded.residual,
                fourier_like: rep.fourier_like.flag,
                fourier_residual: rep.fourier_like.residual,
            },
        )
    })
}

/// Applies the 1-D transform `[[a, b], [c, d]]` by quadrature. The input
/// lives on `in_t0 + k in_dt`; the result is written to `out_len` samples
/// on `out_t0 + k out_dt`.
///
/// # Safety
/// `input` must hold `in_len` values and `out` must hold `out_len`.
#[no_mangle]
pub unsafe extern "C" fn lct_transform1d_apply(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    in_t0: f64,
    in_dt: f64,
    input: *const LctComplex,
    in_len: usize,
    out_t0: f64,
    out_dt: f64,
    out: *mut LctComplex,
    out_len: usize,
) -> LctStatus {
    guard(|| {
        let l = Lct1d::new(a, b, c, d)?;
        let s = signal(in_t0, in_dt, input, in_len)?;
        let r = apply_lct(&l, &s, Grid::new(out_t0, out_dt, out_len)?)?;
        write_signal(&r, out)
    })
}

/// Samples the normalised Hermite-Gaussian state of order `n` with
/// frequency standard deviation `b_dev`.
///
/// # Safety
/// `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn lct_hermite_state(
    n: u32,
    t_mean: f64,
    omega_mean: f64,
    b_dev: f64,
    t0: f64,
    dt: f64,
    out: *mut LctComplex,
    len: usize,
) -> LctStatus {
    guard(|| {
        let h = HermiteState::new(n, t_mean, omega_mean, b_dev)?;
        write_signal(&hermite_state(&h, Grid::new(t0, dt, len)?)?, out)
    })
}

/// # Safety
/// `samples` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lct_signal_moments(
    t0: f64,
    dt: f64,
    samples: *const LctComplex,
    len: usize,
    out: *mut LctMoments,
) -> LctStatus {
    guard(|| {
        let m = signal_moments(&signal(t0, dt, samples, len)?)?;
        write(
            out,
            LctMoments {
                t_mean: m.t_mean,
                omega_mean: m.omega_mean,
                big_a: m.big_a,
                big_b: m.big_b,
            },
        )
    })
}
