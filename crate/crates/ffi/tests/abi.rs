use std::f64::consts::PI;
use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lct_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lct_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn block(n_plus: usize, n_minus: usize, m: &[f64]) -> *mut LctBlock {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { lct_block_new(n_plus, n_minus, m.as_ptr(), 1e-9, &mut h) },
        LctStatus::Ok
    );
    h
}

#[test]
fn handle_lifecycle() {
    let (s, c) = 0.3f64.sin_cos();
    let rot = [c, s, -s, c];
    let h = block(1, 0, &rot);
    assert_eq!(unsafe { lct_block_dim(h) }, 1);
    assert_eq!(unsafe { lct_block_dim(ptr::null()) }, 0);

    let mut inv = ptr::null_mut();
    let mut id = ptr::null_mut();
    unsafe {
        assert_eq!(lct_block_inverse(h, &mut inv), LctStatus::Ok);
        assert_eq!(lct_block_compose(h, inv, &mut id), LctStatus::Ok);
    }
    let mut m = [0.0; 4];
    assert_eq!(
        unsafe { lct_block_matrix(id, m.as_mut_ptr(), 4) },
        LctStatus::Ok
    );
    for (got, want) in m.iter().zip([1.0, 0.0, 0.0, 1.0]) {
        assert!((got - want).abs() < 1e-15);
    }
    assert_eq!(
        unsafe { lct_block_matrix(id, m.as_mut_ptr(), 3) },
        LctStatus::DimensionMismatch
    );

    let (mut p, mut x) = (0.0, 0.0);
    assert_eq!(
        unsafe { lct_block_apply(h, &1.0, &2.0, &mut p, &mut x) },
        LctStatus::Ok
    );
    assert!((p - (c + 2.0 * s)).abs() < 1e-15 && (x - (-s + 2.0 * c)).abs() < 1e-15);

    unsafe {
        lct_block_free(h);
        lct_block_free(inv);
        lct_block_free(id);
        lct_block_free(ptr::null_mut());
    }
}

#[test]
fn errors_carry_status_and_message() {
    let singular = [1.0, 1.0, 1.0, 1.0];
    let mut h = ptr::null_mut();
    let s = unsafe { lct_block_new(1, 0, singular.as_ptr(), 1e-9, &mut h) };
    assert_eq!(s, LctStatus::NotSymplectic);
    assert!(h.is_null());
    assert!(last_error().contains("not pseudo-symplectic"));

    let s = unsafe { lct_block_new(0, 0, singular.as_ptr(), 1e-9, &mut h) };
    assert_eq!(s, LctStatus::InvalidArgument);
    let s = unsafe { lct_block_new(1, 0, ptr::null(), 1e-9, &mut h) };
    assert_eq!(s, LctStatus::NullPointer);

    let mut r = 0.0;
    assert_eq!(
        unsafe { lct_symplectic_residual(1, 0, singular.as_ptr(), &mut r) },
        LctStatus::Ok
    );
    assert_eq!(r, 1.0);
    assert_eq!(last_error(), "");
}

#[test]
fn random_transforms_are_symplectic() {
    for iso in [false, true] {
        let mut h = ptr::null_mut();
        assert_eq!(
            unsafe { lct_random(1, 3, 7, 0.5, iso, &mut h) },
            LctStatus::Ok
        );
        let mut r = 1.0;
        assert_eq!(unsafe { lct_block_residual(h, &mut r) }, LctStatus::Ok);
        assert!(r <= 1e-9);
        let mut m = vec![0.0; 64];
        assert_eq!(
            unsafe { lct_block_matrix(h, m.as_mut_ptr(), 64) },
            LctStatus::Ok
        );
        let mut cls = LctClassification::default();
        assert_eq!(
            unsafe { lct_classify(1, 3, m.as_ptr(), 1e-9, &mut cls) },
            LctStatus::Ok
        );
        assert!(cls.symplectic);
        assert_eq!(cls.isodispersion, iso);
        assert_eq!(cls.pseudo_unitary, iso);
        unsafe { lct_block_free(h) };
    }
}

#[test]
fn classify_fourier() {
    let f = [0.0, 1.0, -1.0, 0.0];
    let mut cls = LctClassification::default();
    assert_eq!(
        unsafe { lct_classify(1, 0, f.as_ptr(), 1e-9, &mut cls) },
        LctStatus::Ok
    );
    assert!(cls.fourier_like && cls.pseudo_unitary && cls.isodispersion && !cls.lorentz_embedded);
}

#[test]
fn signal_pipeline() {
    let (n, t0, dt) = (1024usize, -12.0, 24.0 / 1023.0);
    let mut psi = vec![LctComplex::default(); n];
    let s = unsafe { lct_hermite_state(0, 0.0, 0.0, 1.0, t0, dt, psi.as_mut_ptr(), n) };
    assert_eq!(s, LctStatus::Ok);

    let (sn, cs) = (PI / 2.0).sin_cos();
    let mut out = vec![LctComplex::default(); n];
    let s = unsafe {
        lct_transform1d_apply(
            cs,
            sn,
            -sn,
            cs,
            t0,
            dt,
            psi.as_ptr(),
            n,
            t0,
            dt,
            out.as_mut_ptr(),
            n,
        )
    };
    assert_eq!(s, LctStatus::Ok);
    let mut m = LctMoments::default();
    assert_eq!(
        unsafe { lct_signal_moments(t0, dt, out.as_ptr(), n, &mut m) },
        LctStatus::Ok
    );
    // A = 1/4, B = 1 swap under the Fourier map
    assert!((m.big_a - 1.0).abs() < 1e-5 && (m.big_b - 0.25).abs() < 1e-5);

    let s = unsafe {
        lct_transform1d_apply(
            1.0,
            1.0,
            0.0,
            1.0,
            t0,
            dt,
            psi.as_ptr(),
            n,
            t0,
            dt,
            out.as_mut_ptr(),
            n,
        )
    };
    assert_eq!(s, LctStatus::DegenerateKernel);
    let s = unsafe { lct_hermite_state(3, 0.0, 0.0, 1.0, -1.0, 0.1, psi.as_mut_ptr(), 21) };
    assert_eq!(s, LctStatus::GridTooNarrow);
    let zero = [LctComplex::default(); 8];
    assert_eq!(
        unsafe { lct_signal_moments(0.0, 1.0, zero.as_ptr(), 8, &mut m) },
        LctStatus::MathError
    );
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_abi() {
    let header = std::fs::read_to_string(crate_dir().join("include/lct.h")).unwrap();
    for name in [
        "typedef struct LctBlock LctBlock;",
        "LCT_STATUS_NOT_SYMPLECTIC = 4",
        "lct_last_error(void)",
        "lct_block_new(",
        "lct_block_free(",
        "lct_block_dim(",
        "lct_block_matrix(",
        "lct_block_residual(",
        "lct_block_compose(",
        "lct_block_inverse(",
        "lct_block_apply(",
        "lct_random(",
        "lct_symplectic_residual(",
        "lct_classify(",
        "lct_transform1d_apply(",
        "lct_hermite_state(",
        "lct_signal_moments(",
        "typedef struct LctComplex",
        "typedef struct LctClassification",
        "typedef struct LctMoments",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

fn static_lib() -> PathBuf {
    // test binaries live in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().unwrap().parent().unwrap().join("liblct_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    lib
}

fn cc() -> Option<&'static str> {
    ["cc", "clang", "gcc"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    })
}

#[test]
fn c_program_links_against_static_library() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping link test");
        return;
    };
    let lib = static_lib();
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let exe = dir.path().join("main");
    let include = crate_dir().join("include");
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg(format!("-I{}", include.display()))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok 4");
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <math.h>
#include "lct.h"

int main(void) {
    const double fourier[4] = {0.0, 1.0, -1.0, 0.0};
    LctBlock *f = NULL, *ff = NULL;
    if (lct_block_new(1, 0, fourier, 1e-9, &f) != LCT_STATUS_OK) return 1;
    if (lct_block_compose(f, f, &ff) != LCT_STATUS_OK) return 2;
    double m[4];
    if (lct_block_matrix(ff, m, 4) != LCT_STATUS_OK) return 3;
    if (fabs(m[0] + 1.0) > 1e-15 || fabs(m[3] + 1.0) > 1e-15) return 4;
    lct_block_free(f);
    lct_block_free(ff);

    const double bad[4] = {1.0, 1.0, 1.0, 1.0};
    LctBlock *b = NULL;
    LctStatus s = lct_block_new(1, 0, bad, 1e-9, &b);
    if (b != NULL || lct_last_error()[0] == '\0') return 5;
    printf("ok %d\n", (int)s);
    return 0;
}
"#;
