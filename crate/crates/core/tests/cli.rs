use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lct_core::io::{read_signal_file, write_signal_file};
use lct_core::transform1d::{relative_l2, relative_l2_up_to_phase, Grid, SampledSignal};
use num_complex::Complex64;
use serde_json::Value;
use tempfile::TempDir;

fn lct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lct"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn lct1(dir: &TempDir, name: &str, a: f64, b: f64, c: f64, d: f64) -> PathBuf {
    write(
        dir,
        name,
        &format!(
            r#"{{"signature":{{"n_plus":1,"n_minus":0}},"a":[[{a:?}]],"b":[[{b:?}]],"c":[[{c:?}]],"d":[[{d:?}]]}}"#
        ),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gaussian_csv(dir: &TempDir) -> (PathBuf, SampledSignal) {
    let g = Grid::new(-12.0, 24.0 / 1023.0, 1024).unwrap();
    let sig = SampledSignal::from_fn(g, |t| Complex64::new((-t * t / 2.0).exp(), 0.0));
    let p = dir.path().join("gauss.csv");
    write_signal_file(&sig, &p).unwrap();
    (p, sig)
}

#[test]
fn classify_identity() {
    let dir = TempDir::new().unwrap();
    let f = lct1(&dir, "id.json", 1.0, 0.0, 0.0, 1.0);
    let out = lct(&["classify", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["symplectic"], true);
    assert_eq!(v["symplectic_residual"], 0.0);
    assert_eq!(v["pseudo_unitary"]["flag"], true);
    assert_eq!(v["isodispersion"]["flag"], true);
    assert_eq!(v["lorentz_embedded"]["flag"], true);
    assert_eq!(v["fourier_like"]["flag"], false);
}

#[test]
fn classify_fourier() {
    let dir = TempDir::new().unwrap();
    let f = lct1(&dir, "f.json", 0.0, 1.0, -1.0, 0.0);
    let v = json(&lct(&["classify", s(&f)]));
    assert_eq!(v["fourier_like"]["flag"], true);
    assert_eq!(v["pseudo_unitary"]["flag"], true);
    assert_eq!(v["isodispersion"]["flag"], true);
    assert_eq!(v["bogoliubov"]["w"][0][0], serde_json::json!([0.0, -1.0]));
}

#[test]
fn classify_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"signature":{"n_plus":1,"n_minus":0},"a":[[1,0]],"b":[[0]],"c":[[0]],"d":[[1]]}"#,
    );
    assert_eq!(lct(&["classify", s(&bad)]).status.code(), Some(1));
    let singular = lct1(&dir, "sing.json", 1.0, 1.0, 1.0, 1.0);
    let out = lct(&["classify", s(&singular)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["symplectic_residual"], 1.0);
}

#[test]
fn apply_fourier_to_gaussian() {
    let dir = TempDir::new().unwrap();
    let f = lct1(&dir, "f.json", 0.0, 1.0, -1.0, 0.0);
    let (input, sig) = gaussian_csv(&dir);
    let out_path = dir.path().join("out.csv");
    let out = lct(&["apply", s(&f), s(&input), "--out", s(&out_path)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let result = read_signal_file(&out_path).unwrap();
    assert!(relative_l2_up_to_phase(result.samples(), sig.samples()) < 1e-6);
}

#[test]
fn apply_with_explicit_grid() {
    let dir = TempDir::new().unwrap();
    let f = lct1(&dir, "f.json", 0.0, 1.0, -1.0, 0.0);
    let (input, _) = gaussian_csv(&dir);
    let out_path = dir.path().join("out.csv");
    let out = lct(&[
        "apply",
        s(&f),
        s(&input),
        "--out",
        s(&out_path),
        "--grid",
        "-5,0.05,201",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let result = read_signal_file(&out_path).unwrap();
    assert_eq!(result.len(), 201);
    let exact: Vec<_> = (0..201)
        .map(|k| {
            let w = -5.0 + 0.05 * k as f64;
            Complex64::new((-w * w / 2.0).exp(), 0.0)
        })
        .collect();
    assert!(relative_l2_up_to_phase(result.samples(), &exact) < 1e-6);
}

#[test]
fn apply_errors() {
    let dir = TempDir::new().unwrap();
    let (input, _) = gaussian_csv(&dir);
    let shear = lct1(&dir, "shear.json", 1.0, 1.0, 0.0, 1.0);
    let out_path = dir.path().join("out.csv");
    assert_eq!(
        lct(&["apply", s(&shear), s(&input), "--out", s(&out_path)])
            .status
            .code(),
        Some(3)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        lct(&["apply", s(&missing), s(&input), "--out", s(&out_path)])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn apply_round_trip_through_inverse() {
    let dir = TempDir::new().unwrap();
    let (input, sig) = gaussian_csv(&dir);
    for theta in [0.4_f64, 1.3, 2.2] {
        let (sn, cs) = theta.sin_cos();
        let fwd = lct1(&dir, "fwd.json", cs, sn, -sn, cs);
        let inv = lct1(&dir, "inv.json", cs, -sn, sn, cs);
        let mid = dir.path().join("mid.csv");
        let back = dir.path().join("back.csv");
        assert_eq!(
            lct(&["apply", s(&fwd), s(&input), "--out", s(&mid)])
                .status
                .code(),
            Some(0)
        );
        assert_eq!(
            lct(&["apply", s(&inv), s(&mid), "--out", s(&back)])
                .status
                .code(),
            Some(0)
        );
        let result = read_signal_file(&back).unwrap();
        assert!(relative_l2(result.samples(), sig.samples()) < 1e-4);
    }
}

#[test]
fn state_ground_moments() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("state.csv");
    let out = lct(&[
        "state",
        "--n",
        "0",
        "--mean-t",
        "0",
        "--mean-omega",
        "0",
        "--b",
        "0.5",
        "--out",
        s(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for (key, expected) in [("t_mean", 0.0), ("omega_mean", 0.0), ("A", 0.5), ("B", 0.5)] {
        let got = v[key].as_f64().unwrap();
        assert!((got - expected).abs() < 1e-5, "{key} = {got}");
    }
    assert_eq!(read_signal_file(&csv).unwrap().len(), 2048);
}

#[test]
fn state_excited_and_shifted() {
    let v = json(&lct(&["state", "--n", "3", "--b", "0.5"]));
    assert!((v["AB"].as_f64().unwrap() - 49.0 / 4.0).abs() < 1e-3);
    let v = json(&lct(&[
        "state",
        "--mean-t",
        "-2",
        "--mean-omega",
        "3",
        "--b",
        "2",
    ]));
    assert!((v["t_mean"].as_f64().unwrap() + 2.0).abs() < 1e-6);
    assert!((v["omega_mean"].as_f64().unwrap() - 3.0).abs() < 1e-6);
}

#[test]
fn state_errors() {
    assert_eq!(lct(&["state", "--b", "-1"]).status.code(), Some(1));
    assert_eq!(
        lct(&["state", "--n", "2", "--grid", "-1,0.1,21"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn compose_exp_random_round_trip() {
    let dir = TempDir::new().unwrap();
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    let r = lct(&[
        "random",
        "--signature",
        "1,3",
        "--seed",
        "4",
        "--scale",
        "0.5",
        "--out",
        s(&r1),
    ]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(
        lct(&[
            "random",
            "--signature",
            "1,3",
            "--seed",
            "5",
            "--out",
            s(&r2)
        ])
        .status
        .code(),
        Some(0)
    );
    let out = lct(&["compose", s(&r2), s(&r1)]);
    assert_eq!(out.status.code(), Some(0));
    let composed = write(&dir, "c.json", &String::from_utf8(out.stdout).unwrap());
    let v = json(&lct(&["classify", s(&composed)]));
    assert!(v["symplectic_residual"].as_f64().unwrap() <= 1e-9);

    let g = write(
        &dir,
        "g.json",
        r#"{"signature":{"n_plus":1,"n_minus":0},"lambda":[[0]],"mu":[[0]],"phi":[[0]],"theta":[[0.5]]}"#,
    );
    let v = json(&lct(&["exp", s(&g)]));
    assert!((v["a"][0][0].as_f64().unwrap() - 0.5_f64.cos()).abs() < 1e-15);
    assert!((v["b"][0][0].as_f64().unwrap() - 0.5_f64.sin()).abs() < 1e-15);
    let bad = write(
        &dir,
        "bad.json",
        r#"{"signature":{"n_plus":1,"n_minus":0},"lambda":[[1]],"mu":[[0]],"phi":[[0]],"theta":[[0]]}"#,
    );
    assert_eq!(lct(&["exp", s(&bad)]).status.code(), Some(5));
}

#[test]
fn compose_keeps_translations() {
    let dir = TempDir::new().unwrap();
    let shift = write(
        &dir,
        "t.json",
        r#"{"signature":{"n_plus":1,"n_minus":0},"a":[[1]],"b":[[0]],"c":[[0]],"d":[[1]],"K":[1.0],"Y":[2.0]}"#,
    );
    let f = lct1(&dir, "f.json", 0.0, 1.0, -1.0, 0.0);
    let v = json(&lct(&["compose", s(&f), s(&shift)]));
    // F(K, Y) = (Y, -K)
    assert_eq!(v["K"], serde_json::json!([2.0]));
    assert_eq!(v["Y"], serde_json::json!([-1.0]));
}

#[test]
fn disp_fourier_swaps_dispersions() {
    let dir = TempDir::new().unwrap();
    let f = lct1(&dir, "f.json", 0.0, 1.0, -1.0, 0.0);
    let d = write(
        &dir,
        "d.json",
        r#"{"P":[0.5],"X":[2.0],"a_win":[[1.0]],"b_win":[[0.5]]}"#,
    );
    let out = lct(&["disp", s(&f), s(&d)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["A"], serde_json::json!([[0.25]]));
    assert_eq!(v["B"], serde_json::json!([[1.0]]));
    assert_eq!(v["P"], serde_json::json!([2.0]));
    assert_eq!(v["X"], serde_json::json!([-0.5]));
    assert_eq!(v["reduced"]["Xi"], serde_json::json!([[-1.0]]));
    assert_eq!(v["reduced"]["Theta"], serde_json::json!([[1.0]]));

    let shear = lct1(&dir, "shear.json", 1.0, 1.0, 0.0, 1.0);
    assert_eq!(lct(&["disp", s(&shear), s(&d)]).status.code(), Some(5));
}

#[test]
fn help_and_unknown_command() {
    assert_eq!(lct(&["--help"]).status.code(), Some(0));
    assert_eq!(lct(&["frobnicate"]).status.code(), Some(1));
}
