//! `lct` command-line interface.
//!
//! Exit codes: 0 success, 1 parse/usage/IO error, 2 not symplectic,
//! 3 degenerate kernel, 4 grid too narrow, 5 any other math error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::bogoliubov::bogoliubov_from_blocks;
use crate::dispersion::{ilct_transform_dispersion, reduced_matrix};
use crate::error::{LctError, Result};
use crate::io::{self, complex_to_rows, DispersionDoc, GeneratorDoc, LctDoc, RawLct, ReducedDoc};
use crate::liealg::{exp_generator_lct, isodispersion_residual, random_lct};
use crate::linalg::{assemble, max_abs};
use crate::metric::{Metric, Signature};
use crate::symplectic::{symplectic_residual, CanonicalMap, DEFAULT_TOL};
use crate::transform1d::{apply_lct, hermite_state, signal_moments, Grid, HermiteState, Lct1d};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_SYMPLECTIC: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_GRID: i32 = 4;
pub const EXIT_MATH: i32 = 5;

/// Exit code for an error.
pub fn exit_code(e: &LctError) -> i32 {
    match e {
        LctError::Parse(_) | LctError::InvalidArgument(_) | LctError::InvalidSignal(_) => {
            EXIT_USAGE
        }
        LctError::NotSymplectic { .. } => EXIT_NOT_SYMPLECTIC,
        LctError::DegenerateKernel { .. } => EXIT_DEGENERATE,
        LctError::GridTooNarrow { .. } => EXIT_GRID,
        _ => EXIT_MATH,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lct",
    version,
    about = "Linear canonical transforms on pseudo-Euclidean phase space"
)]
pub struct Cli {
    /// Absolute max-norm tolerance for all checks
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report residuals and class memberships of a transform file
    Classify { matrix: PathBuf },
    /// Compose two transforms: SECOND after FIRST
    Compose {
        second: PathBuf,
        first: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponentiate a generator file
    Exp {
        generator: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a random transform
    Random {
        /// n_plus,n_minus
        #[arg(long, default_value = "1,0", value_parser = parse_signature)]
        signature: Signature,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        scale: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a 1-D transform to a t,re,im signal CSV
    Apply {
        matrix: PathBuf,
        signal: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Output grid t0,dt,count (defaults to the input grid)
        #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
        grid: Option<Grid>,
    },
    /// Synthesize a Hermite-Gaussian state and print its measured moments
    State {
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mean_t: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mean_omega: f64,
        /// Frequency variance B of the ground state
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        b: f64,
        /// Sample grid t0,dt,count (defaults to 2048 points over T +- 10 sigma)
        #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
        grid: Option<Grid>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Propagate dispersion data through an isodispersion transform
    Disp {
        matrix: PathBuf,
        dispersion: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_signature(s: &str) -> std::result::Result<Signature, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [p, m] = parts.as_slice() else {
        return Err("expected n_plus,n_minus".into());
    };
    let p = p.parse::<usize>().map_err(|e| e.to_string())?;
    let m = m.parse::<usize>().map_err(|e| e.to_string())?;
    Signature::new(p, m).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [t0, dt, count] = parts.as_slice() else {
        return Err("expected t0,dt,count".into());
    };
    let t0 = t0.parse::<f64>().map_err(|e| e.to_string())?;
    let dt = dt.parse::<f64>().map_err(|e| e.to_string())?;
    let count = count.parse::<usize>().map_err(|e| e.to_string())?;
    Grid::new(t0, dt, count).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct Flagged {
    pub flag: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudoUnitaryReport {
    pub flag: bool,
    pub r_v: f64,
    pub r_u: f64,
    pub first_relation: f64,
    pub second_relation_printed: f64,
    pub second_relation_symmetric: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BogoliubovReport {
    pub w: Vec<Vec<[f64; 2]>>,
    pub v: Vec<Vec<[f64; 2]>>,
}

/// Residuals and class flags of a transform. Every class flag also
/// requires the symplectic check to pass.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub signature: Signature,
    pub tol: f64,
    pub symplectic_residual: f64,
    pub symplectic: bool,
    pub pseudo_unitary: PseudoUnitaryReport,
    pub isodispersion: Flagged,
    pub lorentz_embedded: Flagged,
    pub fourier_like: Flagged,
    pub bogoliubov: BogoliubovReport,
}

/// Classifies raw blocks; nothing is assumed valid beforehand.
pub fn classify(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    c: &DMatrix<f64>,
    d: &DMatrix<f64>,
    metric: &Metric,
    tol: f64,
) -> Result<ClassificationReport> {
    let n = metric.dim();
    for (m, name) in [(a, "a"), (b, "b"), (c, "c"), (d, "d")] {
        if m.nrows() != n || m.ncols() != n {
            return Err(LctError::DimensionMismatch(format!(
                "{name} must be {n}x{n}"
            )));
        }
    }
    let m = assemble(a, b, c, d);
    let sym_res = symplectic_residual(&m, metric)?;
    let symplectic = sym_res <= tol;
    let eta = metric.matrix();

    let pair = bogoliubov_from_blocks(a, b, c, d, metric);
    let r = pair.residuals();
    let iso = isodispersion_residual(&m, metric)?;

    let lorentz_res = max_abs(b)
        .max(max_abs(c))
        .max(max_abs(&(a - d)))
        .max(max_abs(&(a.transpose() * &eta * a - &eta)))
        .max((a.determinant() - 1.0).abs());
    let fourier_res = max_abs(a)
        .max(max_abs(d))
        .max(max_abs(&(b + c)))
        .max(max_abs(&(b.transpose() * &eta * b - &eta)));

    Ok(ClassificationReport {
        signature: metric.signature(),
        tol,
        symplectic_residual: sym_res,
        symplectic,
        pseudo_unitary: PseudoUnitaryReport {
            flag: symplectic && r.r_v <= tol && r.r_u <= tol,
            r_v: r.r_v,
            r_u: r.r_u,
            first_relation: r.first_relation,
            second_relation_printed: r.second_relation_printed,
            second_relation_symmetric: r.second_relation_symmetric,
        },
        isodispersion: Flagged {
            flag: symplectic && iso <= tol,
            residual: iso,
        },
        lorentz_embedded: Flagged {
            flag: symplectic && lorentz_res <= tol,
            residual: lorentz_res,
        },
        fourier_like: Flagged {
            flag: symplectic && fourier_res <= tol,
            residual: fourier_res,
        },
        bogoliubov: BogoliubovReport {
            w: complex_to_rows(&pair.w),
            v: complex_to_rows(&pair.v),
        },
    })
}

fn read_lct(path: &Path) -> Result<RawLct> {
    LctDoc::parse(&io::read_to_string(path)?)?.to_raw()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| LctError::Parse(format!("{}: {e}", p.display()))),
        None => writeln!(stdout, "{text}").map_err(|e| LctError::Parse(e.to_string())),
    }
}

#[derive(Serialize)]
struct MomentsDoc {
    n: u32,
    t_mean: f64,
    omega_mean: f64,
    #[serde(rename = "A")]
    big_a: f64,
    #[serde(rename = "B")]
    big_b: f64,
    #[serde(rename = "AB")]
    product: f64,
}

#[derive(Serialize)]
struct DispOutput {
    #[serde(flatten)]
    spec: DispersionDoc,
    reduced: ReducedDoc,
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    let tol = cli.tol;
    if !(tol >= 0.0) {
        return Err(LctError::InvalidArgument(format!(
            "--tol must be >= 0, got {tol}"
        )));
    }
    match cli.command {
        Command::Classify { matrix } => {
            let raw = read_lct(&matrix)?;
            let report = classify(&raw.a, &raw.b, &raw.c, &raw.d, &raw.metric, tol)?;
            emit(&to_json(&report), None, stdout)?;
            Ok(if report.symplectic {
                EXIT_OK
            } else {
                EXIT_NOT_SYMPLECTIC
            })
        }
        Command::Compose { second, first, out } => {
            let (s, f) = (read_lct(&second)?, read_lct(&first)?);
            let translated = s.translation.is_some() || f.translation.is_some();
            let composed = s
                .to_inhomogeneous(tol)?
                .compose(&f.to_inhomogeneous(tol)?)?;
            let doc = if translated {
                LctDoc::from_inhomogeneous(&composed)
            } else {
                LctDoc::from_lct(composed.lct())
            };
            emit(&to_json(&doc), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Exp { generator, out } => {
            let g = GeneratorDoc::parse(&io::read_to_string(&generator)?)?.to_generator(tol)?;
            let l = exp_generator_lct(&g, tol.max(DEFAULT_TOL))?;
            emit(&to_json(&LctDoc::from_lct(&l)), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Random {
            signature,
            seed,
            scale,
            out,
        } => {
            let l = random_lct(signature, seed, scale)?;
            emit(&to_json(&LctDoc::from_lct(&l)), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Apply {
            matrix,
            signal,
            out,
            grid,
        } => {
            let raw = read_lct(&matrix)?;
            if raw.translation.is_some() {
                return Err(LctError::InvalidArgument(
                    "apply does not support translations".into(),
                ));
            }
            let l = Lct1d::from_block(&raw.to_lct(tol)?)?;
            let s = io::read_signal_file(&signal)?;
            let g = grid.unwrap_or_else(|| s.grid());
            let result = apply_lct(&l, &s, g)?;
            io::write_signal_file(&result, &out)?;
            Ok(EXIT_OK)
        }
        Command::State {
            n,
            mean_t,
            mean_omega,
            b,
            grid,
            out,
        } => {
            if !(b > 0.0 && b.is_finite()) {
                return Err(LctError::InvalidArgument(format!(
                    "--b must be > 0, got {b}"
                )));
            }
            let h = HermiteState::new(n, mean_t, mean_omega, b.sqrt())?;
            let g = match grid {
                Some(g) => g,
                None => Grid::centered(mean_t, 10.0 * h.time_sigma(), 2048)?,
            };
            let s = hermite_state(&h, g)?;
            if let Some(p) = &out {
                io::write_signal_file(&s, p)?;
            }
            let m = signal_moments(&s)?;
            let doc = MomentsDoc {
                n,
                t_mean: m.t_mean,
                omega_mean: m.omega_mean,
                big_a: m.big_a,
                big_b: m.big_b,
                product: m.big_a * m.big_b,
            };
            emit(&to_json(&doc), None, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Disp {
            matrix,
            dispersion,
            out,
        } => {
            let l = read_lct(&matrix)?.to_inhomogeneous(tol)?;
            let din = DispersionDoc::parse(&io::read_to_string(&dispersion)?)?.to_spec(tol)?;
            let dout = ilct_transform_dispersion(&l, &din, tol)?;
            let reduced = reduced_matrix(l.linear(), &din, &dout)?;
            let doc = DispOutput {
                spec: DispersionDoc::from_spec(&dout),
                reduced: ReducedDoc::from(&reduced),
            };
            emit(&to_json(&doc), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
