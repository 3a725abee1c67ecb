//! JSON documents for transforms, generators and dispersion data, and the
//! `t,re,im` signal CSV format. Matrices are row-major nested arrays.

use std::io::{Read, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bogoliubov::CMatrix;
use crate::dispersion::{DispersionSpec, ReducedLct};
use crate::error::{LctError, Result};
use crate::liealg::Generator;
use crate::metric::{Metric, Signature};
use crate::symplectic::{BlockLct, InhomogeneousLct};
use crate::transform1d::SampledSignal;

pub type Rows = Vec<Vec<f64>>;

fn parse_err(e: impl std::fmt::Display) -> LctError {
    LctError::Parse(e.to_string())
}

pub fn read_to_string(path: &Path) -> Result<String> {
    let mut s = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut s))
        .map_err(|e| LctError::Parse(format!("{}: {e}", path.display())))?;
    Ok(s)
}

/// Row-major rows into an `n x n` matrix.
pub fn matrix_from_rows(rows: &Rows, n: usize, name: &str) -> Result<DMatrix<f64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(LctError::Parse(format!(
            "{name} must be {n}x{n}, got row lengths {shape:?}"
        )));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn matrix_to_rows(m: &DMatrix<f64>) -> Rows {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Complex matrix as rows of `[re, im]` pairs.
pub fn complex_to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    m.row_iter()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn vector_from(v: &[f64], n: usize, name: &str) -> Result<DVector<f64>> {
    if v.len() != n {
        return Err(LctError::Parse(format!(
            "{name} must have length {n}, got {}",
            v.len()
        )));
    }
    Ok(DVector::from_column_slice(v))
}

/// Transform document: `{"signature", "a", "b", "c", "d", "K"?, "Y"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LctDoc {
    pub signature: Signature,
    pub a: Rows,
    pub b: Rows,
    pub c: Rows,
    pub d: Rows,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<f64>>,
}

/// Shape-checked but otherwise unvalidated blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct RawLct {
    pub metric: Metric,
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub d: DMatrix<f64>,
    pub translation: Option<(DVector<f64>, DVector<f64>)>,
}

impl LctDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_err)
    }

    pub fn from_lct(l: &BlockLct) -> Self {
        Self {
            signature: l.metric().signature(),
            a: matrix_to_rows(l.a()),
            b: matrix_to_rows(l.b()),
            c: matrix_to_rows(l.c()),
            d: matrix_to_rows(l.d()),
            k: None,
            y: None,
        }
    }

    pub fn from_inhomogeneous(l: &InhomogeneousLct) -> Self {
        Self {
            k: Some(l.k().iter().copied().collect()),
            y: Some(l.y().iter().copied().collect()),
            ..Self::from_lct(l.lct())
        }
    }

    pub fn to_raw(&self) -> Result<RawLct> {
        let metric = Metric::new(self.signature)?;
        let n = metric.dim();
        let translation = match (&self.k, &self.y) {
            (None, None) => None,
            (k, y) => {
                let zero = vec![0.0; n];
                Some((
                    vector_from(k.as_deref().unwrap_or(&zero), n, "K")?,
                    vector_from(y.as_deref().unwrap_or(&zero), n, "Y")?,
                ))
            }
        };
        let all = [&self.a, &self.b, &self.c, &self.d];
        if all
            .iter()
            .flat_map(|m| m.iter().flatten())
            .any(|v| !v.is_finite())
        {
            return Err(LctError::Parse("matrix entries must be finite".into()));
        }
        Ok(RawLct {
            a: matrix_from_rows(&self.a, n, "a")?,
            b: matrix_from_rows(&self.b, n, "b")?,
            c: matrix_from_rows(&self.c, n, "c")?,
            d: matrix_from_rows(&self.d, n, "d")?,
            translation,
            metric,
        })
    }
}

impl RawLct {
    pub fn to_lct(&self, tol: f64) -> Result<BlockLct> {
        BlockLct::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.metric.clone(),
            tol,
        )
    }

    /// Validated transform; a missing translation becomes zero.
    pub fn to_inhomogeneous(&self, tol: f64) -> Result<InhomogeneousLct> {
        let n = self.metric.dim();
        let (k, y) = self
            .translation
            .clone()
            .unwrap_or_else(|| (DVector::zeros(n), DVector::zeros(n)));
        InhomogeneousLct::new(self.to_lct(tol)?, k, y)
    }
}

/// Generator document: `{"signature", "lambda", "mu", "phi", "theta"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub signature: Signature,
    pub lambda: Rows,
    pub mu: Rows,
    pub phi: Rows,
    pub theta: Rows,
}

impl GeneratorDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_err)
    }

    pub fn to_generator(&self, tol: f64) -> Result<Generator> {
        let metric = Metric::new(self.signature)?;
        let n = metric.dim();
        Generator::new(
            matrix_from_rows(&self.lambda, n, "lambda")?,
            matrix_from_rows(&self.mu, n, "mu")?,
            matrix_from_rows(&self.phi, n, "phi")?,
            matrix_from_rows(&self.theta, n, "theta")?,
            metric,
            tol,
        )
    }

    pub fn from_generator(g: &Generator) -> Self {
        Self {
            signature: g.metric().signature(),
            lambda: matrix_to_rows(g.lambda()),
            mu: matrix_to_rows(g.mu()),
            phi: matrix_to_rows(g.phi()),
            theta: matrix_to_rows(g.theta()),
        }
    }
}

/// Dispersion document: `{"P", "X", "a_win", "b_win"}` with optional
/// `signature` (Euclidean by default) and output-only `A`, `B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Signature>,
    #[serde(rename = "P")]
    pub p: Vec<f64>,
    #[serde(rename = "X")]
    pub x: Vec<f64>,
    pub a_win: Rows,
    pub b_win: Rows,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub big_a: Option<Rows>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub big_b: Option<Rows>,
}

impl DispersionDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_err)
    }

    pub fn to_spec(&self, tol: f64) -> Result<DispersionSpec> {
        let sig = match self.signature {
            Some(s) => s,
            None => Signature::new(self.p.len(), 0)?,
        };
        let metric = Metric::new(sig)?;
        let n = metric.dim();
        DispersionSpec::new(
            metric,
            vector_from(&self.p, n, "P")?,
            vector_from(&self.x, n, "X")?,
            matrix_from_rows(&self.a_win, n, "a_win")?,
            matrix_from_rows(&self.b_win, n, "b_win")?,
            tol,
        )
    }

    pub fn from_spec(d: &DispersionSpec) -> Self {
        Self {
            signature: Some(d.metric().signature()),
            p: d.p().iter().copied().collect(),
            x: d.x().iter().copied().collect(),
            a_win: matrix_to_rows(d.a_win()),
            b_win: matrix_to_rows(d.b_win()),
            big_a: Some(matrix_to_rows(d.big_a())),
            big_b: Some(matrix_to_rows(d.big_b())),
        }
    }
}

/// Named reduced blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedDoc {
    #[serde(rename = "Pi")]
    pub pi: Rows,
    #[serde(rename = "Xi")]
    pub xi: Rows,
    #[serde(rename = "Theta")]
    pub theta: Rows,
    #[serde(rename = "Lambda")]
    pub lambda: Rows,
}

impl From<&ReducedLct> for ReducedDoc {
    fn from(r: &ReducedLct) -> Self {
        Self {
            pi: matrix_to_rows(&r.pi),
            xi: matrix_to_rows(&r.xi),
            theta: matrix_to_rows(&r.theta),
            lambda: matrix_to_rows(&r.lambda),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    t: f64,
    re: f64,
    im: f64,
}

/// Reads a `t,re,im` CSV and checks that `t` is uniform within `1e-9 dt`.
pub fn read_signal_csv<R: Read>(reader: R) -> Result<SampledSignal> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(parse_err)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["t", "re", "im"] {
        return Err(LctError::Parse(format!(
            "signal CSV header must be t,re,im, got {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let rows: Vec<CsvRow> = rdr
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(parse_err)?;
    if rows.len() < 2 {
        return Err(LctError::Parse("signal CSV needs at least 2 rows".into()));
    }
    let t0 = rows[0].t;
    let dt = (rows[rows.len() - 1].t - t0) / (rows.len() - 1) as f64;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(LctError::Parse("signal CSV times must increase".into()));
    }
    for (k, r) in rows.iter().enumerate() {
        let expected = t0 + k as f64 * dt;
        if !((r.t - expected).abs() <= 1e-9 * dt) {
            return Err(LctError::Parse(format!(
                "row {k}: t = {} is off the uniform grid (expected {expected})",
                r.t
            )));
        }
    }
    let samples = rows.iter().map(|r| Complex64::new(r.re, r.im)).collect();
    SampledSignal::new(t0, dt, samples).map_err(parse_err)
}

pub fn read_signal_file(path: &Path) -> Result<SampledSignal> {
    let f = std::fs::File::open(path)
        .map_err(|e| LctError::Parse(format!("{}: {e}", path.display())))?;
    read_signal_csv(f)
}

pub fn write_signal_csv<W: Write>(s: &SampledSignal, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for (k, z) in s.samples().iter().enumerate() {
        w.serialize(CsvRow {
            t: s.t(k),
            re: z.re,
            im: z.im,
        })
        .map_err(parse_err)?;
    }
    w.flush().map_err(parse_err)
}

pub fn write_signal_file(s: &SampledSignal, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path)
        .map_err(|e| LctError::Parse(format!("{}: {e}", path.display())))?;
    write_signal_csv(s, std::io::BufWriter::new(f))
}
