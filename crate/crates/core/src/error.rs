use thiserror::Error;

/// Errors produced by the transform library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LctError {
    #[error("signature must have at least one direction")]
    EmptySignature,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not pseudo-symplectic (residual {residual:.3e} > tolerance {tol:.3e})")]
    NotSymplectic { residual: f64, tol: f64 },

    #[error("operands use different metrics")]
    MetricMismatch,

    #[error("matrix is not in SO(n+, n-) (residual {residual:.3e})")]
    NotPseudoOrthogonal { residual: f64 },

    #[error("boost axes do not match the signature: {0}")]
    AxisSignatureMismatch(String),

    #[error("constraint `{constraint}` violated (residual {residual:.3e})")]
    ConstraintViolated {
        constraint: &'static str,
        residual: f64,
    },

    #[error("generator is outside the Lie algebra: {0}")]
    InvalidGenerator(String),

    #[error("transform is not isodispersion (residual {residual:.3e})")]
    NotIsodispersion { residual: f64 },

    #[error("invalid dispersion data: {0}")]
    InvalidDispersion(String),

    #[error("propagated dispersion no longer satisfies a.b = I/2 (residual {residual:.3e})")]
    DispersionNotPreserved { residual: f64 },

    #[error("kernel is degenerate for |c| = {c:.3e}")]
    DegenerateKernel { c: f64 },

    #[error("grid [{lo}, {hi}] does not cover the state support [{need_lo}, {need_hi}]")]
    GridTooNarrow {
        lo: f64,
        hi: f64,
        need_lo: f64,
        need_hi: f64,
    },

    #[error("signal has zero norm")]
    ZeroSignal,

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = LctError> = std::result::Result<T, E>;
