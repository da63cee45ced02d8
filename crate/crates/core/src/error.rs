use crate::dynamics::Trajectory;
use crate::exprkit::{EvalError, NotTimeOnly, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Law(#[from] NotTimeOnly),
    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("charge q must be non-zero")]
    ZeroCharge,
    #[error("azimuthal control needs θ₀ strictly inside (0, π), got {0}")]
    PolarAxis(f64),
    #[error("the gauge scalar must depend on time only for this quantity")]
    SpatialGauge,
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("magnetic field must vanish for a drive program, got |B| = {0}")]
    MagneticDrive(f64),
    #[error("invalid integration grid: dt = {dt}, t_end = {t_end}")]
    InvalidGrid { dt: f64, t_end: f64 },
    #[error(
        "applied field leaves the solution family at t = {t}: constraint residual {residual:e} exceeds {tolerance:e}"
    )]
    ConstraintViolation {
        t: f64,
        residual: f64,
        tolerance: f64,
        partial: Box<Trajectory>,
    },
    #[error("state became non-finite at t = {0}")]
    NonFinite(f64),
    #[error("line {line}: {message}")]
    ScenarioSyntax { line: usize, message: String },
    #[error("scenario key `{key}`: {message}")]
    ScenarioValue { key: String, message: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn value(key: &str, message: impl std::fmt::Display) -> Self {
        Error::ScenarioValue {
            key: key.to_string(),
            message: message.to_string(),
        }
    }
}
