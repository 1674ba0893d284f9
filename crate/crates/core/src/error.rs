use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("unsupported dimension {0} (expected 1, 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("cubic has no conjugate pair at r = {r} (discriminant {discriminant:e})")]
    NoConjugatePair { r: f64, discriminant: f64 },
    #[error("near-degenerate denominator at r = {r}: |D| = {d:e}")]
    DegenerateDenominator { r: f64, d: f64 },
    #[error("step size {dt} too coarse (limit {limit})")]
    StepSize { dt: f64, limit: f64 },
    #[error("frequency must be positive here (got r = {0})")]
    ZeroFrequency(f64),
    #[error("unconverged tail: bound {bound:e} exceeds {threshold:e} of total {total:e}")]
    UnconvergedTail { bound: f64, threshold: f64, total: f64 },
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error("fit: {0}")]
    Fit(String),
    #[error("scenario: {0}")]
    Scenario(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
