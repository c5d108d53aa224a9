use thiserror::Error;

/// Errors produced by model construction, curve generation and the
/// optimal-curve machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("degenerate null density")]
    DegenerateNullDensity,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("curve too short")]
    CurveTooShort,

    #[error("no samples")]
    NoSamples,

    #[error("inconsistent inputs")]
    InconsistentInputs,

    #[error("overlapping segments")]
    OverlappingSegments,

    #[error("thresholds unknown; region recovery requires model-known mode")]
    ThresholdsUnknown,

    #[error("level set has positive measure")]
    PositiveMeasureLevelSet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
