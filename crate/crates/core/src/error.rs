use thiserror::Error;

/// Errors raised by the combinatorial constructors, the bijections and the
/// enumeration oracle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid forest: {0}")]
    InvalidForest(String),

    #[error("invalid bridge: {0}")]
    InvalidBridge(String),

    #[error("invalid contour pair: {0}")]
    InvalidContour(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("not a quadrangulation with a boundary: {0}")]
    NotBoundaryQuadrangulation(String),

    #[error("invalid self-avoiding-walk configuration: {0}")]
    InvalidSawConfiguration(String),

    #[error("dimension mismatch: forest has {forest} trees but bridge has length {bridge}")]
    DimensionMismatch { forest: usize, bridge: usize },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("{0} must be positive")]
    NonPositive(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("unsupported format version {found:?}, expected {expected:?}")]
    Version { found: String, expected: &'static str },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
