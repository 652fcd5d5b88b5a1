use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("tolerance conflict: {0}")]
    ToleranceConflict(String),
    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("polytope does not contain the unit ball")]
    NotCircumscribed,
    #[error("no bounded configuration after {0} re-draws")]
    UnboundedDraw(usize),
    #[error("parameter c = {0} must lie in (0, 1)")]
    CInvalid(f64),
    #[error("polytope is not contained in {radius}·B (max vertex norm {max_norm})")]
    ContainmentViolated { radius: f64, max_norm: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
