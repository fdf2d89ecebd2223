use thiserror::Error;

/// Errors raised by the symbolic kernel and the problem-file front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is not homogeneous: {0}")]
    InhomogeneousSeries(String),
    #[error("operation requires a nonzero series")]
    ZeroSeries,
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("vector field is not homological: {0}")]
    NotHomological(String),
    #[error("fixed-point iteration did not stabilize after {0} iterations")]
    NonConvergent(usize),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("missing binding for variable `{0}`")]
    MissingBinding(String),
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown name `{name}`")]
    UnknownName { line: usize, col: usize, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
