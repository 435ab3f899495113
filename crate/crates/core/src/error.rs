use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("empty interval ({lo}, {hi})")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("roots of different polynomials collide near {at} (tolerance {tol})")]
    BreakpointCollision { at: f64, tol: f64 },

    #[error("basis is singular or ill-conditioned (condition estimate {condition:e})")]
    SingularBasis { condition: f64 },

    #[error("arity mismatch: expected {expected} periods, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("no consistent hypothesis: {0}")]
    NoConsistentHypothesis(String),

    #[error("enumeration guard exceeded: {n} points (limit {limit})")]
    EnumerationGuard { n: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: schema violation: {msg}")]
    Schema { line: usize, msg: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
