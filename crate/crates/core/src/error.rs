use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch ({left_rows}x{left_cols} vs {right_rows}x{right_cols})")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("{op}: matrix must be square, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("closure of {element} is undefined in {semiring}")]
    ClosureUndefined { semiring: String, element: String },

    /// A closed path with weight above unity makes the power series diverge.
    /// `nodes` lists the (0-based) nodes lying on such paths.
    #[error("closure diverges: closed path through nodes {nodes:?} has weight above unity")]
    ClosureDiverges { nodes: Vec<usize> },

    #[error("no {n}-th root of {element} in {semiring}")]
    RootUndefined {
        semiring: String,
        element: String,
        n: usize,
    },

    #[error("{semiring} lacks capability `{capability}`")]
    CapabilityMissing {
        semiring: String,
        capability: &'static str,
    },

    #[error("matrix has no cycles, eigenvalue is undefined")]
    NoCycle,

    #[error("invalid interval bounds: {lo} is not below {hi}")]
    InvalidBounds { lo: String, hi: String },

    #[error("strong interval [{lo}, {hi}] has a zero lower bound")]
    StrongViolation { lo: String, hi: String },

    #[error("invalid element for {semiring}: {reason}")]
    InvalidElement { semiring: String, reason: String },

    #[error("node sequence is not a path: no arc {from} -> {to}")]
    NotAPath { from: usize, to: usize },

    #[error("node index {index} out of range for {nodes} nodes")]
    NodeOutOfRange { index: usize, nodes: usize },

    #[error("iteration did not stabilize within {max_k} steps")]
    MaxIterationsExceeded { max_k: usize },

    #[error("operation requires the {expected} semiring, got {actual}")]
    ProfileMismatch { expected: String, actual: String },

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Errors caused by bad input rather than by the mathematics of a valid instance.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::NotSquare { .. }
                | Error::InvalidBounds { .. }
                | Error::StrongViolation { .. }
                | Error::InvalidElement { .. }
                | Error::NotAPath { .. }
                | Error::NodeOutOfRange { .. }
                | Error::ProfileMismatch { .. }
                | Error::Malformed(_)
        )
    }
}
