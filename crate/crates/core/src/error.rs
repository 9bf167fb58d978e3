use thiserror::Error;

/// Position-annotated failure from the ket parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("non-finite entry at flat index {0}")]
    NonFinite(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Modes are reported 1-based.
    #[error("dimension mismatch at mode {mode}: expected {expected}, found {found}")]
    ModeMismatch { mode: usize, expected: usize, found: usize },

    #[error("mode {mode} out of range for order {order}")]
    ModeOutOfRange { mode: usize, order: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("mode {mode} has length {len}; only qubit modes (length 2) are supported")]
    NotQubit { mode: usize, len: usize },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("zero vector")]
    ZeroVector,

    #[error("operation requires an even number of qubits, got {0}")]
    OddQubitCount(usize),

    #[error("hypermatrix is not cuboid (dims {0:?})")]
    NotCuboid(Vec<usize>),

    #[error("reduced hyperdeterminant requires even order, got {0}")]
    OddOrder(usize),

    #[error("enumeration of {terms} terms exceeds cap of {cap}")]
    SizeCap { terms: f64, cap: f64 },

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("expected {expected} local unitaries, got {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("{what} = {value} out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
