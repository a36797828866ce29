use thiserror::Error;

/// Domain errors shared by every module in the crate.
///
/// Each variant corresponds to a precondition of some operation; the CLI maps
/// all of them to exit code 2 with a machine-readable error object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("exterior power index {j} exceeds dimension {d}")]
    ExteriorIndex { j: usize, d: usize },
    #[error("matrix must be nonnegative")]
    NegativeEntry,
    #[error("matrix has a zero row or zero column")]
    ZeroLine,
    #[error("matrix is reducible")]
    Reducible,
    #[error("system is not mixing: {0}")]
    NotMixing(String),
    #[error("transition matrix entries must be 0 or 1")]
    NotZeroOne,
    #[error("alphabet length {alphabet} does not match matrix dimension {dim}")]
    AlphabetMismatch { alphabet: usize, dim: usize },
    #[error("word is not admissible: {0}")]
    Inadmissible(String),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("|det A| = {det} is too small for this computation (need {need})")]
    DeterminantTooSmall { det: String, need: String },
    #[error("dilation is not conformal: A^T A is not a scalar matrix")]
    NotConformal,
    #[error("dilation is not expansive")]
    NotExpansive,
    #[error("B_{j} is not integral; the adjugate identity fails structurally")]
    NonIntegralB { j: usize },
    #[error("conformal enumeration only supports dimension 2 or 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("cutoff {cutoff} must be at least |n| = {n}")]
    CutoffTooSmall { cutoff: i64, n: i64 },
    #[error("dilation degree must satisfy |n| >= 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("nucleus undetermined after {0} growth rounds")]
    UndeterminedNucleus(usize),
    #[error("level must be at least {need}, got {got}")]
    LevelTooSmall { need: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed window: {0}")]
    MalformedWindow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
