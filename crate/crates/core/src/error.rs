use thiserror::Error;

/// Errors raised by the library. Validation failures and numerical failures
/// are kept apart so front ends can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NonSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("negative weight {value} at ({i}, {j})")]
    NegativeWeight { i: usize, j: usize, value: f64 },
    #[error("nonzero diagonal weight {value} at ({i}, {i})")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("non-finite weight at ({i}, {j})")]
    NonFiniteWeight { i: usize, j: usize },
    #[error("all weights are zero")]
    AllZeroWeights,
    #[error("need at least {min} spatial units, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("neighbourhood order q = {q} is outside 1..={max}")]
    QOutOfRange { q: usize, max: usize },
    #[error("half-width a = {a} is outside (0, 1)")]
    AOutOfRange { a: f64 },
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("observations are constant (zero variance)")]
    ConstantObservations,
    #[error("observations contain a non-finite value at index {index}")]
    NonFiniteObservation { index: usize },
    #[error("scale constant must be nonzero")]
    ZeroScale,
    #[error("positive branch divisor (n-1)*lambda_max + 1 = {divisor} is not positive")]
    DegenerateBounds { divisor: f64 },
    #[error("need at least {min} permutation replicates, got {got}")]
    TooFewReplicates { got: usize, min: usize },
    #[error("exhaustive enumeration is capped at n = {max}, got n = {n}")]
    TooLargeForExhaustive { n: usize, max: usize },
    #[error("invalid experiment parameter: {0}")]
    InvalidParameter(String),
    #[error("negative-definite fraction never fell below 0.5 on the grid")]
    NoCrossing,
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

impl Error {
    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
