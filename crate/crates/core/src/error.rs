use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |H - H*| entry = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("eigenvalue {value:e} is below the PSD clipping threshold")]
    NegativeEigenvalue { value: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("bad dimension {n}: at least 2 required")]
    BadDimension { n: usize },

    #[error("operation requires a 2x2 matrix, got {rows}x{cols}")]
    Dim2Required { rows: usize, cols: usize },

    #[error("the q-numerical range of a 1x1 matrix is empty unless q = 1")]
    Dim1NotSupported,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("q = {0} is outside [0, 1]")]
    QOutOfRange(f64),

    #[error("alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),

    #[error("bound {0} is unbounded at q = 0")]
    ZeroQUnsupported(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("matrix file declares n = {n} but holds {count} entries (expected {expected})")]
    Shape {
        n: usize,
        count: usize,
        expected: usize,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
