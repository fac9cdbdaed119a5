use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    /// Synthesis was asked to decompose something that is not unitary.
    #[error("matrix is not unitary: max |U·U† - I| = {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("matrix is not a contraction: spectral norm {norm} > 1")]
    NotContraction { norm: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPsd { eigenvalue: f64 },

    #[error("matrix is not Hermitian: max |M - M†| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("mode {mode} out of range for width {width}")]
    ModeOutOfRange { mode: usize, width: usize },

    #[error("beamsplitter modes must be distinct, got ({0}, {0})")]
    RepeatedMode(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for malformed input or I/O failures, false for well-formed input
    /// that is rejected on mathematical grounds.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
