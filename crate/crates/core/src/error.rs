use thiserror::Error;

/// A positioned diagnostic from the quiver parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules or ideals belong to different algebras")]
    AlgebraMismatch,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("subspace is not a two-sided ideal")]
    NotTwoSided,
    #[error("operation requires a prime field")]
    NotPrimeField,
    #[error("radical not supported: {0}")]
    UnsupportedRadical(String),
    #[error("module is not certified projective")]
    NotProjective,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("trace of the projective does not equal the ideal")]
    TraceMismatch,
    #[error("relations are not admissible: {0}")]
    NonAdmissible(String),
    #[error("quiver syntax: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    QuiverSyntax(Vec<Diagnostic>),
    #[error("presentation violates the silting setting: {0}")]
    SettingViolation(String),
    #[error("randomized search inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
