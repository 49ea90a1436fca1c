use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("metric is singular (determinant is zero)")]
    SingularMetric,
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("cannot contract slot {up} ({up_variance}) with slot {down} ({down_variance})")]
    VarianceMismatch {
        up: usize,
        down: usize,
        up_variance: &'static str,
        down_variance: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("section is degenerate: pi1(x, y, y, x) = 0")]
    DegenerateSection,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("model failed validation:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
}
