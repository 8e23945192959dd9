use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("ambient dimension mismatch: n={0} vs n={1}")]
    AmbientMismatch(usize, usize),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i32, found: i32 },

    #[error("form grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },

    #[error("invalid degree vector: {0}")]
    InvalidDegrees(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("residues do not lie on the hyperplane sum d_i * lambda_i = 0")]
    NotOnHyperplane,

    #[error("the logarithmic form vanishes at this instance (base-locus point)")]
    BaseLocusPoint,

    #[error("form is zero")]
    ZeroForm,

    #[error("form is not projective")]
    NotProjective,

    #[error("form is not integrable")]
    NotIntegrable,

    #[error("could not sample a generic instance after {0} attempts")]
    RetryExhausted(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
