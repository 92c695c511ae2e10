use thiserror::Error;

use crate::linalg::Field;

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("entries from different fields: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not a prime modulus usable for exact arithmetic")]
    InvalidModulus(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("linear form has no nonzero coefficient")]
    ZeroForm,

    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("expected a linear form, got a polynomial of degree {0}")]
    NotLinear(usize),

    #[error("support of the collection is not generic")]
    NonGenericSupport,

    #[error("collection has rank {rank} but the ring has {nvars} variables; re-embed first")]
    RankDeficient { rank: usize, nvars: usize },

    #[error("degree bound {bound} is below the required degree {required}")]
    DegreeBoundTooSmall { bound: usize, required: usize },

    #[error("ideal is not generated in a single degree (minimal generators in degrees {0:?})")]
    NotEquigenerated(Vec<usize>),

    #[error("generator is not a squarefree monomial")]
    NotSquarefree,

    #[error("Betti table window does not certify the regularity: {0}")]
    UncertifiedTable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}
