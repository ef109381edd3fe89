use thiserror::Error;

use crate::linalg::FieldSpec;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("map is not idempotent")]
    NotIdempotent,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in {0}")]
    DivisionByZero(FieldSpec),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a pre-monad: axiom {0} fails")]
    NotPreMonad(String),
    #[error("not a monad in the weak cell 2-category: axiom {0} fails")]
    NotMonadInEmw(String),
    #[error("multiplication is not linear over the base monad (axiom 2.14)")]
    LeftLinearityFailed,
    #[error("not a module: {0}")]
    NotModule(String),
    #[error("axiom {0} fails")]
    AxiomFailed(String),
    #[error("shared multiplicativity axiom 5.9 fails")]
    SharedAxiomFailed,
    #[error("entwining datum does not satisfy the axioms of kind {0}")]
    EntwiningKindMismatch(String),
    #[error("a map does not descend to the tensor-over-algebra quotient: {0}")]
    WellDefinednessFailed(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scalar literal {literal:?} for field {field}")]
    BadScalar { literal: String, field: FieldSpec },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
