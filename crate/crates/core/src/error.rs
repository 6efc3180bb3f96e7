use alloc::string::String;

use crate::report::Report;

/// Every failure the library can signal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} has no image modulo {modulus}")]
    NotReducible { value: String, modulus: u64 },
    #[error("{0} is not a supported prime")]
    InvalidPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a pre-Lie algebra")]
    NotPreLie(Report),
    #[error("unit does not act as identity")]
    NotUnit(Report),
    #[error("not a representation")]
    NotRepresentation(Report),
    #[error("not a 2-cocycle")]
    UnverifiedCocycle(Report),
    #[error("operator does not satisfy its defining identity")]
    UnverifiedOperator(Report),
    #[error("not an NS-pre-Lie algebra")]
    UnverifiedNs(Report),
    #[error("not a formal deformation")]
    UnverifiedSeries(Report),
    #[error("not a 1-cocycle")]
    NotCocycle(Report),
    #[error("1-cocycle is not admissible: id + B∘K is singular")]
    NotAdmissible,
    #[error("algebra has no unit")]
    NoUnit,
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("search space of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("characteristic {0} does not allow this operation")]
    Characteristic(u64),
}
