use thiserror::Error;

/// Errors raised by the library. Checks that merely fail (axioms violated,
/// data not cohomologous) are reported through return values, not here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars or tables from different fields were combined")]
    FieldMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound 2^15")]
    ModulusTooLarge(u64),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("projection is not a Poisson algebra morphism: {0}")]
    NotAMorphism(String),
    #[error("section does not satisfy pi * s = identity")]
    NotASection,
    #[error("equivalence cannot be decided: {0}")]
    Undecidable(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("invalid co-flag datum{}: {reason}", stage.map(|s| format!(" at stage {s}")).unwrap_or_default())]
    InvalidCoflag { stage: Option<usize>, reason: String },
    #[error("non-abelian co-flag datum requires u != 0")]
    ZeroU,
    #[error("datum is not a crossed system: {0}")]
    NotValid(String),
    #[error("expected a one-dimensional V, got dimension {0}")]
    DimVNotOne(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("matrix datum violates the required identities: {0}")]
    InvalidCMatrix(String),
    #[error("algebra is not a Poisson algebra")]
    NotPoisson,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: index {index} out of range 1..={bound}")]
    IndexOutOfRange { line: usize, index: usize, bound: usize },
    #[error("line {line}: bad field syntax {text:?}")]
    FieldSyntax { line: usize, text: String },
}

pub type Result<T> = std::result::Result<T, Error>;
