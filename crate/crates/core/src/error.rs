use thiserror::Error;

/// Errors raised by the algebra layer and the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("leading term of the zero polynomial is undefined")]
    ZeroLeadingTerm,
    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),
    #[error("duplicate indeterminate `{0}`")]
    DuplicateIndeterminate(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("specialization point lies on the denominator hypersurface")]
    OutsideFlatLocus,
    #[error("degenerate family: the generic fiber is empty (ideal is the unit ideal over the parameter field)")]
    DegenerateFamily,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
