use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different quadratic fields (d={0} vs d={1})")]
    FieldMismatch(u64, u64),
    #[error("matrix is singular (determinant zero)")]
    SingularMatrix,
    #[error("map is orientation-reversing (determinant negative)")]
    OrientationReversing,
    #[error("value exists in R but not in the configured field: {0}")]
    FieldEscape(String),
    #[error("pieces disagree at breakpoint {0}")]
    Discontinuous(String),
    #[error("piece {0} is not strictly increasing on its interval")]
    NotIncreasing(usize),
    #[error("piece {0} has a pole inside its interval")]
    PoleInsideInterval(usize),
    #[error("first or last piece is not affine")]
    EndPieceNotAffine,
    #[error("source and target tuples have different lengths")]
    LengthMismatch,
    #[error("interval is not invariant under the map")]
    IntervalNotInvariant,
    #[error("germ slopes do not match at the required end")]
    SlopeMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("iteration cap exceeded (max N = {0})")]
    IterationCapExceeded(u32),
    #[error("map does not have translation germs at both ends")]
    NotTranslationGerms,
    #[error("interval is not one-bump for the map; refine the decomposition")]
    MixedSign,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("parse error at {0}: {1}")]
    ParseError(String, String),
    #[error("validation of map '{0}' failed: {1}")]
    ValidationError(String, String),
    #[error("io error: {0}")]
    IoError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
