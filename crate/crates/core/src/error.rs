use thiserror::Error;

/// Errors raised by the algebra, lattice, solver and decoder layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("power series has zero constant term")]
    ZeroConstantTerm,
    #[error("evaluation points are not distinct")]
    DuplicatePoint,
    #[error("value table does not match the point set")]
    ShapeMismatch,
    #[error("characteristic {p} too small, need more than {needed}")]
    CharacteristicTooSmall { p: u64, needed: u64 },
    #[error("zero vector has no leading coordinate")]
    ZeroVector,
    #[error("lattice vectors are linearly dependent")]
    DegenerateBasis,
    #[error("operator has no y-dependence")]
    NoYSupport,
    #[error("operator is not normalized")]
    NotNormalized,
    #[error("target degree {d} is below the operator order {m}")]
    DegreeTooSmall { d: usize, m: usize },
    #[error("order of gamma is {order}, need at least {needed}")]
    OrderTooSmall { order: u64, needed: u64 },
    #[error("pin index {0} is not in the folded spectrum")]
    InvalidPin(i64),
    #[error("equation has no solution")]
    NoSolution,
    #[error("message degree {degree} exceeds the bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("cannot corrupt: {0}")]
    TooManyErrors(String),
    #[error("folding parameter s = {s} is below the required {needed}")]
    FoldingTooSmall { s: usize, needed: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
