use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ValuationOfZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime does not fit in 64 bits")]
    PrimeTooLarge,

    #[error("logarithm of zero is undefined")]
    LogOfZero,

    #[error("gcd of an empty or all-zero list is undefined")]
    GcdAllZero,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("expression is not homogeneous: found degrees {0} and {1}")]
    Inhomogeneous(u32, u32),

    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("vanishing order of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("projective point cannot have all coordinates zero")]
    AllZeroPoint,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("indeterminate point: all defining forms vanish")]
    IndeterminatePoint,

    #[error("point lies on the divisor")]
    PointOnDivisor,

    #[error("point lies on the subscheme")]
    PointOnSubscheme,

    #[error("arithmetic distance from a point to itself is infinite")]
    DistanceToSelf,

    #[error("image of the point does not lie on the subscheme")]
    ImageNotOnSubscheme,

    #[error("quotient dimension did not stabilize by level {0}: fiber may not be isolated")]
    NotStabilized(u32),

    #[error("point is not periodic within the iteration budget of {0}")]
    NotPeriodic(u32),

    #[error("composite degree {0} exceeds the configured budget {1}")]
    DegreeBudget(u64, u64),

    #[error("coordinate bit size exceeded budget after step {last_safe_n}")]
    BitBudget { last_safe_n: u32 },

    #[error("map is only defined on the projective line")]
    NotProjectiveLine,

    #[error("{0}")]
    Invalid(String),
}
