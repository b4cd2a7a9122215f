use thiserror::Error;

/// Errors raised by the exact-arithmetic and zeta-function layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("affine substitution needs a nonzero slope")]
    ZeroSlope,

    #[error("not T-expandable: denominator factor (1 - L^{exp}) has no T")]
    NotTExpandable { exp: i64 },

    #[error("degenerate denominator factor (1 - L^0 T^0)")]
    DegenerateFactor,

    #[error("divergent specialization: Laurent coefficient of h^{order} is nonzero")]
    DivergentSpecialization { order: i64 },

    #[error("stratum index set is empty")]
    EmptyIndexSet,

    #[error("cone is not simplicial")]
    NonSimplicial,

    #[error("corollary hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("bundle has no entry for twist order {0}")]
    MissingTwist(u64),

    #[error("arithmetic table length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{0}")]
    Json(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
