use thiserror::Error;

/// Errors raised by the group, subgroup and coset operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Coxeter matrix: {0}")]
    MalformedMatrix(String),
    #[error("generator index {0} out of range")]
    InvalidGenerator(usize),
    #[error("result leaves the enumerated region of the group")]
    OutOfEnumeratedRegion,
    #[error("coefficient overflow in the geometric representation")]
    CoefficientOverflow,
    #[error("standard parabolic subgroup on {0:?} is infinite")]
    InfiniteParabolic(Vec<usize>),
    #[error("automorphism is not an involution at generator {0}")]
    NotInvolutive(usize),
    #[error("automorphism does not preserve the bond between generators {0} and {1}")]
    BondMismatch(usize, usize),
    #[error("generator {0} is outside the subset L")]
    OutOfL(usize),
    #[error("element is not in the parabolic subgroup W_L")]
    NotInWL,
    #[error("element is not fixed by the automorphism")]
    NotFixed,
    #[error("enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("group is not fully enumerated")]
    Incomplete,
    #[error("elements do not lie in the same coset")]
    NotSameCoset,
    #[error("element is not of minimal length in its coset")]
    NotMinimal,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
