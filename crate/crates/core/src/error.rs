use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a root of unity")]
    NotARootOfUnity,
    #[error("element is not in the root-of-unity group of order {0}")]
    NotInRootGroup(u64),
    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u64, to: u64 },
    #[error("conductor {0} exceeds the embedding cap")]
    ConductorTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("no regular vector found: {0}")]
    NotRegular(String),
    #[error("fiber is not stable under the cyclic action")]
    FiberNotCStable,
    #[error("space of size {size} exceeds the enumeration cap {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("module action is not a homomorphism: {0}")]
    ActionMismatch(String),
    #[error("character has {got} values but the group has {expected} classes")]
    CharacterLengthMismatch { expected: usize, got: usize },
    #[error("series numerator has not stabilized within degree {0}")]
    NoStabilization(usize),
    #[error("division by the zero series")]
    DivisionByZeroSeries,
    #[error("rational function has a pole at the evaluation point")]
    PoleAtPoint,
    #[error("subspace is not closed under the ring action: {0}")]
    NotAnRModule(String),
    #[error("truncation degree {0} is too small")]
    TruncationTooSmall(usize),
    #[error("group action does not stabilize the normalization: {0}")]
    NotThetaStable(String),
    #[error("class of order {order} is not p-regular in characteristic {characteristic}")]
    NotPRegular { order: u64, characteristic: u64 },
    #[error("inequality testing needs a product of cyclic groups of invertible order")]
    UnsupportedGroupForInequality,
    #[error("hypothesis failed: {0}")]
    HypothesisFailure(String),
    #[error("X(t) is not a polynomial")]
    NonPolynomialX,
}

pub type Result<T> = std::result::Result<T, Error>;
