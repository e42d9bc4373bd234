use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator factor vanished identically after substitution.
    #[error("pole at specialization: denominator factor {0} vanishes")]
    PoleAtSpecialization(String),

    #[error("no pole-free specialization found after {0} draws")]
    RetriesExhausted(usize),

    #[error("size limit of {0} terms exceeded")]
    SizeLimitExceeded(usize),

    #[error("scale factor must be nonzero")]
    ZeroScale,

    #[error("symbol {0} is not assigned by the specialization")]
    MissingSymbol(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),

    #[error("the fiber over class {0:?} contains infinitely many lifts")]
    UnboundedFiber(Vec<i64>),

    #[error("Weyl closure exceeds the cap of {0} elements")]
    OrbitCapExceeded(usize),

    #[error("twist weight {weight:?} pairs to {pairing} with lift {lift:?}")]
    NonConvexTwist {
        weight: Vec<i64>,
        lift: Vec<i64>,
        pairing: i64,
    },

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("target is not Fano: {0}")]
    NotFano(String),

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
