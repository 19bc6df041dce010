use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),

    #[error("order relation has a cycle through `{0}`")]
    Cycle(String),

    #[error("point set built over {found} points used with a poset of {expected} points")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("mapping is not an order isomorphism: {0}")]
    NotAnIsomorphism(String),

    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("group elements belong to different groups")]
    DescriptorMismatch,

    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },

    #[error("element {0} is not in the positive cone")]
    NotNonnegative(String),

    #[error("the minimal primes of {0} are undefined for a unit")]
    UnitElement(String),

    #[error("operation is undefined at the root (zero ideal)")]
    RootPoint,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
