use thiserror::Error;

/// Errors for every operation in this crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is not monic of the requested degree, or has coefficients outside GF(p): {0}")]
    MalformedModulus(String),
    #[error("supplied modulus is not primitive over GF({p})")]
    NonPrimitiveModulus { p: u64 },
    #[error("{0} is not a prime power")]
    InvalidFieldOrder(u64),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("discrete log of zero is undefined")]
    LogOfZero,
    #[error("the zero vector does not define a projective point")]
    ZeroVector,
    #[error("two equal points do not span a line")]
    EqualPoints,
    #[error("field or space of order {order} exceeds the size guard {guard}")]
    SizeGuardExceeded { order: u64, guard: u64 },
    #[error("rank {t} does not divide the ambient dimension {n}")]
    NonDivisorRank { t: u32, n: u32 },
    #[error("input subspaces are not pairwise disjoint")]
    NotDisjoint,
    #[error("operation is undefined for field order {0}")]
    UnsupportedOrder(u64),
    #[error("{0}")]
    RankMismatch(String),
    #[error("quadratic form is reducible over GF({0})")]
    ReducibleForm(u64),
    #[error("orbit verification failed: {0}")]
    NotAnOvoid(String),
    #[error("line belongs to the spread, which is tangent to every quadric in the partition")]
    SpreadLine,
    #[error("point is not on the quadric")]
    PointNotOnQuadric,
    #[error("starter lines do not match the orbit decomposition: {0}")]
    OrbitMismatch(String),
    #[error("element set is not a spread: {0}")]
    NotASpread(String),
    #[error("malformed alist: {0}")]
    MalformedAlist(String),
    #[error("matrix has no nonzero entry")]
    ZeroMatrix,
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
