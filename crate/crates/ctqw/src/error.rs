use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order must be at least {min}, got {n}")]
    OrderTooSmall { n: u64, min: u64 },
    #[error("connection set must not contain 0")]
    ZeroInSet,
    #[error("element {element} is outside 1..={max}")]
    OutOfRange { element: u64, max: u64 },
    #[error("set is not symmetric: {element} present but {missing} is not")]
    NotSymmetric { element: u64, missing: u64 },
    #[error("connection set must not be empty")]
    EmptySet,
    #[error("divisor set must not be empty")]
    EmptyDivisorSet,
    #[error("{d} is not a proper divisor of {n}")]
    NotADivisor { d: u64, n: u64 },
    #[error("graph is integral: the connection set is a union of complete orbits")]
    IsIntegral,
    #[error("order {n} is not a power of two")]
    NotPowerOfTwo { n: u64 },
    #[error("prime {p} divides the element {s}")]
    PrimeDividesElement { p: u64, s: u64 },
    #[error("need n = m*p with p an odd prime; got n={n}, m={m}, p={p}")]
    BadFactorization { n: u64, m: u64, p: u64 },
    #[error("vertex {v} is out of range for order {n}")]
    VertexOutOfRange { v: u64, n: u64 },
    #[error("connection sets are not disjoint: both contain {0}")]
    NotDisjoint(u64),
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("order {n} exceeds the dense-oracle limit {max}")]
    OrderTooLargeForOracle { n: u64, max: u64 },
    #[error("bad sweep grid: {0}")]
    BadGrid(String),
    #[error("enumeration is limited to n <= {max}, got {n}")]
    TooLarge { n: u64, max: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
