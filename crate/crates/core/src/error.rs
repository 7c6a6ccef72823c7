use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero matrix has no primitive representative")]
    ZeroMatrix,
    #[error("matrix is not in PGL2+(Q): determinant must be positive")]
    NotPositiveDeterminant,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{e} is not an exact divisor of {n}")]
    NotExactDivisor { e: u64, n: u64 },
    #[error("empty lattice set")]
    EmptySet,
    #[error("unsupported descriptor: {0}")]
    Unsupported(String),
    #[error("character construction defined only for N=9, N=8")]
    CharacterCase,
    #[error("quotient not finite within bound {0}")]
    QuotientBound(usize),
    #[error("congruence level not found below bound {0}")]
    LevelBound(u64),
    #[error("no N <= {0} with G_(1,N) inside the group inside the normalizer")]
    NBound(u64),
    #[error("graph constraints admit {0} solutions, expected exactly one")]
    GraphSolutions(usize),
    #[error("group {0} is not one of the nine vertex groups")]
    NotAVertex(String),
    #[error("no catalog descriptor matches the subgroup at N={0}")]
    Unnamed(u64),
    #[error("catalog descriptors {0} and {1} denote the same subgroup")]
    CatalogTie(String, String),
    #[error("fractional exponent does not cancel: sum of alpha*A = {0}")]
    FractionalExponent(i64),
    #[error("tau is not in the upper half-plane")]
    NotUpperHalfPlane,
    #[error("value too large: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
